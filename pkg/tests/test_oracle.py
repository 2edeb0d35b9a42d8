import numpy as np
import pytest

from fluxqm import (
    FermionConfig,
    ModelParams,
    compare_spectra,
    ground_state_moments,
    oracle_spectrum,
)


def test_decoupled_levels_are_exact():
    # phi = 0: the mode and the fermions separate, levels are g_eff W + hw n
    p = ModelParams(g=1.0, g_eff=0.7, phi=0.0, n_particles=3, hbar_omega=1.3)
    cfg = FermionConfig([-1, 0, 2])
    report = oracle_spectrum(p, cfg, cutoff=80, n_levels=5, check_convergence=False)
    for n, level in enumerate(report.levels):
        assert level == pytest.approx(p.g_eff * cfg.w_kinetic + p.hbar_omega * n, rel=1e-12)


def test_levels_ascending_and_convergence_flag():
    p = ModelParams(g=0.8, g_eff=1.0, phi=1.1, n_particles=2)
    report = oracle_spectrum(p, FermionConfig([0, 1]), cutoff=120, n_levels=6)
    levels = np.array(report.levels)
    assert np.all(np.diff(levels) > 0)
    assert report.converged
    assert report.max_rel_change < 1e-9
    assert report.cutoff_used == 240


def test_ground_level_monotone_nonincreasing_in_cutoff():
    # truncation is a projection, so enlarging the space can only lower E0
    p = ModelParams(g=1.5, g_eff=1.0, phi=1.5, n_particles=4, hbar_omega=0.8)
    cfg = FermionConfig([0, 1, 2, 3])
    e_prev = np.inf
    for cutoff in (60, 120, 240):
        e0 = oracle_spectrum(p, cfg, cutoff=cutoff, n_levels=1, check_convergence=False).levels[0]
        assert e0 <= e_prev + 1e-10
        e_prev = e0


def test_oracle_rejects_small_cutoff():
    p = ModelParams(g=1.0, g_eff=1.0, phi=0.5, n_particles=1)
    with pytest.raises(ValueError):
        oracle_spectrum(p, FermionConfig([0]), cutoff=10)


def test_zeeman_sector_against_closed_form():
    # phi = 0 with spins: displaced oscillator, levels g_eff W - (eta Sigma)^2/hw + hw n
    p = ModelParams(g=1.0, g_eff=0.9, phi=0.0, n_particles=3, hbar_omega=1.0, eta=0.4)
    cfg = FermionConfig([-1, 0, 1], spins=[1, 1, 1])
    report = oracle_spectrum(p, cfg, cutoff=150, n_levels=4, check_convergence=False)
    for n, level in enumerate(report.levels):
        expected = (
            p.g_eff * cfg.w_kinetic
            - (p.eta * cfg.sigma_total) ** 2 / p.hbar_omega
            + p.hbar_omega * n
        )
        assert level == pytest.approx(expected, rel=1e-10, abs=1e-10)


def test_ground_state_moments_photon_number_decoupled():
    p = ModelParams(g=1.0, g_eff=1.0, phi=0.0, n_particles=1)
    moments = ground_state_moments(p, FermionConfig([0]), cutoff=60)
    assert moments.mean_x == pytest.approx(0.0, abs=1e-12)
    assert moments.var_x == pytest.approx(0.5, rel=1e-12)
    assert moments.photon_number == pytest.approx(0.0, abs=1e-12)


def test_compare_identical_lists_pass():
    result = compare_spectra([1.0, 2.0, 3.0], [1.0, 2.0, 3.0], tol=1e-12)
    assert result.passed
    assert result.max_rel_error == 0.0


def test_compare_offset_mode():
    analytic = [1.0, 2.0, 3.0]
    shifted = [1.5, 2.5, 3.5]
    assert not compare_spectra(analytic, shifted, tol=1e-9).passed
    result = compare_spectra(analytic, shifted, tol=1e-12, fit_offset=True)
    assert result.passed
    assert result.offset == pytest.approx(-0.5, rel=1e-14)


def test_compare_fault_injection_localizes_error():
    clean = [0.5, 1.5, 2.5, 3.5, 4.5]
    dirty = list(clean)
    dirty[3] += 1e-3
    result = compare_spectra(dirty, clean, tol=1e-6)
    assert not result.passed
    assert result.argmax_level == 3
    assert result.max_rel_error == pytest.approx(1e-3 / 3.5, rel=1e-6)


def test_compare_length_mismatch_is_usage_error():
    with pytest.raises(ValueError):
        compare_spectra([1.0, 2.0], [1.0, 2.0, 3.0], tol=1e-6)
