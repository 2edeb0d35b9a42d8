import math

import numpy as np
import pytest

from fluxqm import (
    GridDomainError,
    RfSquidParams,
    displacement_matrix_element,
    displacement_operator,
    rf_squid_map,
    rf_squid_spectrum,
    sector_constants,
    sector_spectrum_fock,
    sector_spectrum_xrep,
)


def series_displacement_element(m, n, lam, sign=1, terms=30, margin=60):
    """Oracle: exp(sign i lam (a+a^dag)) by explicit power series, 30 terms."""
    dim = max(m, n) + margin
    x = np.zeros((dim + 1, dim + 1))
    k = np.arange(dim)
    x[k, k + 1] = np.sqrt(k + 1.0)
    x[k + 1, k] = x[k, k + 1]
    arg = sign * 1j * lam * x
    acc = np.eye(dim + 1, dtype=complex)
    term = np.eye(dim + 1, dtype=complex)
    for order in range(1, terms + 1):
        term = term @ arg / order
        acc = acc + term
    return complex(acc[m, n])


# --- sector constants ---------------------------------------------------------


def test_sector_single_particle():
    sector = sector_constants([0], 8)
    assert sector.c_sum == pytest.approx(1.0, rel=1e-15)
    assert sector.s_sum == pytest.approx(0.0, abs=1e-15)
    assert sector.delta == 0.0


def test_sector_full_band_sums_to_zero():
    # all roots of unity: both trigonometric moments vanish
    sector = sector_constants(range(6), 6)
    assert abs(sector.c_sum) <= 1e-12
    assert abs(sector.s_sum) <= 1e-12


def test_sector_two_particle_example():
    sector = sector_constants([0, 1], 6)
    assert sector.c_sum == pytest.approx(1.5, rel=1e-14)
    assert sector.s_sum == pytest.approx(math.sin(math.pi / 3), rel=1e-14)
    assert sector.e_j_amp == pytest.approx(math.hypot(1.5, math.sin(math.pi / 3)), rel=1e-14)


def test_sector_rejects_duplicates_and_range():
    with pytest.raises(ValueError):
        sector_constants([1, 1], 6)
    with pytest.raises(ValueError):
        sector_constants([6], 6)


def test_compression_identity_pointwise():
    # C cos(t) - S sin(t) == sqrt(C^2+S^2) cos(t + delta) for every angle
    rng = np.random.default_rng(2)
    x = np.linspace(-9.0, 9.0, 301)
    for _ in range(20):
        c, s = rng.uniform(-3, 3, size=2)
        amp = math.hypot(c, s)
        delta = math.atan2(s, c)
        lhs = c * np.cos(x) - s * np.sin(x)
        rhs = amp * np.cos(x + delta)
        assert np.max(np.abs(lhs - rhs)) <= 1e-14 * max(1.0, amp)


# --- displacement matrix elements ----------------------------------------------


def test_element_identity_at_zero():
    assert displacement_matrix_element(3, 3, 0.0) == 1.0
    assert displacement_matrix_element(3, 1, 0.0) == 0.0


def test_element_vacuum_overlap():
    lam = 0.7
    assert displacement_matrix_element(0, 0, lam) == pytest.approx(math.exp(-lam**2 / 2), rel=1e-14)


def test_element_two_zero_value():
    # closed form at (2, 0): -(lam^2/sqrt(2)) e^(-lam^2/2)
    lam = 0.5
    expected = -(lam**2 / math.sqrt(2.0)) * math.exp(-lam**2 / 2)
    value = displacement_matrix_element(2, 0, lam, 1)
    assert value.real == pytest.approx(expected, rel=1e-13)
    assert value.real == pytest.approx(-0.15600488604842286, rel=1e-12)
    assert value.imag == 0.0


def test_elements_match_power_series_oracle():
    for lam in (0.3, 0.9):
        for sign in (1, -1):
            for m, n in ((0, 0), (2, 0), (5, 3), (7, 7), (1, 6)):
                got = displacement_matrix_element(m, n, lam, sign)
                want = series_displacement_element(m, n, lam, sign)
                assert got == pytest.approx(want, abs=1e-12)


def test_element_symmetry_and_conjugation():
    lam = 0.8
    a = displacement_matrix_element(6, 2, lam, 1)
    b = displacement_matrix_element(2, 6, lam, 1)
    assert a == b  # the operator matrix is symmetric (not Hermitian-conjugated)
    assert displacement_matrix_element(6, 2, lam, -1) == pytest.approx(a.conjugate(), abs=1e-15)


def test_operator_column_norms_unit():
    # truncation rule: columns up to n are unitary once cutoff >= n + 20 lam^2 + 40
    for lam in (0.5, 1.2):
        n_check = 20
        cutoff = n_check + math.ceil(20 * lam**2 + 40)
        op = displacement_operator(lam, cutoff)
        norms = np.linalg.norm(op, axis=0)
        assert np.max(np.abs(norms[: n_check + 1] - 1.0)) <= 1e-8


def test_operator_large_index_stability():
    # deep in the matrix the elements stay finite and tiny, no overflow artifacts
    op = displacement_operator(0.9, 600)
    assert np.all(np.isfinite(op.real)) and np.all(np.isfinite(op.imag))
    assert abs(op[600, 0]) < 1e-200


# --- sector spectra -------------------------------------------------------------


def test_fock_spectrum_bare_oscillator():
    sector = sector_constants([0, 3], 12)
    levels = sector_spectrum_fock(sector, t=0.0, eta=0.9, hbar_omega=1.3, n_levels=5)
    assert np.allclose(levels, 1.3 * np.arange(5), atol=1e-10)


def test_fock_spectrum_zero_eta_rigid_shift():
    sector = sector_constants([0, 1], 6)
    levels = sector_spectrum_fock(sector, t=0.7, eta=0.0, hbar_omega=1.0, n_levels=4)
    assert np.allclose(levels, np.arange(4) - 2 * 0.7 * sector.c_sum, atol=1e-12)


def test_dual_solver_agreement_single_case():
    sector = sector_constants([0, 1], 6)
    t, eta, hw = 1.0, 1.0, 1.0
    fock = sector_spectrum_fock(sector, t, eta, hw, n_levels=5)
    xrep = sector_spectrum_xrep(sector, t, eta, hw, n_levels=5)
    rel = np.abs((xrep - hw / 2) - fock) / np.maximum(hw, np.abs(fock))
    assert np.max(rel) <= 1e-6


def test_xrep_bare_oscillator_carries_zero_point():
    sector = sector_constants([0], 4)
    levels = sector_spectrum_xrep(sector, t=0.0, eta=1.0, hbar_omega=1.0, n_levels=4)
    assert np.allclose(levels, np.arange(4) + 0.5, atol=1e-5)


def test_xrep_parity_alternates_for_symmetric_potential():
    # S = 0 keeps the potential even; eigenfunctions alternate even/odd
    sector = sector_constants([0], 4)  # C = 1, S = 0
    solution = sector_spectrum_xrep(sector, t=0.8, eta=1.1, hbar_omega=1.0,
                                    n_levels=4, return_solution=True)
    for k in range(4):
        psi = solution.states[:, k]
        parity = (-1) ** k
        assert np.max(np.abs(psi - parity * psi[::-1])) <= 1e-6


def test_xrep_grid_too_small_raises():
    sector = sector_constants([0], 4)
    with pytest.raises(GridDomainError):
        sector_spectrum_xrep(sector, t=0.0, eta=1.0, hbar_omega=1.0,
                             x_min=-2.0, x_max=2.0, n_levels=5)


def test_xrep_rejects_coarse_grid():
    sector = sector_constants([0], 4)
    with pytest.raises(ValueError):
        sector_spectrum_xrep(sector, t=0.0, eta=1.0, hbar_omega=1.0, n_points=100)


# --- junction-circuit map --------------------------------------------------------


def test_squid_map_values():
    sector = sector_constants([0], 2)  # C = 1, S = 0
    squid = rf_squid_map(sector, t=1.0, eta=1.0, hbar_omega=1.0)
    assert squid.e_j == pytest.approx(2.0, rel=1e-14)
    assert squid.e_l == pytest.approx(1.0, rel=1e-14)
    assert squid.e_c == pytest.approx(0.125, rel=1e-14)
    assert squid.beta_ratio == pytest.approx(2.0, rel=1e-14)
    assert squid.phi_ext == 0.0


def test_squid_charging_inductive_product_fixed():
    rng = np.random.default_rng(4)
    sector = sector_constants([0, 2], 7)
    for _ in range(20):
        t = float(rng.uniform(0.1, 3.0))
        eta = float(rng.uniform(0.1, 2.5))
        hw = float(rng.uniform(0.3, 2.0))
        squid = rf_squid_map(sector, t, eta, hw)
        assert squid.e_c * squid.e_l == pytest.approx(hw**2 / 8, rel=1e-12)


def test_squid_map_rejects_zero_eta():
    with pytest.raises(ValueError):
        rf_squid_map(sector_constants([0], 2), t=1.0, eta=0.0, hbar_omega=1.0)


def test_squid_params_validation():
    with pytest.raises(ValueError):
        RfSquidParams(e_j=1.0, phi_ext=0.0, e_l=1.0, e_c=1.0, beta_ratio=1.0, hbar_omega=1.0)


def test_squid_spectrum_matches_fock_up_to_constant():
    sector = sector_constants([0, 1], 6)
    t, eta, hw = 1.1, 0.9, 1.0
    fock = sector_spectrum_fock(sector, t, eta, hw, n_levels=5)
    squid = rf_squid_spectrum(rf_squid_map(sector, t, eta, hw), n_levels=5)
    shifted = squid - hw / 2  # quadrature-form zero point
    assert np.max(np.abs(shifted - fock)) <= 1e-6


def test_squid_sign_flip_reflection():
    # S -> -S sends phi_ext -> -phi_ext; the spectrum is reflection invariant
    plus = sector_constants([1, 2], 6)
    minus = sector_constants([4, 5], 6)  # conjugate momenta: same C, opposite S
    assert minus.c_sum == pytest.approx(plus.c_sum, rel=1e-12)
    assert minus.s_sum == pytest.approx(-plus.s_sum, rel=1e-12)
    t, eta, hw = 0.9, 1.2, 1.0
    up = sector_spectrum_fock(plus, t, eta, hw, n_levels=4)
    down = sector_spectrum_fock(minus, t, eta, hw, n_levels=4)
    assert np.max(np.abs(up - down)) <= 1e-9


def test_double_well_splitting_shrinks_with_beta():
    # phi_ext = pi sector: C = -1.  beta = 2 t eta^2 / hw; past beta ~ 1 the two
    # lowest levels become a tunnel doublet whose splitting falls with beta
    sector = sector_constants([1], 2)
    assert sector.delta == pytest.approx(math.pi, rel=1e-12)
    hw, eta = 1.0, 1.0
    splittings = []
    for beta in (1.0, 2.0, 4.0):
        t = beta * hw / (2 * eta**2)
        levels = sector_spectrum_fock(sector, t, eta, hw, n_levels=2)
        splittings.append(float(levels[1] - levels[0]))
    assert splittings[0] > splittings[1] > splittings[2]
    assert splittings[-1] < 0.5 * hw
