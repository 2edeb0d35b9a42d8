import math

import numpy as np
import pytest
from scipy.constants import hbar

from fluxqm import FermionConfig, LCParams, ModelParams, derive_lc, derive_ring


def test_unit_lc_values():
    lc = derive_lc(1.0, 1.0)
    assert lc.omega == pytest.approx(1.0, rel=1e-15)
    assert lc.impedance == pytest.approx(1.0, rel=1e-15)


def test_zero_point_product_is_half_hbar():
    # identity enforced by the defining formulas, for any (L, C)
    for L, C in [(1.0, 1.0), (hbar / 2, 2 / hbar), (1e-9, 1e-12), (3.3e-6, 4.7e-15)]:
        lc = derive_lc(L, C)
        assert lc.phi_zpf * lc.q_zpf == pytest.approx(hbar / 2, rel=1e-12)


def test_nanohenry_picofarad_frequency():
    # 1/sqrt(1e-9 * 1e-12) = 10^10.5, cross-checked by direct high-precision arithmetic
    lc = derive_lc(1e-9, 1e-12)
    assert lc.omega == pytest.approx(10**10.5, rel=1e-12)
    assert lc.omega == pytest.approx(3.1622776601683795e10, rel=1e-12)


@pytest.mark.parametrize("L,C", [(0.0, 1.0), (-1.0, 1.0), (1.0, 0.0), (1.0, -2.0)])
def test_lc_rejects_nonpositive(L, C):
    with pytest.raises(ValueError):
        derive_lc(L, C)


def test_lcparams_rejects_inconsistent_zpf():
    with pytest.raises(ValueError):
        LCParams(1.0, 1.0, omega=1.0, impedance=1.0, phi_zpf=1.0, q_zpf=1.0)


def test_ring_mass_scaling():
    e0 = 1.602e-19
    g1, geff1 = derive_ring(5e-7, 1.0, e0)
    assert geff1 == g1
    g2, geff2 = derive_ring(5e-7, 2.0, e0)
    assert g2 == g1
    assert geff2 == pytest.approx(g1 / 2, rel=1e-15)


def test_ring_radius_scaling():
    g1, _ = derive_ring(1e-7, 1.0, 1e-19)
    g2, _ = derive_ring(2e-7, 1.0, 1e-19)
    assert g2 == pytest.approx(g1 / 4, rel=1e-12)


def test_ring_rejects_bad_inputs():
    with pytest.raises(ValueError):
        derive_ring(-1e-7, 1.0, 1e-19)
    with pytest.raises(ValueError):
        derive_ring(1e-7, 0.0, 1e-19)


def test_geff_times_ratio_recovers_g():
    for ratio in (0.25, 0.5, 1.0, 3.7, 12.0):
        g, geff = derive_ring(2e-7, ratio, 1e-20)
        assert geff * ratio == pytest.approx(g, rel=1e-12)


def test_config_rejects_duplicate_orbitals():
    with pytest.raises(ValueError):
        FermionConfig([0, 1, 1])


def test_config_spinful_allows_shared_orbital():
    cfg = FermionConfig([0, 0], spins=[1, -1])
    assert cfg.m_total == 0
    assert cfg.sigma_total == 0
    with pytest.raises(ValueError):
        FermionConfig([0, 0], spins=[1, 1])


def test_config_rejects_bad_spins():
    with pytest.raises(ValueError):
        FermionConfig([0, 1], spins=[1, 0])
    with pytest.raises(ValueError):
        FermionConfig([0, 1], spins=[1])


def test_config_sorted_and_spin_alignment():
    cfg = FermionConfig([2, -1, 0], spins=[1, -1, 1])
    assert cfg.orbitals == (-1, 0, 2)
    assert cfg.spins == (-1, 1, 1)


def test_config_cached_sums_match_recomputation():
    rng = np.random.default_rng(7)
    for _ in range(50):
        n = int(rng.integers(1, 8))
        orbs = rng.choice(np.arange(-9, 10), size=n, replace=False)
        cfg = FermionConfig(orbs)
        assert cfg.m_total == sum(cfg.orbitals)
        assert cfg.w_kinetic == sum(m * m for m in cfg.orbitals)
        assert cfg.n_particles == n


def test_config_requires_particles():
    with pytest.raises(ValueError):
        FermionConfig([])


@pytest.mark.parametrize(
    "kwargs",
    [
        {"g": 0.0, "g_eff": 1.0, "phi": 0.0, "n_particles": 1},
        {"g": 1.0, "g_eff": -1.0, "phi": 0.0, "n_particles": 1},
        {"g": 1.0, "g_eff": 1.0, "phi": -0.1, "n_particles": 1},
        {"g": 1.0, "g_eff": 1.0, "phi": 0.0, "n_particles": 0},
        {"g": 1.0, "g_eff": 1.0, "phi": 0.0, "n_particles": 1, "hbar_omega": 0.0},
    ],
)
def test_model_params_validation(kwargs):
    with pytest.raises(ValueError):
        ModelParams(**kwargs)
