"""Detection of the balanced-polarized first-order transition.

The sector energies g_eff W - chi M^2 set up a competition: kinetic weight W
favors symmetric filling around zero angular momentum, the flux-induced
attraction favors a macroscopically boosted Fermi sea.  Because a rigid boost
of a balanced sea by s units costs exactly g_eff N s^2 while gaining
chi (N s)^2, all boosts become favorable at once when chi crosses g_eff / N,
producing a first-order jump whose polarization is limited only by the
orbital cutoff.  This module provides the closed-form critical couplings and
an exhaustive ground-state search over a bounded orbital window that serves
as the independent check of those formulas.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .core import FermionConfig, ModelParams
from .errors import NoTransitionError
from .linearmode import induced_coupling, mode_displacement, sector_energy

__all__ = [
    "GroundState",
    "balanced_config",
    "boosted_config",
    "critical_chi",
    "critical_flux",
    "ground_state_search",
]


@dataclass(frozen=True)
class GroundState:
    """Result of an exhaustive sector minimization.

    ``displacement_a`` is the coherent cavity amplitude <a> of the winning
    sector and ``photon_number`` its displaced-vacuum value |<a>|^2.
    ``boundary_contact`` warns that the optimum touches the orbital cutoff,
    which is expected in the polarized phase (the polarization is
    cutoff-limited) but means the reported M is not converged in m_max.
    """

    config: FermionConfig
    energy: float
    order_m: int
    displacement_a: float
    photon_number: float
    phase_label: str
    boundary_contact: bool


def balanced_config(n: int) -> FermionConfig:
    """Symmetric minimal-kinetic-energy filling {-K..K} for odd N = 2K + 1.

    Its kinetic weight is K(K+1)(2K+1)/3.  Even N has no symmetric filling of
    distinct orbitals with M = 0 at minimal W and is rejected; use
    ground_state_search for even particle numbers.
    """
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    if n % 2 == 0:
        raise ValueError(f"balanced_config requires odd n, got {n}")
    k = (n - 1) // 2
    return FermionConfig(range(-k, k + 1))


def boosted_config(cfg: FermionConfig, shift: int) -> FermionConfig:
    """Rigid boost m_i -> m_i + shift of every particle (spins preserved).

    Shifts total momentum by N*shift; starting from a balanced sea the
    kinetic weight grows by exactly N*shift^2.
    """
    return FermionConfig((m + shift for m in cfg.orbitals), cfg.spins)


def critical_chi(w_pol: int, w_bal: int, m_pol: int) -> float:
    """Coupling at which a candidate polarized sector crosses the balanced one.

    chi_c = g_eff (W_pol - W_bal) / M_pol^2, quoted here per unit g_eff.
    """
    if m_pol == 0:
        raise ValueError("m_pol must be nonzero: an unpolarized candidate never crosses")
    return (w_pol - w_bal) / m_pol**2


def critical_flux(p: ModelParams) -> float:
    """Flux amplitude where the induced attraction reaches g_eff / N.

    phi_c = sqrt(g_eff hbar_omega / (4 g N (g - g_eff))).  Since chi saturates
    at g/N, the crossing exists only for g > g_eff (effective mass heavier
    than bare).
    """
    if p.g <= p.g_eff:
        raise NoTransitionError(
            f"no orbital transition: requires g > g_eff, got g={p.g}, g_eff={p.g_eff} "
            "(the induced coupling saturates below the kinetic stiffness)"
        )
    return math.sqrt(p.g_eff * p.hbar_omega / (4.0 * p.g * p.n_particles * (p.g - p.g_eff)))


@lru_cache(maxsize=16)
def _sector_table(n_particles: int, m_max: int):
    """All distinct-orbital configurations with |m_i| <= m_max, pre-sorted.

    Sorted by (|M|, orbital tuple) so that among exactly degenerate energies
    argmin picks the smallest |M| first and the lexicographically smallest
    orbital list second, making searches reproducible bit for bit.
    """
    entries = []
    for combo in itertools.combinations(range(-m_max, m_max + 1), n_particles):
        m = sum(combo)
        w = sum(v * v for v in combo)
        entries.append((abs(m), combo, m, w))
    entries.sort(key=lambda e: (e[0], e[1]))
    configs = tuple(e[1] for e in entries)
    m_arr = np.array([e[2] for e in entries], dtype=np.int64)
    w_arr = np.array([e[3] for e in entries], dtype=np.int64)
    # kinetic-optimal reference: what "balanced" means for this (N, m_max)
    w_ref = int(w_arr.min())
    m_ref = int(np.abs(m_arr[w_arr == w_ref]).min())
    return configs, m_arr, w_arr, w_ref, m_ref


def ground_state_search(p: ModelParams, m_max: int) -> GroundState:
    """Exhaustive minimization of g_eff W - chi M^2 over |m_i| <= m_max.

    Enumerates every distinct-orbital configuration in the window (no
    heuristics), so the result is exact for the truncated problem.  Ties are
    broken toward smaller |M|, then the lexicographically smallest orbital
    list; the two time-reversed branches of a polarized minimum are exactly
    degenerate, so the tie-break selects one deterministically.  The phase
    label is "balanced" when the winner has the kinetic-optimal (W, |M|) of
    the window and "polarized" otherwise.
    """
    if 2 * m_max + 1 < p.n_particles:
        raise ValueError(
            f"orbital window too small: need 2*m_max+1 >= N, got m_max={m_max}, N={p.n_particles}"
        )
    configs, m_arr, w_arr, w_ref, m_ref = _sector_table(p.n_particles, m_max)
    chi = induced_coupling(p)
    energies = p.g_eff * w_arr.astype(float) - chi * (m_arr * m_arr).astype(float)
    best = int(np.argmin(energies))
    cfg = FermionConfig(configs[best])
    balanced = w_arr[best] == w_ref and abs(int(m_arr[best])) == m_ref
    displacement = mode_displacement(p, cfg.m_total)
    return GroundState(
        config=cfg,
        energy=sector_energy(p, cfg, 0),
        order_m=cfg.m_total,
        displacement_a=displacement,
        photon_number=displacement**2,
        phase_label="balanced" if balanced else "polarized",
        boundary_contact=max(abs(m) for m in cfg.orbitals) == m_max,
    )
