"""Closed-form diagonalization of the linear flux-coupled cavity.

In a fixed fermion sector (the total angular momentum commutes with the
cavity mode) the model

    H = g_eff * sum_i L_i^2 + hbar_omega a^dag a
        + g N phi^2 X^2 - 2 g phi X M,        X = a + a^dag,

is a displaced and squeezed oscillator.  Completing the square and applying a
Bogoliubov rotation gives the dressed quantum ``hbar_Omega = sqrt(alpha*beta)``
with ``alpha = hbar_omega`` and ``beta = hbar_omega + 4 g phi^2 N``, the
squeeze parameter ``r = ln(beta/alpha)/4``, and an induced all-to-all
attraction ``-chi M^2``.  Sector energies are exact:

    E({m_i}, n) = g_eff W - chi M^2 + hbar_Omega (n + 1/2) - hbar_omega/2,

where W = sum m_i^2.  The trailing constant is kept so these values can be
compared against brute-force spectra with no per-call offset.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .core import FermionConfig, ModelParams

__all__ = [
    "AnalyticSolution",
    "dressed_frequency",
    "induced_coupling",
    "squeeze_solution",
    "sector_energy",
    "mode_displacement",
]


@dataclass(frozen=True)
class AnalyticSolution:
    """Exact normal-mode data of the linear model at fixed couplings.

    ``omega_dressed`` is the dressed quantum hbar*Omega in E0, ``x0_per_m``
    the quadrature displacement per unit of total angular momentum.
    """

    omega_dressed: float
    chi: float
    squeeze_r: float
    alpha: float
    beta: float
    x0_per_m: float

    def __post_init__(self):
        if not self.alpha > 0:
            raise ValueError(f"alpha must be positive, got {self.alpha}")
        if self.beta < self.alpha:
            raise ValueError(f"beta >= alpha required, got beta={self.beta}, alpha={self.alpha}")
        if self.chi < 0:
            raise ValueError(f"chi must be non-negative, got {self.chi}")
        if not math.isclose(self.omega_dressed, math.sqrt(self.alpha * self.beta), rel_tol=1e-12):
            raise ValueError("omega_dressed inconsistent with sqrt(alpha*beta)")
        if not math.isclose(self.squeeze_r, 0.25 * math.log(self.beta / self.alpha), abs_tol=1e-12):
            raise ValueError("squeeze_r inconsistent with ln(beta/alpha)/4")

    def variance_x(self) -> float:
        """Ground-state variance of x = (a + a^dag)/sqrt(2): squeezed below 1/2."""
        return 0.5 * math.exp(-2.0 * self.squeeze_r)

    def variance_p(self) -> float:
        """Conjugate quadrature variance; the product with variance_x is 1/4."""
        return 0.5 * math.exp(2.0 * self.squeeze_r)


def dressed_frequency(p: ModelParams) -> float:
    """Dressed cavity quantum hbar*Omega = sqrt(hw (hw + 4 g N phi^2)).

    The quadratic flux term only stiffens the mode, so Omega >= omega with
    equality at phi = 0 (or g = 0 in the decoupled limit).
    """
    hw = p.hbar_omega
    return math.sqrt(hw * (hw + 4.0 * p.g * p.n_particles * p.phi**2))


def induced_coupling(p: ModelParams) -> float:
    """Collective attraction strength chi = 4 g^2 phi^2 / (hw + 4 g N phi^2).

    Monotone in phi, saturating at g/N as phi grows.
    """
    return 4.0 * p.g**2 * p.phi**2 / (p.hbar_omega + 4.0 * p.g * p.n_particles * p.phi**2)


def squeeze_solution(p: ModelParams) -> AnalyticSolution:
    """Full normal-mode solution: dressed quantum, chi, squeeze parameter, displacement."""
    alpha = p.hbar_omega
    beta = p.hbar_omega + 4.0 * p.g * p.n_particles * p.phi**2
    return AnalyticSolution(
        omega_dressed=math.sqrt(alpha * beta),
        chi=induced_coupling(p),
        squeeze_r=0.25 * math.log(beta / alpha),
        alpha=alpha,
        beta=beta,
        x0_per_m=2.0 * math.sqrt(2.0) * p.g * p.phi / beta,
    )


def sector_energy(p: ModelParams, cfg: FermionConfig, n: int = 0) -> float:
    """Exact eigenvalue of the linear model for one fermion sector and photon index n.

    E = g_eff W - chi M^2 + hbar_Omega (n + 1/2) - hbar_omega/2.  Level
    spacing in n is exactly hbar_Omega.
    """
    if n < 0:
        raise ValueError(f"photon index must be >= 0, got {n}")
    chi = induced_coupling(p)
    hbar_omega_dressed = dressed_frequency(p)
    return (
        p.g_eff * cfg.w_kinetic
        - chi * cfg.m_total**2
        + hbar_omega_dressed * (n + 0.5)
        - 0.5 * p.hbar_omega
    )


def mode_displacement(p: ModelParams, m_total: int) -> float:
    """Coherent displacement <a> of the cavity in a sector of total momentum M.

    <a> = 2 g phi M / (hbar_omega + 4 g N phi^2), i.e. proportional to M and
    exactly zero in any balanced (M = 0) sector.  Positive M displaces the
    mode toward positive quadrature for this coupling sign.
    """
    beta = p.hbar_omega + 4.0 * p.g * p.n_particles * p.phi**2
    return 2.0 * p.g * p.phi * m_total / beta
