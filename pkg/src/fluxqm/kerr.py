"""Quartic (Kerr) cavity coupled to the ring, reduced sector by sector.

Adding a quartic term alpha4 X^4 to the flux-coupled mode keeps the problem
block diagonal in the fermion sectors but makes the bosonic block anharmonic.
In quadratures with [X, P] = 2i the block reads

    h = g S2 + A P^2 + B X^2 - C M X + alpha4 X^4,
    A = hbar_omega_p / 4,  B = hbar_omega_p / 4 + g phi^2 N,  C = 2 g phi,

with S2 = sum m_i^2.  Shifting X by the stationary point x0 of the classical
potential (the unique real root of 4 alpha4 x^3 + 2 B x = C M for positive B
and alpha4) cancels the linear term exactly and leaves

    h = g S2 + V_eff + A P'^2 + B_eff X'^2 + beta3 X'^3 + alpha4 X'^4,

whose Gaussian spacing 4 sqrt(A B_eff) depends on the sector through x0(M):
the mode frequency becomes a function of the electron distribution.  The
residual cubic-quartic block is diagonalized nonperturbatively in the
oscillator basis adapted to (A, B_eff).

Note: in this nonlinear variant the kinetic offset enters with the bare
orbital scale ``g``, not ``g_eff``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy.linalg import eigh

from .core import ModelParams
from .errors import ConvergenceError

__all__ = [
    "QuarticSector",
    "displacement_root",
    "gaussian_frequency",
    "anharmonic_spectrum",
    "full_levels",
]

_ROOT_TOL = 1e-10


@dataclass(frozen=True)
class QuarticSector:
    """Displaced-frame coefficients of one fermion sector of the quartic cavity.

    ``x0`` satisfies the stationarity cubic to within 1e-10 (checked);
    ``b_eff = B + 6 alpha4 x0^2``, ``beta3 = 4 alpha4 x0`` and
    ``v_eff = B x0^2 - C M x0 + alpha4 x0^4`` is the sector offset.
    """

    m_total: int
    alpha4: float
    a_coef: float
    b_coef: float
    c_coef: float
    x0: float
    b_eff: float
    beta3: float
    v_eff: float

    def __post_init__(self):
        if self.alpha4 < 0:
            raise ValueError(f"alpha4 must be non-negative, got {self.alpha4}")
        if self.a_coef <= 0:
            raise ValueError(f"kinetic coefficient must be positive, got {self.a_coef}")
        residual = self.cubic_residual()
        if abs(residual) > _ROOT_TOL * max(1.0, abs(self.c_coef * self.m_total)):
            raise ValueError(f"x0 does not satisfy the stationarity cubic: residual {residual}")
        if 2.0 * self.b_coef + 12.0 * self.alpha4 * self.x0**2 <= 0:
            raise ValueError("displaced potential must have positive curvature")

    def cubic_residual(self) -> float:
        return 4.0 * self.alpha4 * self.x0**3 + 2.0 * self.b_coef * self.x0 - self.c_coef * self.m_total


def _monotone_cubic_root(b_coef: float, alpha4: float, rhs: float) -> float:
    """Unique real root of 4 alpha4 x^3 + 2 B x = rhs for B > 0, alpha4 >= 0.

    Safeguarded Newton iteration: the bracket endpoints are updated from the
    sign of the residual and any Newton step leaving the bracket falls back to
    bisection.  The cubic is strictly increasing, so the bracket always
    contains exactly one root.
    """
    if alpha4 == 0.0:
        return rhs / (2.0 * b_coef)
    span = max(abs(rhs) / (2.0 * b_coef), (abs(rhs) / (4.0 * alpha4)) ** (1.0 / 3.0)) + 1.0
    lo, hi = -span, span
    x = rhs / (2.0 * b_coef)  # harmonic guess
    for _ in range(200):
        f = 4.0 * alpha4 * x**3 + 2.0 * b_coef * x - rhs
        if f > 0.0:
            hi = x
        else:
            lo = x
        step = f / (12.0 * alpha4 * x**2 + 2.0 * b_coef)
        x_next = x - step
        if not lo < x_next < hi:
            x_next = 0.5 * (lo + hi)
        if abs(x_next - x) <= 4.0 * np.finfo(float).eps * max(1.0, abs(x_next)):
            return x_next
        x = x_next
    return x


def displacement_root(m_total: int, p: ModelParams, alpha4: float) -> QuarticSector:
    """Solve the stationarity cubic of sector M and package the shifted coefficients.

    For M = 0 the displacement vanishes identically and the cubic term with
    it.  ``p.hbar_omega`` plays the role of the bare quantum hbar_omega_p of
    the nonlinear mode.
    """
    if alpha4 < 0:
        raise ValueError(f"alpha4 must be non-negative, got {alpha4}")
    a_coef = 0.25 * p.hbar_omega
    b_coef = 0.25 * p.hbar_omega + p.g * p.phi**2 * p.n_particles
    c_coef = 2.0 * p.g * p.phi
    x0 = 0.0 if m_total == 0 else _monotone_cubic_root(b_coef, alpha4, c_coef * m_total)
    return QuarticSector(
        m_total=m_total,
        alpha4=alpha4,
        a_coef=a_coef,
        b_coef=b_coef,
        c_coef=c_coef,
        x0=x0,
        b_eff=b_coef + 6.0 * alpha4 * x0**2,
        beta3=4.0 * alpha4 * x0,
        v_eff=b_coef * x0**2 - c_coef * m_total * x0 + alpha4 * x0**4,
    )


def gaussian_frequency(sector: QuarticSector) -> float:
    """Curvature spacing of the displaced sector: 4 sqrt(A B_eff).

    Even in M (x0 is odd, x0^2 even); at M = 0 and alpha4 -> 0 it reduces to
    the linear dressed quantum sqrt(hw_p (hw_p + 4 g phi^2 N)).
    """
    return 4.0 * math.sqrt(sector.a_coef * sector.b_eff)


def _oscillator_levels(sector: QuarticSector, n_levels: int, cutoff: int) -> np.ndarray:
    """Eigenvalues of A P'^2 + B_eff X'^2 + beta3 X'^3 + alpha4 X'^4 at fixed cutoff.

    Basis: eigenstates of the quadratic part, so X' = s (c + c^dag) with
    s = (A/B_eff)^(1/4) and the quadratic part is diagonal with spacing
    4 sqrt(A B_eff).
    """
    s = (sector.a_coef / sector.b_eff) ** 0.25
    spacing = 4.0 * math.sqrt(sector.a_coef * sector.b_eff)
    q = np.zeros((cutoff + 1, cutoff + 1))
    k = np.arange(cutoff)
    q[k, k + 1] = np.sqrt(k + 1.0)
    q[k + 1, k] = q[k, k + 1]
    q2 = q @ q
    h = spacing * np.diag(np.arange(cutoff + 1) + 0.5)
    if sector.beta3 != 0.0:
        h = h + (sector.beta3 * s**3) * (q2 @ q)
    if sector.alpha4 != 0.0:
        h = h + (sector.alpha4 * s**4) * (q2 @ q2)
    return eigh(h, eigvals_only=True)[:n_levels]


def anharmonic_spectrum(
    sector: QuarticSector,
    n_levels: int = 6,
    basis_cutoff: Optional[int] = None,
    rtol: float = 1e-9,
    max_doublings: int = 5,
) -> np.ndarray:
    """Nonperturbative levels of the residual anharmonic block, ascending.

    The cutoff is doubled until the requested levels move by less than
    ``rtol`` relative (floored at the Gaussian spacing); failing that, a
    ConvergenceError carries the residual that was reached.  Full sector
    energies are obtained by adding ``g S2 + v_eff`` (see full_levels).
    """
    if basis_cutoff is None:
        basis_cutoff = max(4 * n_levels, 48)
    if basis_cutoff < 4 * n_levels:
        raise ValueError(f"basis_cutoff must be >= 4*n_levels, got {basis_cutoff}")
    spacing = gaussian_frequency(sector)
    levels = _oscillator_levels(sector, n_levels, basis_cutoff)
    change = math.inf
    for _ in range(max_doublings):
        basis_cutoff *= 2
        refined = _oscillator_levels(sector, n_levels, basis_cutoff)
        change = float(np.max(np.abs(refined - levels) / np.maximum(spacing, np.abs(refined))))
        levels = refined
        if change < rtol:
            return levels
    raise ConvergenceError(
        f"anharmonic levels not converged at cutoff {basis_cutoff}: relative change {change}",
        residual=change,
    )


def full_levels(sector: QuarticSector, p: ModelParams, s2: int, n_levels: int = 6, **kwargs) -> np.ndarray:
    """Sector energies g S2 + V_eff + eps_n (bare g multiplies the kinetic sum here)."""
    eps = anharmonic_spectrum(sector, n_levels=n_levels, **kwargs)
    return p.g * s2 + sector.v_eff + eps
