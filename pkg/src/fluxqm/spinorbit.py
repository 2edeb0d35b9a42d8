"""Zeeman-coupled sectors and stability analysis of the balanced state.

With spins coupled to the same quantized flux, each (M, Sigma) sector is
still exactly solvable: the cavity sees a linear drive 2 g phi M + eta Sigma
and the spectrum gains the collective shift -(2 g phi M + eta Sigma)^2 / D
with D = hbar_omega + 4 g N phi^2.  Expanding the ground-state energy to
quadratic order in the order parameters (M, Sigma), with Fermi-liquid
stiffnesses 2 g_eff / N and g_eff N / 2, gives a 2x2 Hessian whose lowest
eigenvalue crossing zero marks the instability.  The orbital channel screens
the diamagnetic stiffening of the spin channel, so at g_eff = g the critical
Zeeman coupling collapses to eta_c = sqrt(g N hbar_omega) / 2 independent of
phi, and the soft mode is a locked spin-orbital combination.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import FermionConfig, ModelParams
from .errors import NoTransitionError
from .linearmode import dressed_frequency

__all__ = [
    "HessianReport",
    "spin_sector_energy",
    "ladder_offset",
    "hessian",
    "critical_eta",
    "critical_flux_spin",
    "locking_ratio",
]


@dataclass(frozen=True)
class HessianReport:
    """Stability data of the balanced state in the (M, Sigma) plane.

    ``soft_vector`` is the unit eigenvector of the smallest eigenvalue, i.e.
    the direction in which order develops first; ``stable`` is true while both
    curvatures are positive.
    """

    matrix: np.ndarray
    determinant: float
    eigenvalues: tuple[float, float]
    soft_vector: tuple[float, float]
    stable: bool

    def __post_init__(self):
        if self.matrix.shape != (2, 2):
            raise ValueError("Hessian must be 2x2")
        if abs(self.matrix[0, 1] - self.matrix[1, 0]) > 1e-12:
            raise ValueError("Hessian must be symmetric")
        if self.eigenvalues[0] > self.eigenvalues[1]:
            raise ValueError("eigenvalues must be ascending")
        norm = math.hypot(*self.soft_vector)
        if not math.isclose(norm, 1.0, rel_tol=1e-9):
            raise ValueError("soft_vector must be normalized")
        if self.stable != (self.eigenvalues[0] > 0):
            raise ValueError("stable flag inconsistent with eigenvalues")


def spin_sector_energy(p: ModelParams, cfg: FermionConfig, n: int = 0) -> float:
    """Exact level of the Zeeman-coupled model in a fixed (M, Sigma) sector.

    E = g_eff W - (2 g phi M + eta Sigma)^2 / (hbar_omega + 4 g N phi^2)
        + hbar_Omega (n + 1/2).

    Note this ladder carries the +hbar_Omega/2 zero point but not the
    -hbar_omega/2 constant of the purely orbital convention; subtract
    ladder_offset(p) when comparing with linearmode.sector_energy or with
    number-operator-form brute-force spectra.
    """
    if cfg.spins is None:
        raise ValueError("spin_sector_energy requires a spinful configuration")
    if n < 0:
        raise ValueError(f"photon index must be >= 0, got {n}")
    d_stiff = p.hbar_omega + 4.0 * p.g * p.n_particles * p.phi**2
    drive = 2.0 * p.g * p.phi * cfg.m_total + p.eta * cfg.sigma_total
    return p.g_eff * cfg.w_kinetic - drive**2 / d_stiff + dressed_frequency(p) * (n + 0.5)


def ladder_offset(p: ModelParams) -> float:
    """Constant hbar_omega/2 separating the two zero-point conventions.

    spin_sector_energy(p, cfg, n) - ladder_offset(p) equals the eigenvalue of
    the number-operator form of the cavity term (and, at eta = 0, equals
    linearmode.sector_energy exactly).
    """
    return 0.5 * p.hbar_omega


def _hessian_matrix(p: ModelParams) -> np.ndarray:
    d_stiff = p.hbar_omega + 4.0 * p.g * p.n_particles * p.phi**2
    n = p.n_particles
    return np.array(
        [
            [2.0 * p.g_eff / n - 8.0 * p.g**2 * p.phi**2 / d_stiff, -4.0 * p.g * p.phi * p.eta / d_stiff],
            [-4.0 * p.g * p.phi * p.eta / d_stiff, 0.5 * p.g_eff * n - 2.0 * p.eta**2 / d_stiff],
        ]
    )


def hessian(p: ModelParams) -> HessianReport:
    """Curvature of the sector energy around (M, Sigma) = (0, 0)."""
    mat = _hessian_matrix(p)
    eigvals, eigvecs = np.linalg.eigh(mat)
    soft = eigvecs[:, 0]
    # deterministic eigenvector sign: dominant component positive
    lead = int(np.argmax(np.abs(soft)))
    if soft[lead] < 0:
        soft = -soft
    return HessianReport(
        matrix=mat,
        determinant=float(mat[0, 0] * mat[1, 1] - mat[0, 1] * mat[1, 0]),
        eigenvalues=(float(eigvals[0]), float(eigvals[1])),
        soft_vector=(float(soft[0]), float(soft[1])),
        stable=bool(eigvals[0] > 0),
    )


def critical_eta(p: ModelParams) -> float:
    """Critical Zeeman coupling eta_c = sqrt(g N hbar_omega) / 2 at g_eff = g.

    At equal orbital scales the flux terms cancel in the determinant condition
    and eta_c is independent of phi.  For g_eff != g there is no such closed
    form; locate the zero of hessian(p).determinant in eta instead.
    """
    if not math.isclose(p.g_eff, p.g, rel_tol=1e-12, abs_tol=1e-12 * max(p.g, p.g_eff)):
        raise ValueError(
            f"critical_eta holds only for g_eff = g (got g={p.g}, g_eff={p.g_eff}); "
            "find the root of hessian(p).determinant in eta for unequal couplings"
        )
    return 0.5 * math.sqrt(p.g * p.n_particles * p.hbar_omega)


def critical_flux_spin(p: ModelParams) -> float:
    """Critical flux of the Zeeman-assisted transition at fixed eta.

    phi_c = (1/N) sqrt((eta^2 - N g_eff hbar_omega / 4) / (g (g_eff - g))).
    Reduces to the purely orbital critical flux as eta -> 0.  A spin-driven
    transition (positive numerator) requires g_eff > g; the orbital-driven
    one (negative numerator) requires g_eff < g.
    """
    if math.isclose(p.g_eff, p.g, rel_tol=1e-12, abs_tol=1e-12 * max(p.g, p.g_eff)):
        raise ValueError(
            "g_eff = g makes the flux dependence drop out; the threshold is critical_eta(p)"
        )
    radicand = (p.eta**2 - 0.25 * p.n_particles * p.g_eff * p.hbar_omega) / (p.g * (p.g_eff - p.g))
    if radicand <= 0:
        raise NoTransitionError(
            f"no flux-driven instability for eta={p.eta}, g={p.g}, g_eff={p.g_eff}: "
            "the determinant condition has no real root in phi"
        )
    return math.sqrt(radicand) / p.n_particles


def locking_ratio(p: ModelParams) -> float:
    """Ratio M/Sigma of the soft mode, evaluated at the given couplings.

    ratio = 2 g phi eta / (g_eff D / N - 4 g^2 phi^2) with
    D = hbar_omega + 4 g N phi^2.  On the critical manifold this equals the
    component ratio of the Hessian's zero eigenvector; it is odd in phi and
    vanishes at phi = 0 (pure spin mode).  A vanishing denominator signals a
    pure-orbital soft mode and is reported as a signed infinity, not raised.
    """
    d_stiff = p.hbar_omega + 4.0 * p.g * p.n_particles * p.phi**2
    num = 2.0 * p.g * p.phi * p.eta
    den = p.g_eff * d_stiff / p.n_particles - 4.0 * p.g**2 * p.phi**2
    if den == 0.0:
        return math.copysign(math.inf, num) if num != 0.0 else math.inf
    return num / den
