"""Linear-dispersion (Dirac) ring coupled to the quantized flux.

The conduction-band ring levels are eps0 |m + 1/2| with level scale
eps0 = hbar v_F / R, and for occupations that avoid the band bottom the flux
couples linearly to the chirality imbalance J = N_plus - N_minus between the
two counter-propagating branches.  Eliminating the mode yields an attraction
-chi J^2; with consecutive filling at branch capacity g_d the kinetic cost of
imbalance is (eps0 / 4 g_d) J^2, so the ground state jumps from J ~ 0 to the
cutoff-limited |J|max when chi crosses eps0 / (4 g_d).  A lattice
regularization adds a small diamagnetic stiffness D_eff that saturates chi;
its magnitude follows from the filled-band kinetic energy of the ring.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Optional

from .errors import NoTransitionError

__all__ = [
    "DiracParams",
    "ChiralSector",
    "diamagnetic_stiffness",
    "induced_coupling_dirac",
    "effective_energy",
    "critical_flux_dirac",
    "flux_displacement",
    "optimal_chirality",
]


@dataclass(frozen=True)
class DiracParams:
    """Couplings of the flux-coupled Dirac ring, energies in E0.

    ``degeneracy`` is the per-level branch capacity (spin x valley; 4 for a
    monolayer).  ``d_eff`` is the lattice diamagnetic stiffness; zero in the
    strictly linear theory.
    """

    eps0: float
    hbar_omega: float
    phi: float
    n_electrons: int
    degeneracy: int = 4
    berry_shift: float = 0.5
    d_eff: float = 0.0

    def __post_init__(self):
        if self.eps0 <= 0:
            raise ValueError(f"eps0 must be positive, got {self.eps0}")
        if self.hbar_omega <= 0:
            raise ValueError(f"hbar_omega must be positive, got {self.hbar_omega}")
        if self.phi < 0:
            raise ValueError(f"phi must be non-negative, got {self.phi}")
        if self.n_electrons < 1:
            raise ValueError(f"n_electrons must be >= 1, got {self.n_electrons}")
        if self.degeneracy not in (1, 2, 4):
            raise ValueError(f"degeneracy must be 1, 2 or 4, got {self.degeneracy}")
        if self.d_eff < 0:
            raise ValueError(f"d_eff must be non-negative, got {self.d_eff}")

    @property
    def coupling_lambda(self) -> float:
        """Linear drive strength eps0 * phi."""
        return self.eps0 * self.phi


@dataclass(frozen=True)
class ChiralSector:
    """Branch occupations (N_plus, N_minus) and their imbalance."""

    n_plus: int
    n_minus: int

    def __post_init__(self):
        if self.n_plus < 0 or self.n_minus < 0:
            raise ValueError("branch occupations must be non-negative")
        if self.n_plus + self.n_minus < 1:
            raise ValueError("sector must hold at least one electron")

    @property
    def n_total(self) -> int:
        return self.n_plus + self.n_minus

    @property
    def j_chirality(self) -> int:
        return self.n_plus - self.n_minus

    @classmethod
    def from_orbitals(cls, orbitals: Iterable[int], berry_shift: float = 0.5) -> "ChiralSector":
        """Split an angular-momentum occupation list by the sign of m + berry_shift.

        At the standard half-integer shift, m >= 0 belongs to the + branch and
        m <= -1 to the - branch.
        """
        plus = minus = 0
        for m in orbitals:
            if m + berry_shift > 0:
                plus += 1
            else:
                minus += 1
        return cls(plus, minus)


def diamagnetic_stiffness(
    eps0: float, filling: float, n_sites: int, phi: float, spinful: bool = False
) -> float:
    """Flux stiffness of a uniformly threaded lattice ring at the given filling.

    D_eff / eps0 = (2/pi) (phi^2 / N_s) sin(pi nu) for spinless fermions,
    doubled when a spin-degenerate band is filled.  This is the large-N_s
    form of -(phi/N_s)^2 times the filled-band kinetic energy.
    """
    if not 0.0 < filling < 1.0:
        raise ValueError(f"filling must lie in (0, 1), got {filling}")
    if n_sites < 2:
        raise ValueError(f"n_sites must be >= 2, got {n_sites}")
    if eps0 <= 0:
        raise ValueError(f"eps0 must be positive, got {eps0}")
    d_eff = eps0 * (2.0 / math.pi) * (phi**2 / n_sites) * math.sin(math.pi * filling)
    return 2.0 * d_eff if spinful else d_eff


def induced_coupling_dirac(p: DiracParams) -> float:
    """Chirality attraction chi = (eps0 phi)^2 / (hbar_omega + 2 D_eff phi^2).

    With d_eff = 0 the mode is eliminated by an exact displacement and
    chi = lambda^2 / hbar_omega; a finite stiffness saturates the coupling.
    """
    lam = p.coupling_lambda
    return lam**2 / (p.hbar_omega + 2.0 * p.d_eff * p.phi**2)


def effective_energy(j: int, p: DiracParams, chi: Optional[float] = None) -> float:
    """Electronic ground-state functional of the chirality imbalance.

    E(J) = (eps0 / 4 g_d) N^2 + (eps0 / 4 g_d - chi) J^2 in the consecutive
    filling (large-N) approximation.  ``chi`` defaults to the value induced by
    the parameters themselves.
    """
    if abs(j) > p.n_electrons:
        raise ValueError(f"|j| cannot exceed the electron number: {j} vs {p.n_electrons}")
    if chi is None:
        chi = induced_coupling_dirac(p)
    stiffness = p.eps0 / (4.0 * p.degeneracy)
    return stiffness * p.n_electrons**2 + (stiffness - chi) * j * j


def critical_flux_dirac(p: DiracParams) -> float:
    """Flux amplitude where chi crosses the branch stiffness eps0 / (4 g_d).

    phi_c^2 = hbar_omega / (4 g_d eps0 - 2 D_eff); the stiffness-saturated
    coupling never reaches threshold once 2 D_eff >= 4 g_d eps0.
    """
    denom = 4.0 * p.degeneracy * p.eps0 - 2.0 * p.d_eff
    if denom <= 0:
        raise NoTransitionError(
            f"no transition: diamagnetic stiffness {p.d_eff} saturates the induced "
            f"coupling below the branch stiffness (need 4 g_d eps0 > 2 D_eff)"
        )
    return math.sqrt(p.hbar_omega / denom)


def flux_displacement(j: int, p: DiracParams) -> tuple[float, float]:
    """Coherent amplitude and photon number of the mode in a sector of imbalance j.

    <a> = -lambda j / (hbar_omega + 2 phi^2 D_eff) and <n> = <a>^2.  Both are
    zero in the balanced phase and jump discontinuously with j across the
    transition; <a> is odd and <n> even under j -> -j.
    """
    amp = -p.coupling_lambda * j / (p.hbar_omega + 2.0 * p.phi**2 * p.d_eff)
    return amp, amp * amp


def optimal_chirality(p: DiracParams, chi: Optional[float] = None, j_max: Optional[int] = None) -> int:
    """Integer imbalance minimizing effective_energy over |j| <= j_max.

    ``j_max`` defaults to N (every electron on one branch).  Ties are broken
    toward smaller |j|, then toward the negative branch, so the first-order
    jump lands deterministically on one of the two degenerate branches.
    """
    if j_max is None:
        j_max = p.n_electrons
    if j_max < 0 or j_max > p.n_electrons:
        raise ValueError(f"j_max must lie in [0, N], got {j_max}")
    if chi is None:
        chi = induced_coupling_dirac(p)
    best_j = 0
    best_e = effective_energy(0, p, chi)
    for magnitude in range(1, j_max + 1):
        for j in (-magnitude, magnitude):
            e = effective_energy(j, p, chi)
            if e < best_e:
                best_e = e
                best_j = j
    return best_j
