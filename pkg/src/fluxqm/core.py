"""Parameter types and unit handling for flux-coupled ring models.

Everything downstream of this module works in dimensionless units: energies
are measured in a reference quantum E0 (by default the cavity quantum, so
``hbar_omega = 1``), and angular momenta are integer multiples of hbar.  The
only place SI quantities appear is in the two derivation helpers here, which
map a physical LC circuit and ring geometry onto the dimensionless couplings.

Conventions used throughout the package:

* ``g``      bare orbital scale hbar^2 / (2 m0 R^2), in E0
* ``g_eff``  effective orbital scale hbar^2 / (2 m_eff R^2), in E0
* ``phi``    dimensionless flux-coupling amplitude (free input parameter;
             its relation to loop geometry is not modeled here)
* ``eta``    Zeeman coupling (g_s mu_B / 2) B_zpf, in E0
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional, Sequence

from scipy.constants import hbar as HBAR  # J s
from scipy.constants import m_e as ELECTRON_MASS  # kg

__all__ = [
    "LCParams",
    "ModelParams",
    "FermionConfig",
    "derive_lc",
    "derive_ring",
]


@dataclass(frozen=True)
class LCParams:
    """Derived quantities of a lumped LC resonator (all SI).

    ``phi_zpf * q_zpf == hbar / 2`` holds by construction; the constructor
    rejects values that violate it beyond floating-point rounding.
    """

    inductance: float  # H
    capacitance: float  # F
    omega: float  # rad/s
    impedance: float  # ohm
    phi_zpf: float  # Wb
    q_zpf: float  # C

    def __post_init__(self):
        if self.omega <= 0 or self.impedance <= 0:
            raise ValueError("omega and impedance must be positive")
        product = self.phi_zpf * self.q_zpf
        if not math.isclose(product, HBAR / 2, rel_tol=1e-12):
            raise ValueError(
                f"zero-point amplitudes inconsistent: phi_zpf*q_zpf = {product!r}, "
                f"expected hbar/2 = {HBAR / 2!r}"
            )


def derive_lc(inductance: float, capacitance: float) -> LCParams:
    """Quantize a lumped LC circuit.

    Returns the resonance frequency ``1/sqrt(LC)``, characteristic impedance
    ``sqrt(L/C)`` and the zero-point flux/charge amplitudes ``sqrt(hbar Z/2)``
    and ``sqrt(hbar/(2Z))``.
    """
    if inductance <= 0:
        raise ValueError(f"inductance must be positive, got {inductance}")
    if capacitance <= 0:
        raise ValueError(f"capacitance must be positive, got {capacitance}")
    impedance = math.sqrt(inductance / capacitance)
    return LCParams(
        inductance=inductance,
        capacitance=capacitance,
        omega=1.0 / math.sqrt(inductance * capacitance),
        impedance=impedance,
        phi_zpf=math.sqrt(HBAR * impedance / 2.0),
        q_zpf=math.sqrt(HBAR / (2.0 * impedance)),
    )


def derive_ring(radius: float, m_eff_ratio: float, energy_unit: float) -> tuple[float, float]:
    """Orbital energy scales of a ring of ``radius`` meters.

    ``m_eff_ratio`` is m_eff/m0 and ``energy_unit`` is the reference quantum
    E0 in joules.  Returns ``(g, g_eff)`` in units of E0, with
    ``g = hbar^2/(2 m0 R^2)`` and ``g_eff = g / m_eff_ratio``.
    """
    if radius <= 0:
        raise ValueError(f"radius must be positive, got {radius}")
    if m_eff_ratio <= 0:
        raise ValueError(f"m_eff_ratio must be positive, got {m_eff_ratio}")
    if energy_unit <= 0:
        raise ValueError(f"energy_unit must be positive, got {energy_unit}")
    g = HBAR**2 / (2.0 * ELECTRON_MASS * radius**2) / energy_unit
    return g, g / m_eff_ratio


@dataclass(frozen=True)
class ModelParams:
    """Dimensionless couplings of the flux-coupled ring model.

    All energies are in units of E0.  ``eta`` is the Zeeman coupling of the
    electron spins to the zero-point field; it is zero for purely orbital
    problems.
    """

    g: float
    g_eff: float
    phi: float
    n_particles: int
    hbar_omega: float = 1.0
    eta: float = 0.0

    def __post_init__(self):
        if self.g <= 0:
            raise ValueError(f"g must be positive, got {self.g}")
        if self.g_eff <= 0:
            raise ValueError(f"g_eff must be positive, got {self.g_eff}")
        if self.hbar_omega <= 0:
            raise ValueError(f"hbar_omega must be positive, got {self.hbar_omega}")
        if self.phi < 0:
            raise ValueError(f"phi must be non-negative, got {self.phi}")
        if self.n_particles < 1:
            raise ValueError(f"n_particles must be >= 1, got {self.n_particles}")


@dataclass(frozen=True)
class FermionConfig:
    """An occupation set of angular-momentum orbitals, optionally with spins.

    Pauli exclusion is a construction invariant: spinless configurations must
    have pairwise distinct orbitals, spinful ones pairwise distinct
    ``(orbital, spin)`` pairs.  Orbitals are stored sorted (spins reordered
    alongside) so equal configurations compare equal.  The total angular
    momentum ``m_total``, total spin ``sigma_total`` and kinetic weight
    ``w_kinetic = sum(m_i^2)`` are cached as exact integers.
    """

    orbitals: tuple[int, ...]
    spins: Optional[tuple[int, ...]] = None
    m_total: int = field(init=False)
    sigma_total: int = field(init=False)
    w_kinetic: int = field(init=False)

    def __init__(self, orbitals: Sequence[int], spins: Optional[Sequence[int]] = None):
        orbs = tuple(int(m) for m in orbitals)
        if not orbs:
            raise ValueError("configuration must contain at least one particle")
        if spins is None:
            orbs = tuple(sorted(orbs))
            if len(set(orbs)) != len(orbs):
                raise ValueError(f"Pauli exclusion violated: duplicate orbitals in {orbs}")
            object.__setattr__(self, "orbitals", orbs)
            object.__setattr__(self, "spins", None)
            object.__setattr__(self, "sigma_total", 0)
        else:
            sps = tuple(int(s) for s in spins)
            if len(sps) != len(orbs):
                raise ValueError("spins must match orbitals in length")
            if any(s not in (-1, 1) for s in sps):
                raise ValueError(f"spins must be +1 or -1, got {sps}")
            pairs = sorted(zip(orbs, sps))
            if len(set(pairs)) != len(pairs):
                raise ValueError(f"Pauli exclusion violated: duplicate (orbital, spin) in {pairs}")
            object.__setattr__(self, "orbitals", tuple(m for m, _ in pairs))
            object.__setattr__(self, "spins", tuple(s for _, s in pairs))
            object.__setattr__(self, "sigma_total", sum(s for _, s in pairs))
        object.__setattr__(self, "m_total", sum(self.orbitals))
        object.__setattr__(self, "w_kinetic", sum(m * m for m in self.orbitals))

    @property
    def n_particles(self) -> int:
        return len(self.orbitals)
