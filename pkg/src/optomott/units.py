"""Physical constants and the scalar reductions every other module consumes.

All quantities are SI.  Light "intensities" follow the beam-power convention
used throughout the package: ``I_in`` and ``I_trans`` are laser powers in
watts, and the beam cross-section enters only where a power has to be turned
back into a true intensity (the mirror compliance and the Stark shift).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

# CODATA-2018. c is exact; hbar follows from the exact Planck constant.
HBAR = 1.054571817e-34  # J s
C_LIGHT = 299792458.0  # m / s

__all__ = [
    "HBAR",
    "C_LIGHT",
    "AtomSpec",
    "DriveSpec",
    "DerivedScales",
    "recoil_energy",
    "stark_coefficient",
    "derived_scales",
]


@dataclass(frozen=True)
class AtomSpec:
    """One bosonic species trapped in the intracavity lattice.

    mass          atomic mass (kg)
    omega_a       resonance angular frequency (rad/s)
    linewidth     natural linewidth of that resonance (rad/s)
    g_1d          effective 1D two-body coupling (J m); optional until the
                  interaction strength has been fixed by calibration
    """

    mass: float
    omega_a: float
    linewidth: float
    g_1d: float | None = None

    def __post_init__(self):
        for name in ("mass", "omega_a", "linewidth"):
            if not getattr(self, name) > 0.0:
                raise ValueError(f"AtomSpec.{name} must be strictly positive")
        if self.g_1d is not None and not self.g_1d > 0.0:
            raise ValueError("AtomSpec.g_1d must be strictly positive when set")


@dataclass(frozen=True)
class DriveSpec:
    """Monochromatic drive laser.

    The three frequency-like fields are redundant on purpose; construction
    checks they agree so downstream code may use whichever is convenient.
    """

    wavelength: float  # m
    omega: float  # rad/s
    k: float  # 1/m
    power: float = 0.0  # input beam power (W)

    _REL_TOL = 1e-12

    def __post_init__(self):
        if not self.wavelength > 0.0:
            raise ValueError("DriveSpec.wavelength must be strictly positive")
        if self.power < 0.0:
            raise ValueError("DriveSpec.power must be non-negative")
        k_wav = 2.0 * math.pi / self.wavelength
        k_omg = self.omega / C_LIGHT
        if abs(self.k - k_wav) > self._REL_TOL * k_wav or abs(self.k - k_omg) > self._REL_TOL * k_wav:
            raise ValueError("DriveSpec: k, omega and wavelength are inconsistent")

    @classmethod
    def from_wavelength(cls, wavelength: float, power: float = 0.0) -> "DriveSpec":
        k = 2.0 * math.pi / wavelength
        return cls(wavelength=wavelength, omega=C_LIGHT * k, k=k, power=power)


@dataclass(frozen=True)
class DerivedScales:
    """Scales derived from an (atom, drive) pair.

    recoil        E_re = hbar^2 k^2 / (2 m)  (J)
    stark         light-shift coefficient per unit circulating intensity
                  (J per W/m^2); negative for red detuning
    detuning      Delta = omega - omega_a  (rad/s)
    """

    recoil: float
    stark: float
    detuning: float

    def __post_init__(self):
        if not self.recoil > 0.0:
            raise ValueError("DerivedScales.recoil must be strictly positive")
        if self.stark * self.detuning <= 0.0:
            raise ValueError("DerivedScales: stark coefficient and detuning must share a sign")


def recoil_energy(atom: AtomSpec, drive: DriveSpec) -> float:
    """Recoil energy hbar^2 k^2 / (2 m) of the atom in the drive field (J)."""
    return (HBAR * drive.k) ** 2 / (2.0 * atom.mass)


def stark_coefficient(atom: AtomSpec, drive: DriveSpec) -> float:
    """Ground-state light-shift coefficient 3 pi c^2 Gamma / (2 omega_a^3 Delta).

    Multiplies the circulating intensity (W/m^2) to give an energy.  Negative
    below the atomic resonance, where the lattice wells sit on the antinodes.
    """
    delta = drive.omega - atom.omega_a
    if delta == 0.0:
        raise ValueError("stark_coefficient is singular at zero detuning")
    return 3.0 * math.pi * C_LIGHT**2 * atom.linewidth / (2.0 * atom.omega_a**3 * delta)


def derived_scales(atom: AtomSpec, drive: DriveSpec) -> DerivedScales:
    """Bundle recoil energy, Stark coefficient and detuning for one scenario."""
    return DerivedScales(
        recoil=recoil_energy(atom, drive),
        stark=stark_coefficient(atom, drive),
        detuning=drive.omega - atom.omega_a,
    )
