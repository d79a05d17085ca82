"""From a cavity steady state to the standing-wave lattice the atoms feel.

The circulating field of a branch with transmitted power I_trans produces

    V(x) = V_osc sin^2(k (L - x)) + V_L,
    V_osc = (4 F / pi) * alpha_P * I_trans,
    V_L   = ((1 - r) / (1 + r)) * alpha_P * I_trans,

with alpha_P the light-shift coefficient per unit beam power.  V_L is
reported but never fed to the band structure (it is smaller than V_osc by
~(1-r) pi / (4 F (1+r)), six orders of magnitude here), and the rigid shift
of the well positions by the mirror displacement xi is reported as the
ratio xi/a and otherwise ignored.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .cavity import MirrorSpec
from .units import DerivedScales

__all__ = ["LatticeSpec", "lattice_from_branch", "displacement_check", "dimensionless_depth"]


@dataclass(frozen=True)
class LatticeSpec:
    """Lattice parameters produced by one cavity branch (SI, signed)."""

    depth: float  # V_osc (J); negative for red detuning
    offset: float  # V_L (J)
    wavenumber: float  # k (1/m)
    depth_ratio: float  # s = V_osc / E_re
    site_spacing: float  # a = pi / k (m)
    mirror_shift: float  # xi (m)

    def __post_init__(self):
        if not self.wavenumber > 0.0:
            raise ValueError("LatticeSpec.wavenumber must be strictly positive")
        expected = math.pi / self.wavenumber
        if abs(self.site_spacing - expected) > 1e-12 * expected:
            raise ValueError("LatticeSpec.site_spacing inconsistent with wavenumber")


def lattice_from_branch(
    transmitted: float,
    mirror_shift: float,
    mirror: MirrorSpec,
    scales: DerivedScales,
    k: float,
    beam_area: float,
) -> LatticeSpec:
    """Lattice spec for one steady-state root.

    ``transmitted`` is the beam power (W); ``beam_area`` converts the
    intensity-referred Stark coefficient in ``scales`` to a per-power one.
    """
    if transmitted < 0.0:
        raise ValueError("transmitted power must be non-negative")
    if not beam_area > 0.0:
        raise ValueError("beam_area must be strictly positive")
    alpha_p = scales.stark / beam_area
    depth = (4.0 * mirror.finesse / math.pi) * alpha_p * transmitted
    offset = ((1.0 - mirror.r) / (1.0 + mirror.r)) * alpha_p * transmitted
    return LatticeSpec(
        depth=depth,
        offset=offset,
        wavenumber=k,
        depth_ratio=depth / scales.recoil,
        site_spacing=math.pi / k,
        mirror_shift=mirror_shift,
    )


def displacement_check(spec: LatticeSpec) -> float:
    """Mirror displacement over site spacing, xi / a; small in the valid regime."""
    return spec.mirror_shift / spec.site_spacing


def dimensionless_depth(finesse: float, y_trans: float) -> float:
    """|V_osc|/E_re from a transmitted intensity in alpha*I/E_re units."""
    return (4.0 * finesse / math.pi) * y_trans
