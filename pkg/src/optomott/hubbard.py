"""Mean-field Mott-insulator / superfluid boundary of the Bose-Hubbard chain.

The single-site decoupling approximation gives, for the lobe at integer
filling n, the critical scaled hopping

    x_c(n, mu) = [ (n+1)/(n - mu) + n/(mu - (n-1)) ]^(-1),   mu = mu/U,

valid for n-1 < mu < n.  Points with z J / U below the curve are Mott
insulating at filling n; everything else, including the integer-mu lines
where the lobes pinch off, is superfluid.  The lobe tip has the closed form
mu* = sqrt(n(n+1)) - 1, x* = (sqrt(n+1) - sqrt(n))^2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .bands import HubbardParams

#: coordination number of the 1D chain
DEFAULT_Z = 2


@dataclass(frozen=True)
class PhasePoint:
    """Classified point of the (mu/U, zJ/U) plane."""

    mu_over_u: float
    hopping: float  # z J / U
    z: int
    label: str  # "MI(n)" or "SF"

    @property
    def mott_filling(self) -> int | None:
        if self.label.startswith("MI("):
            return int(self.label[3:-1])
        return None


@dataclass(frozen=True)
class MottLobe:
    """Sampled boundary of one Mott lobe."""

    filling: int
    mu_over_u: np.ndarray
    critical_hopping: np.ndarray
    tip: tuple[float, float]  # (mu*, x*)


def boundary(filling: int, mu_over_u: float) -> float:
    """Critical z J / U of the decoupling approximation inside lobe ``filling``."""
    n = int(filling)
    if n < 1 or n != filling:
        raise ValueError("filling must be a positive integer")
    if not n - 1 < mu_over_u < n:
        raise ValueError(f"mu/U = {mu_over_u!r} lies outside the lobe interval ({n - 1}, {n})")
    return 1.0 / ((n + 1) / (n - mu_over_u) + n / (mu_over_u - (n - 1)))


def lobe_tip(filling: int) -> tuple[float, float]:
    """Closed-form maximum of the lobe boundary: (mu*, x*)."""
    n = int(filling)
    if n < 1 or n != filling:
        raise ValueError("filling must be a positive integer")
    mu_star = math.sqrt(n * (n + 1.0)) - 1.0
    x_star = (math.sqrt(n + 1.0) - math.sqrt(n)) ** 2
    return mu_star, x_star


def lobe(filling: int, num: int = 256) -> MottLobe:
    """Boundary curve sampled on ``num`` interior points of the lobe interval."""
    if num < 2:
        raise ValueError("num must be at least 2")
    n = int(filling)
    mu = np.linspace(n - 1.0, float(n), num + 2)[1:-1]
    xc = np.array([boundary(n, float(m)) for m in mu])
    mu.flags.writeable = False
    xc.flags.writeable = False
    return MottLobe(filling=n, mu_over_u=mu, critical_hopping=xc, tip=lobe_tip(n))


def classify(params: HubbardParams, mu_over_u: float, z: int = DEFAULT_Z) -> PhasePoint:
    """Mean-field ground-state label at chemical potential mu/U.

    Mott insulating at filling ceil(mu/U) when z J / U falls strictly below
    the lobe boundary; superfluid otherwise.  Integer mu/U sits where the
    lobes pinch off and is superfluid for any positive hopping.
    """
    if not mu_over_u > 0.0:
        raise ValueError("mu/U must be strictly positive")
    if z < 2:
        raise ValueError("coordination number must be at least 2")
    if params.interaction > 0.0:
        hopping = z * params.tunneling / params.interaction
    else:
        hopping = math.inf
    if mu_over_u == math.floor(mu_over_u):
        label = "SF" if hopping > 0.0 else f"MI({int(mu_over_u)})"
        return PhasePoint(mu_over_u, hopping, z, label)
    n = math.ceil(mu_over_u)
    label = f"MI({n})" if hopping < boundary(n, mu_over_u) else "SF"
    return PhasePoint(mu_over_u, hopping, z, label)
