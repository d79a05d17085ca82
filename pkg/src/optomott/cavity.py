"""Steady states of a driven Fabry-Pérot cavity with a radiation-pressure mirror.

The movable end mirror sits on a spring; the circulating power pushes it out,
which detunes the cavity, which changes the circulating power.  In reduced
form the transmitted intensity y at drive I solves

    h(y) = y * (1 + (4 F^2 / pi^2) sin^2(phi0 + beta * y)) - I = 0,

where F is the finesse, phi0 the rest detuning from the nearest resonance and
beta the round-trip phase picked up per unit of transmitted intensity.  This
module finds every root of h on a configurable phase window, classifies each
as stable or unstable, locates the fold (knee) intensities, and follows a
branch through a hysteresis sweep.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .errors import ConvergenceError, NoBistabilityError
from .units import C_LIGHT

log = logging.getLogger(__name__)

#: scan resolution: samples per Airy half-width (pi/F) of round-trip phase
SAMPLES_PER_FRINGE_WIDTH = 20
_MIN_SCAN = 256


@dataclass(frozen=True)
class MirrorSpec:
    """One of the two identical cavity mirrors (lossless, r real positive)."""

    reflectance: float  # intensity reflectance r^2
    r: float  # amplitude reflectivity
    t_sq: float  # |t|^2
    finesse: float  # pi r / (1 - r^2)

    def __post_init__(self):
        if not 0.0 < self.r < 1.0:
            raise ValueError("MirrorSpec.r must lie strictly between 0 and 1")
        if abs(self.t_sq + self.r**2 - 1.0) > 1e-12:
            raise ValueError("MirrorSpec: |t|^2 + r^2 must equal 1")
        expected = math.pi * self.r / (1.0 - self.r**2)
        if abs(self.finesse - expected) > 1e-12 * expected:
            raise ValueError("MirrorSpec: finesse inconsistent with r")

    @classmethod
    def from_reflectance(cls, r_squared: float) -> "MirrorSpec":
        """Build from the intensity reflectance r^2 (e.g. 0.99)."""
        if not 0.0 < r_squared < 1.0:
            raise ValueError("intensity reflectance must lie strictly between 0 and 1")
        r = math.sqrt(r_squared)
        return cls(
            reflectance=r_squared,
            r=r,
            t_sq=1.0 - r_squared,
            finesse=math.pi * r / (1.0 - r_squared),
        )


@dataclass(frozen=True)
class MechanicalSpec:
    """Harmonically suspended end mirror and the drive beam cross-section.

    ``eta`` is the static compliance: mirror displacement per unit circulating
    *intensity* (W/m^2), the form the displacement law xi = eta * I_trans is
    written in.  Per unit beam *power* the compliance is ``eta / beam_area``.
    """

    mass: float  # kg
    omega: float  # rad/s
    beam_area: float  # m^2
    eta: float  # m per W/m^2

    def __post_init__(self):
        for name in ("mass", "omega", "beam_area", "eta"):
            if not getattr(self, name) > 0.0:
                raise ValueError(f"MechanicalSpec.{name} must be strictly positive")

    @classmethod
    def from_parts(cls, mass: float, omega: float, beam_area: float, mirror: MirrorSpec) -> "MechanicalSpec":
        eta = (beam_area / (mass * omega**2 * C_LIGHT)) * (2.0 * mirror.r / math.pi) * mirror.finesse
        return cls(mass=mass, omega=omega, beam_area=beam_area, eta=eta)

    @property
    def eta_per_power(self) -> float:
        """Displacement per unit transmitted beam power (m/W)."""
        return self.eta / self.beam_area


def mod_pi_offset(phase: float) -> float:
    """Reduce a phase modulo pi into the centered interval (-pi/2, pi/2]."""
    p = math.fmod(phase, math.pi)
    if p > math.pi / 2.0:
        p -= math.pi
    elif p <= -math.pi / 2.0:
        p += math.pi
    return p


@dataclass(frozen=True)
class CavityConfig:
    """Full physical description of the optomechanical cavity."""

    mirror: MirrorSpec
    mech: MechanicalSpec
    rest_length: float  # L0 (m)
    k: float  # drive wavenumber (1/m)
    phi0: float  # mod-pi resonance offset of k*L0, in (-pi/2, pi/2]
    window: float = math.pi  # largest allowed round-trip phase shift k*eta*I

    def __post_init__(self):
        if not self.rest_length > 0.0:
            raise ValueError("CavityConfig.rest_length must be strictly positive")
        if not self.window > 0.0:
            raise ValueError("CavityConfig.window must be strictly positive")
        expected = mod_pi_offset(self.k * self.rest_length)
        if abs(self.phi0 - expected) > 1e-9:
            raise ValueError("CavityConfig.phi0 inconsistent with k * rest_length")

    @classmethod
    def from_rest_length(cls, mirror, mech, rest_length, k, window=math.pi) -> "CavityConfig":
        return cls(mirror, mech, rest_length, k, mod_pi_offset(k * rest_length), window)

    @classmethod
    def tuned(cls, mirror, mech, nominal_length, k, phi0, window=math.pi) -> "CavityConfig":
        """Retune the rest length near ``nominal_length`` to hit a given offset.

        Picks L0 = (n*pi + phi0)/k with n chosen so L0 is closest to the
        nominal value; this is how one would actually set the working point.
        """
        if not -math.pi / 2.0 < phi0 <= math.pi / 2.0:
            raise ValueError("phi0 must lie in (-pi/2, pi/2]")
        n = round((k * nominal_length - phi0) / math.pi)
        length = (n * math.pi + phi0) / k
        return cls(mirror, mech, length, k, phi0, window)

    def reduce(self, intensity_unit: float = 1.0) -> "DimensionlessCavity":
        """Dimensionless working form, with intensities in ``intensity_unit`` watts."""
        return DimensionlessCavity(
            finesse=self.mirror.finesse,
            phi0=self.phi0,
            beta=self.k * self.mech.eta_per_power * intensity_unit,
            window=self.window,
        )


@dataclass(frozen=True)
class DimensionlessCavity:
    """Reduced steady-state problem: finesse, rest offset, phase per intensity.

    ``beta`` is k*eta expressed in whatever intensity unit the drive values
    use; for the dimensionless figure-style scenario that unit is alpha*I/E_re.
    """

    finesse: float
    phi0: float
    beta: float  # rad per intensity unit
    window: float = math.pi

    def __post_init__(self):
        if not self.finesse > 0.0:
            raise ValueError("DimensionlessCavity.finesse must be strictly positive")
        if not self.beta > 0.0:
            raise ValueError("DimensionlessCavity.beta must be strictly positive")
        if not self.window > 0.0:
            raise ValueError("DimensionlessCavity.window must be strictly positive")

    @property
    def gamma(self) -> float:
        """Airy contrast 4 F^2 / pi^2."""
        return 4.0 * self.finesse**2 / math.pi**2

    @property
    def y_max(self) -> float:
        return self.window / self.beta

    def n_scan(self) -> int:
        per_width = self.window / (math.pi / self.finesse)
        return max(_MIN_SCAN, math.ceil(SAMPLES_PER_FRINGE_WIDTH * per_width))


@dataclass(frozen=True)
class SteadyRoot:
    """One steady-state solution at a given drive."""

    transmitted: float  # I_trans, same unit as the drive
    phase_shift: float  # beta * I_trans = k * xi (rad)
    stable: bool


@dataclass(frozen=True)
class BranchSolution:
    """All steady states at one drive intensity, sorted by transmitted value."""

    drive: float
    roots: tuple[SteadyRoot, ...]
    truncated: bool  # a root sits at (or beyond) the search window edge

    @property
    def stable_roots(self) -> tuple[SteadyRoot, ...]:
        return tuple(r for r in self.roots if r.stable)


@dataclass(frozen=True)
class TurningPoints:
    """Fold structure of a bistable response curve.

    drive_low < drive_high bracket the bistable window.  y_low < y_high are
    the transmitted values at the folds: the response curve I(y) has its
    local maximum drive_high at y_low and its local minimum drive_low at
    y_high.
    """

    drive_low: float
    drive_high: float
    y_low: float
    y_high: float


@dataclass(frozen=True)
class SweepStep:
    drive: float
    transmitted: float
    branch: int
    jumped: bool


@dataclass(frozen=True)
class SweepTrajectory:
    steps: tuple[SweepStep, ...]

    @property
    def jump_count(self) -> int:
        return sum(1 for s in self.steps if s.jumped)


def airy_transmission(i_in, phase, finesse):
    """Transmitted power of an ideal Fabry-Pérot at a fixed round-trip phase.

    Accepts scalars or numpy arrays; never exceeds the input, with equality
    exactly on resonance (phase = 0 mod pi).
    """
    if np.any(np.asarray(i_in) < 0.0):
        raise ValueError("input intensity must be non-negative")
    gamma = 4.0 * np.asarray(finesse) ** 2 / math.pi**2
    return i_in / (1.0 + gamma * np.sin(phase) ** 2)


def _balance(cfg: DimensionlessCavity, y, drive):
    s = np.sin(cfg.phi0 + cfg.beta * y)
    return y * (1.0 + cfg.gamma * s * s) - drive


def _balance_slope(cfg: DimensionlessCavity, y):
    """d h / d y; positive slope marks a stable steady state."""
    phase = cfg.phi0 + cfg.beta * y
    s = np.sin(phase)
    return 1.0 + cfg.gamma * (s * s + cfg.beta * y * np.sin(2.0 * phase))


def steady_states(cfg: DimensionlessCavity, drive: float) -> BranchSolution:
    """Every steady-state transmitted intensity at one drive, with stability flags."""
    if drive < 0.0:
        raise ValueError("drive intensity must be non-negative")
    if drive == 0.0:
        return BranchSolution(0.0, (SteadyRoot(0.0, 0.0, True),), False)

    y_max = cfg.y_max
    ys = _kernels.steady_roots(cfg.gamma, cfg.phi0, cfg.beta, drive, y_max, cfg.n_scan())
    if ys.size == 0:
        raise ConvergenceError(f"no steady state found for drive {drive!r}")

    tol = 1e-12 * max(drive, 1.0)
    resid = np.abs(_balance(cfg, ys, drive))
    if resid.max() > tol:
        raise ConvergenceError(
            f"steady-state residual {resid.max():.3e} exceeds {tol:.3e} at drive {drive!r}"
        )

    slopes = _balance_slope(cfg, ys)
    roots = tuple(
        SteadyRoot(transmitted=float(y), phase_shift=float(cfg.beta * y), stable=bool(sl > 0.0))
        for y, sl in zip(ys, slopes)
    )
    truncated = bool(_balance(cfg, y_max, drive) < 0.0 or ys[-1] >= y_max * (1.0 - 1e-12))
    return BranchSolution(drive=float(drive), roots=roots, truncated=truncated)


def _fold_points(cfg: DimensionlessCavity) -> np.ndarray:
    """Transmitted values where dI/dy = 0, ascending; empty when single-valued."""
    ys = np.linspace(0.0, cfg.y_max, cfg.n_scan() + 1)
    g = _balance_slope(cfg, ys)
    change = np.where(g[:-1] * g[1:] < 0.0)[0]
    folds = []
    for idx in change:
        a, b = ys[idx], ys[idx + 1]
        ga = g[idx]
        for _ in range(_kernels._BISECT_ROOT_ITERS):
            mid = 0.5 * (a + b)
            gm = float(_balance_slope(cfg, mid))
            if gm != 0.0 and (gm < 0.0) == (ga < 0.0):
                a, ga = mid, gm
            else:
                b = mid
        folds.append(0.5 * (a + b))
    exact = ys[g == 0.0]
    if exact.size:
        folds.extend(float(v) for v in exact)
    return np.sort(np.asarray(folds))


def turning_points(cfg: DimensionlessCavity) -> TurningPoints:
    """The two knee intensities of the first fold pair inside the window.

    Raises NoBistabilityError when the response is single-valued.  Windows
    wider than one fringe can hold further fold pairs; only the first pair
    is reported.
    """
    folds = _fold_points(cfg)
    if folds.size < 2:
        raise NoBistabilityError("cavity response is single-valued: no bistability")
    y_low, y_high = float(folds[0]), float(folds[1])
    i_high = float(_balance(cfg, y_low, 0.0))
    i_low = float(_balance(cfg, y_high, 0.0))
    if not i_low < i_high:
        raise NoBistabilityError("fold pair does not bracket a bistable window")
    return TurningPoints(drive_low=i_low, drive_high=i_high, y_low=y_low, y_high=y_high)


def cubic_knee_estimate(cfg: DimensionlessCavity) -> tuple[float, float]:
    """Knee intensities from the small-phase cubic response; cross-check only.

    Valid when the folds sit at |phi0 + beta*y| << 1, which is the regime the
    production solver is exercised in; the full equation remains the solver.
    """
    disc = cfg.phi0**2 - 3.0 / cfg.gamma
    if disc <= 0.0 or cfg.phi0 >= 0.0:
        raise NoBistabilityError("cubic response has no fold for this offset")
    root = math.sqrt(disc)
    knees = []
    for sgn in (+1.0, -1.0):
        y = (-2.0 * cfg.phi0 + sgn * root) / (3.0 * cfg.beta)
        knees.append(y * (1.0 + cfg.gamma * (cfg.phi0 + cfg.beta * y) ** 2))
    return min(knees), max(knees)


def branch_index(folds: np.ndarray, y: float) -> int:
    """Index of the response-curve segment containing y (0 = lowest branch)."""
    return int(np.searchsorted(folds, y, side="right"))


def hysteresis_sweep(cfg: DimensionlessCavity, schedule, start: str = "lower") -> SweepTrajectory:
    """Follow one stable branch through an ordered drive schedule.

    The current root is continued to the nearest stable root on the same
    response-curve segment; when that segment holds no stable root any more
    the trajectory jumps to the stable root nearest in transmitted intensity
    (ties break toward the smaller one) and the step is flagged.
    """
    schedule = [float(v) for v in schedule]
    if not schedule:
        raise ValueError("hysteresis schedule must not be empty")
    if start not in ("lower", "upper"):
        raise ValueError("start branch hint must be 'lower' or 'upper'")

    folds = _fold_points(cfg)

    first = steady_states(cfg, schedule[0])
    stable = first.stable_roots
    current = stable[0] if start == "lower" else stable[-1]
    steps = [SweepStep(schedule[0], current.transmitted, branch_index(folds, current.transmitted), False)]

    for drive in schedule[1:]:
        sol = steady_states(cfg, drive)
        stable = sol.stable_roots
        if not stable:
            raise ConvergenceError(f"no stable steady state at drive {drive!r}")
        prev_y = current.transmitted
        prev_branch = branch_index(folds, prev_y)
        same = [r for r in stable if branch_index(folds, r.transmitted) == prev_branch]
        if same:
            current = min(same, key=lambda r: abs(r.transmitted - prev_y))
            jumped = False
        else:
            best = min(abs(r.transmitted - prev_y) for r in stable)
            candidates = [r for r in stable if abs(r.transmitted - prev_y) <= best * (1.0 + 1e-12)]
            if len(candidates) > 1:
                log.warning("ambiguous continuation at drive %r; taking the smaller root", drive)
            current = min(candidates, key=lambda r: r.transmitted)
            jumped = True
        steps.append(SweepStep(drive, current.transmitted, branch_index(folds, current.transmitted), jumped))
    return SweepTrajectory(tuple(steps))


def cavity_decay_rate(cfg: CavityConfig) -> float:
    """Field decay rate c |t|^2 / L0 of the empty cavity (1/s)."""
    return C_LIGHT * cfg.mirror.t_sq / cfg.rest_length
