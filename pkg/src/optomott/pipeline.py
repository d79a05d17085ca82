"""End-to-end chain: drive sweep -> cavity branches -> lattice depth -> (J, U)
-> phase labels, plus the figure-style CSV tables, run manifests and the
timescale report.

A scenario comes from a flat key/value config (see ``config``).  Two modes:

* ``dimensionless`` -- drive intensities are the reduced alpha*I/E_re values;
  only the finesse, rest offset and beta are needed.
* ``physical`` -- drive intensities are beam powers in watts; the atomic,
  mechanical and geometric inputs fix the watt <-> dimensionless conversion.
"""

from __future__ import annotations

import io
import json
import math
import warnings
from dataclasses import dataclass

import numpy as np

from ._version import __version__
from .bands import (
    DEFAULT_BANDS,
    DEFAULT_PLANE_WAVES,
    DEFAULT_POINTS_PER_SITE,
    DEFAULT_QUASIMOMENTA,
    DEFAULT_WANNIER_SITES,
    ShallowLatticeWarning,
    TIGHT_BINDING_FLOOR,
    bloch_bands,
    hubbard_from_depth,
    quartic_integral,
    tunneling_j,
    wannier,
)
from .cavity import (
    CavityConfig,
    DimensionlessCavity,
    MechanicalSpec,
    MirrorSpec,
    SweepTrajectory,
    _fold_points,
    branch_index,
    cavity_decay_rate,
    hysteresis_sweep,
    steady_states,
    turning_points,
)
from .config import coerce_choice, coerce_float, coerce_int
from .errors import ConfigError, NoBistabilityError, NumericalError
from .hubbard import DEFAULT_Z, MottLobe, boundary, classify, lobe
from .units import C_LIGHT, HBAR, AtomSpec, DerivedScales, DriveSpec, derived_scales

#: relative nudge applied around the knees in loop schedules so the discrete
#: jump rows land at the fold intensities
KNEE_NUDGE = 1e-9

_TIP_MU = math.sqrt(2.0) - 1.0


@dataclass(frozen=True)
class Scenario:
    """Validated scenario; the working cavity form plus every knob downstream."""

    mode: str
    mirror: MirrorSpec
    reduced: DimensionlessCavity  # drive unit: watts (physical) or alpha*I/E_re
    sweep_lo: float
    sweep_hi: float
    sweep_steps: int
    mu_over_u: float
    z: int
    g: float | None  # E_re/k units; None -> calibrate
    calibration: tuple[float, float] | None  # (s_ref, U_ref/E_re)
    n_q: int
    n_bands: int
    m_pw: int
    wannier_sites: int
    points_per_site: int
    n_atoms: int
    g0: float
    atom: AtomSpec | None
    drive: DriveSpec | None
    cavity: CavityConfig | None
    scales: DerivedScales | None
    unit_watts: float | None  # watts per unit of alpha*I/E_re (physical mode)
    raw: dict[str, str]

    @property
    def depth_per_drive(self) -> float:
        """|V_osc|/E_re per unit of transmitted drive in native units."""
        scale = 4.0 * self.mirror.finesse / math.pi
        if self.mode == "physical":
            return scale / self.unit_watts
        return scale

    def depth_of(self, transmitted: float) -> float:
        return self.depth_per_drive * transmitted

    def hubbard_params(self, depth: float, g: float):
        return hubbard_from_depth(
            depth,
            g,
            n_q=self.n_q,
            n_bands=1,
            m_pw=self.m_pw,
            n_sites=self.wannier_sites,
            points_per_site=self.points_per_site,
        )


_KNOWN_KEYS = {
    "scenario.mode",
    "cavity.reflectance",
    "cavity.phi0_over_pi",
    "cavity.window_over_pi",
    "cavity.length",
    "reduced.beta_over_pi",
    "atom.mass",
    "atom.resonance_wavelength",
    "atom.linewidth",
    "drive.wavelength",
    "drive.power",
    "mirror_motion.mass",
    "mirror_motion.omega",
    "mirror_motion.beam_area",
    "hubbard.mu_over_u",
    "hubbard.z",
    "hubbard.g",
    "hubbard.calibration_depth",
    "hubbard.calibration_u",
    "sweep.min",
    "sweep.max",
    "sweep.steps",
    "weak_coupling.atom_count",
    "weak_coupling.g0",
    "bands.quasimomenta",
    "bands.bands",
    "bands.plane_waves",
    "wannier.sites",
    "wannier.points_per_site",
    "hysteresis.direction",
    "output.fig2",
    "output.fig3",
}


def _require(raw: dict[str, str], key: str) -> str:
    if key not in raw:
        raise ConfigError(f"missing required config key {key!r}")
    return raw[key]


def build_scenario(raw: dict[str, str]) -> Scenario:
    """Validate a parsed config mapping and assemble the scenario."""
    unknown = set(raw) - _KNOWN_KEYS
    if unknown:
        raise ConfigError(f"unknown config keys: {', '.join(sorted(unknown))}")

    mode = coerce_choice(_require(raw, "scenario.mode"), "scenario.mode", ("dimensionless", "physical"))

    try:
        mirror = MirrorSpec.from_reflectance(coerce_float(_require(raw, "cavity.reflectance"), "cavity.reflectance"))
        phi0 = coerce_float(_require(raw, "cavity.phi0_over_pi"), "cavity.phi0_over_pi") * math.pi
        window = coerce_float(raw.get("cavity.window_over_pi", "1.0"), "cavity.window_over_pi") * math.pi

        atom = drive = cavity = scales = None
        unit_watts = None
        if mode == "dimensionless":
            beta = coerce_float(_require(raw, "reduced.beta_over_pi"), "reduced.beta_over_pi") * math.pi
            reduced = DimensionlessCavity(finesse=mirror.finesse, phi0=phi0, beta=beta, window=window)
        else:
            atom = AtomSpec(
                mass=coerce_float(_require(raw, "atom.mass"), "atom.mass"),
                omega_a=2.0 * math.pi * C_LIGHT
                / coerce_float(_require(raw, "atom.resonance_wavelength"), "atom.resonance_wavelength"),
                linewidth=coerce_float(_require(raw, "atom.linewidth"), "atom.linewidth"),
            )
            drive = DriveSpec.from_wavelength(
                coerce_float(_require(raw, "drive.wavelength"), "drive.wavelength"),
                power=coerce_float(raw.get("drive.power", "0.0"), "drive.power"),
            )
            mech = MechanicalSpec.from_parts(
                mass=coerce_float(_require(raw, "mirror_motion.mass"), "mirror_motion.mass"),
                omega=coerce_float(_require(raw, "mirror_motion.omega"), "mirror_motion.omega"),
                beam_area=coerce_float(_require(raw, "mirror_motion.beam_area"), "mirror_motion.beam_area"),
                mirror=mirror,
            )
            cavity = CavityConfig.tuned(
                mirror,
                mech,
                nominal_length=coerce_float(_require(raw, "cavity.length"), "cavity.length"),
                k=drive.k,
                phi0=phi0,
                window=window,
            )
            scales = derived_scales(atom, drive)
            alpha_per_watt = scales.stark / mech.beam_area
            unit_watts = scales.recoil / abs(alpha_per_watt)
            reduced = cavity.reduce(intensity_unit=1.0)  # drive unit: watts
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc

    sweep_lo = coerce_float(_require(raw, "sweep.min"), "sweep.min")
    sweep_hi = coerce_float(_require(raw, "sweep.max"), "sweep.max")
    sweep_steps = coerce_int(raw.get("sweep.steps", "400"), "sweep.steps")
    if not sweep_lo < sweep_hi:
        raise ConfigError("sweep.min must be smaller than sweep.max")
    if sweep_lo < 0.0:
        raise ConfigError("sweep.min must be non-negative")
    if sweep_steps < 2:
        raise ConfigError("sweep.steps must be at least 2")

    mu_over_u = coerce_float(raw.get("hubbard.mu_over_u", repr(_TIP_MU)), "hubbard.mu_over_u")
    z = coerce_int(raw.get("hubbard.z", str(DEFAULT_Z)), "hubbard.z")
    if not mu_over_u > 0.0:
        raise ConfigError("hubbard.mu_over_u must be strictly positive")
    if z < 2:
        raise ConfigError("hubbard.z must be at least 2")

    g = coerce_float(raw["hubbard.g"], "hubbard.g") if "hubbard.g" in raw else None
    has_depth = "hubbard.calibration_depth" in raw
    has_u = "hubbard.calibration_u" in raw
    if has_depth != has_u:
        raise ConfigError("hubbard.calibration_depth and hubbard.calibration_u must be given together")
    calibration = None
    if has_depth:
        if g is not None:
            raise ConfigError("give either hubbard.g or the calibration pair, not both")
        calibration = (
            coerce_float(raw["hubbard.calibration_depth"], "hubbard.calibration_depth"),
            coerce_float(raw["hubbard.calibration_u"], "hubbard.calibration_u"),
        )
        if calibration[0] < TIGHT_BINDING_FLOOR:
            raise ConfigError("hubbard.calibration_depth lies below the tight-binding floor")
        if not calibration[1] > 0.0:
            raise ConfigError("hubbard.calibration_u must be strictly positive")
    if g is not None and not g > 0.0:
        raise ConfigError("hubbard.g must be strictly positive")

    return Scenario(
        mode=mode,
        mirror=mirror,
        reduced=reduced,
        sweep_lo=sweep_lo,
        sweep_hi=sweep_hi,
        sweep_steps=sweep_steps,
        mu_over_u=mu_over_u,
        z=z,
        g=g,
        calibration=calibration,
        n_q=coerce_int(raw.get("bands.quasimomenta", str(DEFAULT_QUASIMOMENTA)), "bands.quasimomenta"),
        n_bands=coerce_int(raw.get("bands.bands", str(DEFAULT_BANDS)), "bands.bands"),
        m_pw=coerce_int(raw.get("bands.plane_waves", str(DEFAULT_PLANE_WAVES)), "bands.plane_waves"),
        wannier_sites=coerce_int(raw.get("wannier.sites", str(DEFAULT_WANNIER_SITES)), "wannier.sites"),
        points_per_site=coerce_int(
            raw.get("wannier.points_per_site", str(DEFAULT_POINTS_PER_SITE)), "wannier.points_per_site"
        ),
        n_atoms=coerce_int(raw.get("weak_coupling.atom_count", "1000"), "weak_coupling.atom_count"),
        g0=coerce_float(raw.get("weak_coupling.g0", "0.0"), "weak_coupling.g0"),
        atom=atom,
        drive=drive,
        cavity=cavity,
        scales=scales,
        unit_watts=unit_watts,
        raw=dict(raw),
    )


# --------------------------------------------------------------------------
# coupling calibration
# --------------------------------------------------------------------------


def calibrate_g(scenario: Scenario, depth_ref: float, u_ref: float) -> float:
    """Coupling g (E_re/k units) that makes U equal u_ref at depth_ref.

    U is linear in g, so this is a single quartic integral.
    """
    if not u_ref > 0.0:
        raise ValueError("u_ref must be strictly positive")
    b = bloch_bands(depth_ref, n_q=scenario.n_q, n_bands=1, m_pw=scenario.m_pw)
    w = wannier(b, n_sites=scenario.wannier_sites, points_per_site=scenario.points_per_site)
    return u_ref / quartic_integral(w)


def resolve_coupling(scenario: Scenario) -> float:
    """The contact coupling to use, calibrating when the config left it open.

    Default rule: place the MI/SF threshold depth at the geometric mean of
    the deepest lower-branch depth and the shallowest upper-branch depth, so
    the whole upper branch of the bistable window is Mott insulating and the
    whole lower branch superfluid at the configured chemical potential.
    """
    if scenario.g is not None:
        return scenario.g
    if scenario.calibration is not None:
        return calibrate_g(scenario, *scenario.calibration)
    if scenario.mu_over_u == math.floor(scenario.mu_over_u):
        raise ConfigError("default calibration needs a non-integer hubbard.mu_over_u; set hubbard.g")
    try:
        tp = turning_points(scenario.reduced)
    except NoBistabilityError as exc:
        raise ConfigError(
            "default coupling calibration needs a bistable cavity; set hubbard.g explicitly"
        ) from exc
    s_lower_edge = scenario.depth_of(tp.y_low)  # deepest point of the lower branch
    s_upper_edge = scenario.depth_of(tp.y_high)  # shallowest point of the upper branch
    s_star = math.sqrt(s_lower_edge * s_upper_edge)
    n = math.ceil(scenario.mu_over_u)
    x_c = boundary(n, scenario.mu_over_u)
    b = bloch_bands(s_star, n_q=scenario.n_q, n_bands=1, m_pw=scenario.m_pw)
    u_target = scenario.z * tunneling_j(b) / x_c
    w = wannier(b, n_sites=scenario.wannier_sites, points_per_site=scenario.points_per_site)
    return u_target / quartic_integral(w)


# --------------------------------------------------------------------------
# figure tables
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class Fig2Row:
    drive_dimensionless: float
    branch: int
    depth_ratio: float
    stable: bool
    knee: bool


@dataclass(frozen=True)
class Fig2Result:
    rows: tuple[Fig2Row, ...]
    knees: tuple[float, float] | None  # native drive units
    truncated: bool


@dataclass(frozen=True)
class OverlayRow:
    drive: float  # native units (W in physical mode)
    branch: int
    depth_ratio: float
    tunneling: float
    interaction: float
    log_ratio: float
    phase: str
    stable: bool
    shallow: bool


@dataclass(frozen=True)
class Fig3Result:
    rows: tuple[OverlayRow, ...]
    lobe: MottLobe
    knees: tuple[float, float] | None
    coupling: float


def _sweep_drives(scenario: Scenario, knees: tuple[float, float] | None) -> np.ndarray:
    grid = np.linspace(scenario.sweep_lo, scenario.sweep_hi, scenario.sweep_steps)
    if knees is None:
        return grid
    inside = [v for v in knees if scenario.sweep_lo <= v <= scenario.sweep_hi]
    if not inside:
        return grid
    return np.unique(np.concatenate([grid, np.asarray(inside)]))


def _try_turning_points(scenario: Scenario):
    try:
        return turning_points(scenario.reduced)
    except NoBistabilityError:
        return None


def fig2_curve(scenario: Scenario) -> Fig2Result:
    """Dimensionless bistability table: all branch depths per drive, knees marked."""
    unit = scenario.unit_watts if scenario.mode == "physical" else 1.0
    tp = _try_turning_points(scenario)
    knees = (tp.drive_low, tp.drive_high) if tp is not None else None
    folds = _fold_points(scenario.reduced)
    drives = _sweep_drives(scenario, knees)
    knee_set = set(knees) if knees is not None else set()

    rows: list[Fig2Row] = []
    truncated = False
    for d in drives:
        sol = steady_states(scenario.reduced, float(d))
        truncated = truncated or sol.truncated
        for root in sol.roots:
            rows.append(
                Fig2Row(
                    drive_dimensionless=float(d) / unit,
                    branch=branch_index(folds, root.transmitted),
                    depth_ratio=scenario.depth_of(root.transmitted),
                    stable=root.stable,
                    knee=float(d) in knee_set,
                )
            )
    return Fig2Result(rows=tuple(rows), knees=knees, truncated=truncated)


def fig3_overlay(scenario: Scenario) -> Fig3Result:
    """Phase-labelled tunneling table per stable/unstable branch, plus the n=1 lobe."""
    g = resolve_coupling(scenario)
    tp = _try_turning_points(scenario)
    knees = (tp.drive_low, tp.drive_high) if tp is not None else None
    folds = _fold_points(scenario.reduced)
    drives = _sweep_drives(scenario, knees)

    rows: list[OverlayRow] = []
    for d in drives:
        sol = steady_states(scenario.reduced, float(d))
        for root in sol.roots:
            s = scenario.depth_of(root.transmitted)
            if s == 0.0:
                continue  # dark cavity: no lattice, no tight-binding row
            shallow = s < TIGHT_BINDING_FLOOR
            with warnings.catch_warnings():
                warnings.simplefilter("ignore", ShallowLatticeWarning)
                params = scenario.hubbard_params(s, g)
            point = classify(params, scenario.mu_over_u, scenario.z)
            log_ratio = math.log10(params.ratio) if params.ratio > 0.0 else math.nan
            rows.append(
                OverlayRow(
                    drive=float(d),
                    branch=branch_index(folds, root.transmitted),
                    depth_ratio=s,
                    tunneling=params.tunneling,
                    interaction=params.interaction,
                    log_ratio=log_ratio,
                    phase=point.label,
                    stable=root.stable,
                    shallow=shallow,
                )
            )
    return Fig3Result(rows=tuple(rows), lobe=lobe(1, 256), knees=knees, coupling=g)


# --------------------------------------------------------------------------
# hysteresis schedules
# --------------------------------------------------------------------------


def hysteresis_schedule(scenario: Scenario, direction: str) -> list[float]:
    """Drive schedule for a sweep; tight nudges around the knees are inserted
    so jumps land on the fold intensities.  The exact fold drives themselves
    are avoided: the merged root pair there is marginal and belongs to no
    stable branch."""
    if direction not in ("up", "down", "loop"):
        raise ValueError("direction must be 'up', 'down' or 'loop'")
    tp = _try_turning_points(scenario)
    knees = (tp.drive_low, tp.drive_high) if tp is not None else None
    extra: list[float] = []
    if knees is not None:
        for v in knees:
            extra.extend([v * (1.0 - KNEE_NUDGE), v * (1.0 + KNEE_NUDGE)])
        extra = [v for v in extra if scenario.sweep_lo <= v <= scenario.sweep_hi]
    grid = np.linspace(scenario.sweep_lo, scenario.sweep_hi, scenario.sweep_steps)
    ascending = np.unique(np.concatenate([grid, np.asarray(extra)])) if extra else grid
    up = [float(v) for v in ascending]
    if direction == "up":
        return up
    if direction == "down":
        return up[::-1]
    return up + up[-2::-1]


def run_hysteresis(scenario: Scenario, direction: str) -> SweepTrajectory:
    schedule = hysteresis_schedule(scenario, direction)
    start = "upper" if direction == "down" else "lower"
    return hysteresis_sweep(scenario.reduced, schedule, start=start)


# --------------------------------------------------------------------------
# timescales
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class TimescaleReport:
    branch: str
    drive: float  # W
    depth_ratio: float
    kappa: float  # 1/s
    tunneling_time: float  # s
    weak_coupling_ratio: float
    weak_coupling_ok: bool


def timescales(scenario: Scenario, branch: str) -> TimescaleReport:
    """Cavity decay rate, tunneling time and the weak-coupling ratio at the
    configured operating power."""
    if scenario.mode != "physical":
        raise ConfigError("timescales need a physical-mode scenario")
    if branch not in ("upper", "lower"):
        raise ValueError("branch must be 'upper' or 'lower'")
    power = scenario.drive.power
    if not power > 0.0:
        raise ConfigError("set drive.power to the operating input power")
    sol = steady_states(scenario.reduced, power)
    stable = sol.stable_roots
    root = stable[-1] if branch == "upper" else stable[0]
    s = scenario.depth_of(root.transmitted)
    b = bloch_bands(s, n_q=scenario.n_q, n_bands=1, m_pw=scenario.m_pw)
    j = tunneling_j(b)
    if not j > 0.0:
        raise NumericalError(f"tunneling J = {j!r} is not positive on the {branch} branch")
    j_si = j * scenario.scales.recoil
    kappa = cavity_decay_rate(scenario.cavity)
    rho = scenario.n_atoms * scenario.g0**2 / (abs(scenario.scales.detuning) * kappa)
    return TimescaleReport(
        branch=branch,
        drive=power,
        depth_ratio=s,
        kappa=kappa,
        tunneling_time=HBAR / j_si,
        weak_coupling_ratio=rho,
        weak_coupling_ok=bool(rho < 0.1),
    )


# --------------------------------------------------------------------------
# serialization
# --------------------------------------------------------------------------


def _fmt(value) -> str:
    if isinstance(value, bool):
        return "1" if value else "0"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, str):
        return value
    return format(float(value), ".17g")


def _csv(header: list[str], rows) -> str:
    buf = io.StringIO()
    buf.write(",".join(header) + "\n")
    for row in rows:
        buf.write(",".join(_fmt(v) for v in row) + "\n")
    return buf.getvalue()


FIG2_HEADER = ["I_in_dimensionless", "branch", "V_osc_over_Ere", "stable", "knee_flag"]
HYSTERESIS_HEADER = ["step", "I_in", "I_trans", "branch", "jumped"]
OVERLAY_HEADER = ["I_in", "branch", "s", "J_over_Ere", "U_over_Ere", "log10_2JoverU", "phase", "stable"]
LOBE_HEADER = ["mu_over_U", "zJc_over_U"]


def fig2_csv(result: Fig2Result) -> str:
    return _csv(
        FIG2_HEADER,
        ((r.drive_dimensionless, r.branch, r.depth_ratio, r.stable, r.knee) for r in result.rows),
    )


def hysteresis_csv(trajectory: SweepTrajectory) -> str:
    return _csv(
        HYSTERESIS_HEADER,
        ((i, s.drive, s.transmitted, s.branch, s.jumped) for i, s in enumerate(trajectory.steps)),
    )


def overlay_csv(result: Fig3Result) -> str:
    return _csv(
        OVERLAY_HEADER,
        (
            (r.drive, r.branch, r.depth_ratio, r.tunneling, r.interaction, r.log_ratio, r.phase, r.stable)
            for r in result.rows
        ),
    )


def lobe_csv(curve: MottLobe) -> str:
    return _csv(LOBE_HEADER, zip(curve.mu_over_u, curve.critical_hopping))


def bands_report(depth: float, g: float | None, n_q=DEFAULT_QUASIMOMENTA, n_bands=DEFAULT_BANDS, m_pw=DEFAULT_PLANE_WAVES) -> dict:
    """Single-depth JSON-ready report for the ``bands`` CLI subcommand."""
    from .bands import tunneling_j2, site_overlap

    b = bloch_bands(depth, n_q=n_q, n_bands=n_bands, m_pw=m_pw)
    b_wide = bloch_bands(depth, n_q=n_q, n_bands=min(n_bands, 2 * (m_pw + 5) + 1), m_pw=m_pw + 5)
    cutoff_shift = float(np.abs(b.energies - b_wide.energies[:, : b.energies.shape[1]]).max())
    j = tunneling_j(b)
    report = {
        "s": depth,
        "bands": [
            {"band": n, "E_over_Ere": [float(v) for v in b.energies[:, n]]} for n in range(b.n_bands)
        ],
        "q_over_k": [float(v) for v in b.q_over_k],
        "J_over_Ere": j,
        "J2_over_Ere": tunneling_j2(b),
        "cutoff_shift_Ere": cutoff_shift,
    }
    if depth > 0.0:
        w = wannier(b)
        report["neighbor_overlap"] = site_overlap(w, 1)
        if g is not None:
            u = g * quartic_integral(w)
            report["g_Ere_over_k"] = g
            report["U_over_Ere"] = u
            report["two_J_over_U"] = 2.0 * j / u if u else math.inf
    return report


def timescales_report(report: TimescaleReport) -> dict:
    return {
        "branch": report.branch,
        "I_in_W": report.drive,
        "s": report.depth_ratio,
        "kappa_per_s": report.kappa,
        "tunneling_time_s": report.tunneling_time,
        "weak_coupling_ratio": report.weak_coupling_ratio,
        "weak_coupling_ok": report.weak_coupling_ok,
    }


def run_manifest(scenario: Scenario, command: str, extras: dict | None = None) -> dict:
    """Reproducibility manifest written next to each figure file."""
    manifest = {
        "command": command,
        "version": __version__,
        "mode": scenario.mode,
        "config": dict(scenario.raw),
        "tolerances": {
            "steady_state_residual": "1e-12 * max(I_in, 1)",
            "eigenpair_residual": "1e-8 (audited), typical 1e-13",
            "knee_bisection": "fixed 80 halvings of one scan cell",
        },
    }
    if scenario.mode == "physical":
        scales = scenario.scales
        mech = scenario.cavity.mech
        half_wave = scenario.drive.wavelength / 2.0
        total_sites = round(scenario.cavity.rest_length / half_wave)
        active_sites = min(1000, total_sites)
        manifest["physical"] = {
            "detuning_rad_per_s": scales.detuning,
            "stark_J_per_intensity": scales.stark,
            "stark_J_per_W": scales.stark / mech.beam_area,
            "recoil_J": scales.recoil,
            "unit_watts": scenario.unit_watts,
            "eta_m_per_intensity": mech.eta,
            "eta_m_per_W": mech.eta_per_power,
            "k_eta_rad_per_W": scenario.reduced.beta,
            "rest_length_m": scenario.cavity.rest_length,
            "kappa_per_s": cavity_decay_rate(scenario.cavity),
            "lattice_sites_total": total_sites,
            "active_sites": active_sites,
            "mean_filling": scenario.n_atoms / active_sites,
            "supplied_intensity_inputs": {
                "beam_area": "config (mirror_motion.beam_area)",
                "detuning": "derived from atom.resonance_wavelength and drive.wavelength",
                "stark_coefficient": "derived",
            },
        }
    if extras:
        manifest.update(extras)
    return manifest


def manifest_json(manifest: dict) -> str:
    return json.dumps(manifest, indent=2, sort_keys=True) + "\n"
