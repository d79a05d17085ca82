"""Command-line interface.

Subcommands mirror the pipeline operations; figure-producing commands write a
CSV plus a JSON manifest next to it, the others print to stdout.  Exit codes:
0 success, 2 configuration problem, 3 numerical failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import pipeline
from ._version import __version__
from .config import load_config
from .errors import ConfigError, NumericalError
from .hubbard import lobe
from .pipeline import build_scenario


def _scenario_from(args) -> pipeline.Scenario:
    return build_scenario(load_config(args.config))


def _write_with_manifest(out_path: str, text: str, manifest: dict) -> None:
    path = Path(out_path)
    path.write_text(text, encoding="utf-8", newline="")
    manifest_path = path.with_name(path.name + ".manifest.json")
    manifest_path.write_text(pipeline.manifest_json(manifest), encoding="utf-8", newline="")


def _cmd_cavity_sweep(args) -> int:
    scenario = _scenario_from(args)
    result = pipeline.fig2_curve(scenario)
    extras = {"knees_native_units": list(result.knees) if result.knees else None,
              "window_truncated": result.truncated}
    if result.knees and scenario.mode == "physical":
        extras["knees_mW"] = [v * 1e3 for v in result.knees]
        extras["knees_dimensionless"] = [v / scenario.unit_watts for v in result.knees]
    out = args.out or scenario.raw.get("output.fig2", "fig2.csv")
    _write_with_manifest(out, pipeline.fig2_csv(result), pipeline.run_manifest(scenario, "cavity-sweep", extras))
    return 0


def _cmd_hysteresis(args) -> int:
    scenario = _scenario_from(args)
    direction = args.direction or scenario.raw.get("hysteresis.direction", "loop")
    if direction not in ("up", "down", "loop"):
        raise ConfigError("hysteresis direction must be up, down or loop")
    trajectory = pipeline.run_hysteresis(scenario, direction)
    text = pipeline.hysteresis_csv(trajectory)
    if args.out:
        _write_with_manifest(
            args.out,
            text,
            pipeline.run_manifest(scenario, "hysteresis", {"direction": direction, "jumps": trajectory.jump_count}),
        )
    else:
        sys.stdout.write(text)
    return 0


def _cmd_bands(args) -> int:
    if args.s < 0.0:
        raise ConfigError("--s must be non-negative")
    report = pipeline.bands_report(args.s, args.g)
    sys.stdout.write(json.dumps(report, indent=2, sort_keys=True) + "\n")
    return 0


def _cmd_phase_boundary(args) -> int:
    if args.n < 1:
        raise ConfigError("--n must be a positive integer")
    sys.stdout.write(pipeline.lobe_csv(lobe(args.n, args.points)))
    return 0


def _cmd_overlay(args) -> int:
    scenario = _scenario_from(args)
    result = pipeline.fig3_overlay(scenario)
    extras = {
        "knees_native_units": list(result.knees) if result.knees else None,
        "coupling_g_Ere_over_k": result.coupling,
        "mu_over_u": scenario.mu_over_u,
        "z": scenario.z,
        "shallow_rows": sum(1 for r in result.rows if r.shallow),
    }
    if result.knees and scenario.mode == "physical":
        extras["knees_mW"] = [v * 1e3 for v in result.knees]
    out = args.out or scenario.raw.get("output.fig3", "fig3.csv")
    _write_with_manifest(out, pipeline.overlay_csv(result), pipeline.run_manifest(scenario, "overlay", extras))
    return 0


def _cmd_timescales(args) -> int:
    scenario = _scenario_from(args)
    report = pipeline.timescales(scenario, args.branch)
    sys.stdout.write(json.dumps(pipeline.timescales_report(report), indent=2, sort_keys=True) + "\n")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="optomott",
        description="Bistable cavity lattices and the Mott/superfluid state of the trapped bosons.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("cavity-sweep", help="bistability table of the lattice depth (figure-2 style)")
    p.add_argument("--config", required=True)
    p.add_argument("--out", default=None, help="output CSV path (default fig2.csv)")
    p.set_defaults(func=_cmd_cavity_sweep)

    p = sub.add_parser("hysteresis", help="branch-following sweep trajectory")
    p.add_argument("--config", required=True)
    p.add_argument("--direction", choices=("up", "down", "loop"), default=None)
    p.add_argument("--out", default=None, help="optional output CSV path (default stdout)")
    p.set_defaults(func=_cmd_hysteresis)

    p = sub.add_parser("bands", help="single-depth band/Hubbard report (JSON to stdout)")
    p.add_argument("--s", type=float, required=True, help="lattice depth in recoil units")
    p.add_argument("--g", type=float, default=None, help="contact coupling in E_re/k units")
    p.set_defaults(func=_cmd_bands)

    p = sub.add_parser("phase-boundary", help="mean-field Mott lobe boundary (CSV to stdout)")
    p.add_argument("--n", type=int, required=True, help="lobe filling")
    p.add_argument("--points", type=int, default=256, help="number of boundary samples")
    p.set_defaults(func=_cmd_phase_boundary)

    p = sub.add_parser("overlay", help="phase-labelled bistability overlay (figure-3 style)")
    p.add_argument("--config", required=True)
    p.add_argument("--out", default=None, help="output CSV path (default fig3.csv)")
    p.set_defaults(func=_cmd_overlay)

    p = sub.add_parser("timescales", help="decay rate, tunneling time, weak-coupling check (JSON)")
    p.add_argument("--config", required=True)
    p.add_argument("--branch", choices=("upper", "lower"), required=True)
    p.set_defaults(func=_cmd_timescales)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except NumericalError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
