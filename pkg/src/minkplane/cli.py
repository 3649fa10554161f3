"""Command-line entry point.

Exit codes: 0 success, 1 invalid configuration, 2 numerical failure (a
construction that could not be completed, or a check suite that did not pass).
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .figure import FigureSpec, emit_figure
from .numerics import ConstructionError
from .plane import Plane
from .probes import PROBE_IDS, ProbeConfig, battery_csv, probe, run_battery
from .scenarios import ScenarioKind, build_scenario, iso_seed
from .systems import OrthoScenario
from .verify import SUITES, run_suite

EXIT_OK, EXIT_CONFIG, EXIT_NUMERIC = 0, 1, 2


class ConfigError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise ConfigError(message)


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, allow_nan=False) + "\n"


def _write(text: str, path: str | None):
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="minkplane", description="Geometry of normed planes: orthogonality, bisectors, probes.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp, samples=True):
        sp.add_argument("--norm", required=True, help="lp:<p>, lp:inf or polygon:x,y;x,y;...")
        if samples:
            sp.add_argument("--samples", type=int, default=500)
            sp.add_argument("--seed", type=int, default=0)
            sp.add_argument("--tol", type=float, default=1e-9)
            sp.add_argument("--no-timing", action="store_true", help="write runtime_ms as null")

    sp = sub.add_parser("probe", help="run one probe")
    common(sp)
    sp.add_argument("--id", required=True, choices=PROBE_IDS)
    sp.add_argument("--out")

    sp = sub.add_parser("battery", help="run all probes")
    common(sp)
    sp.add_argument("--out", help="JSON list of reports")
    sp.add_argument("--csv", help="one row per probe")

    sp = sub.add_parser("construct", help="build one scenario")
    common(sp, samples=False)
    sp.add_argument("--kind", required=True, choices=[k.value for k in ScenarioKind])
    sp.add_argument("--theta", type=float, required=True)
    sp.add_argument("--r", type=float, required=True)
    sp.add_argument("--out")

    sp = sub.add_parser("figure", help="draw a scenario as SVG")
    sp.add_argument("--scenario", required=True)
    sp.add_argument("--out")
    sp.add_argument("--density", type=int, default=720)
    sp.add_argument("--no-labels", action="store_true")

    sp = sub.add_parser("check", help="run a self-check suite")
    common(sp, samples=False)
    sp.add_argument("--suite", required=True, choices=SUITES)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--out")
    return p


def _dispatch(args) -> int:
    if args.command == "figure":
        try:
            data = json.loads(Path(args.scenario).read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigError(f"cannot read scenario: {exc}") from exc
        spec = FigureSpec(OrthoScenario.from_dict(data), density=args.density, labels=not args.no_labels)
        _write(emit_figure(spec), args.out)
        return EXIT_OK

    plane = Plane(args.norm)
    if args.command == "probe":
        cfg = ProbeConfig(str(plane.spec), args.id, args.samples, args.seed, args.tol)
        _write(_dump(probe(plane, cfg, timing=not args.no_timing).to_dict()), args.out)
    elif args.command == "battery":
        ProbeConfig(str(plane.spec), PROBE_IDS[0], args.samples, args.seed, args.tol)
        reports = run_battery(plane, args.samples, args.seed, args.tol, timing=not args.no_timing)
        _write(_dump([r.to_dict() for r in reports]), args.out)
        if args.csv:
            Path(args.csv).write_text(battery_csv(reports))
    elif args.command == "construct":
        sc = build_scenario(plane, iso_seed(plane, args.theta, args.r), args.kind)
        _write(_dump(sc.to_dict()), args.out)
    elif args.command == "check":
        result = run_suite(args.suite, plane, seed=args.seed)
        _write(_dump(result), args.out)
        if not result["passed"]:
            print(f"check {args.suite} failed", file=sys.stderr)
            return EXIT_NUMERIC
    return EXIT_OK


def run_cli(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return _dispatch(args)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except ConstructionError as exc:
        extra = ", ".join(f"{k}={v!r}" for k, v in exc.values.items())
        print(f"error: {exc}" + (f" ({extra})" if extra else ""), file=sys.stderr)
        return EXIT_NUMERIC
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


def main():
    sys.exit(run_cli())
