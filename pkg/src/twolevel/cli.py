"""Command-line interface.

Exit codes: 0 success, 1 usage error, 2 scenario parse error, 3 validation failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import __version__
from .config import ParseError, parse_config
from .ep import locate_eps
from .export import emit_csv, emit_ep_json, emit_json
from .scenario import PRESET_DESCRIPTIONS, PRESET_NAMES, SweepScenario, preset
from .svgplot import QUANTITIES, emit_svg
from .sweep import evaluate_point, run_sweep
from .validate import DEFAULT_SAMPLES, DEFAULT_SEED, run_validate

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_PARSE = 2
EXIT_VALIDATION = 3

FORMATS = ("csv", "json", "svg")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _formats(text: str) -> list[str]:
    items = [t.strip() for t in text.split(",") if t.strip()]
    bad = [t for t in items if t not in FORMATS]
    if bad or not items:
        raise argparse.ArgumentTypeError(f"formats must be a comma list drawn from {', '.join(FORMATS)}")
    return list(dict.fromkeys(items))


def _add_scenario_args(p: argparse.ArgumentParser) -> None:
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--preset", choices=PRESET_NAMES, help="figure preset")
    src.add_argument("--config", type=Path, help="scenario JSON file")
    p.add_argument("--a-min", type=float)
    p.add_argument("--a-max", type=float)
    p.add_argument("--steps", type=int, help="number of grid points")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="twolevel", description="Two-level non-Hermitian spectra and exceptional points.")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("sweep", help="evaluate a scenario on its grid")
    _add_scenario_args(p)
    p.add_argument("--out", type=Path, default=Path("."), help="output directory")
    p.add_argument("--format", type=_formats, default=["csv"], help="comma list of csv,json,svg")
    p.add_argument("--quantity", choices=QUANTITIES, help="SVG quantity (default: all)")

    p = sub.add_parser("ep-find", help="locate exceptional points")
    _add_scenario_args(p)
    p.add_argument("--out", type=Path, help="write <name>_eps.json here instead of stdout")

    p = sub.add_parser("point", help="all observables at one parameter value")
    _add_scenario_args(p)
    p.add_argument("--a", type=float, required=True, help="parameter value")

    p = sub.add_parser("validate", help="run the built-in invariant suite")
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--samples", type=int, default=DEFAULT_SAMPLES)

    sub.add_parser("presets", help="list the figure presets")
    return parser


def load_scenario(args) -> SweepScenario:
    if args.preset is not None:
        scenario = preset(args.preset)
    else:
        try:
            text = args.config.read_text(encoding="utf-8")
        except OSError as exc:
            raise UsageError(f"cannot read {args.config}: {exc.strerror}") from None
        scenario = parse_config(text)
    try:
        return scenario.with_range(args.a_min, args.a_max, args.steps)
    except ValueError as exc:
        raise ParseError(str(exc)) from None


def _write(path: Path, text: str) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text, encoding="utf-8", newline="")


def cmd_sweep(args) -> int:
    scenario = load_scenario(args)
    records = run_sweep(scenario)
    out: Path = args.out
    written = []
    if "csv" in args.format:
        written.append(out / f"{scenario.name}.csv")
        _write(written[-1], emit_csv(records))
    if "json" in args.format:
        written.append(out / f"{scenario.name}.json")
        _write(written[-1], emit_json(records, scenario))
    if "svg" in args.format:
        for q in [args.quantity] if args.quantity else QUANTITIES:
            written.append(out / f"{scenario.name}_{q}.svg")
            _write(written[-1], emit_svg(records, q, scenario))
    for path in written:
        print(path)
    return EXIT_OK


def cmd_ep_find(args) -> int:
    scenario = load_scenario(args)
    text = emit_ep_json(locate_eps(scenario), scenario)
    if args.out is None:
        sys.stdout.write(text)
    else:
        path = args.out / f"{scenario.name}_eps.json"
        _write(path, text)
        print(path)
    return EXIT_OK


def cmd_point(args) -> int:
    scenario = load_scenario(args)
    rec = evaluate_point(scenario, args.a)
    sys.stdout.write(json.dumps(rec.as_dict(), indent=1, allow_nan=False) + "\n")
    return EXIT_OK


def cmd_validate(args) -> int:
    report, passed = run_validate(seed=args.seed, samples=args.samples)
    sys.stdout.write(report)
    return EXIT_OK if passed else EXIT_VALIDATION


def cmd_presets(args) -> int:
    for name in PRESET_NAMES:
        s = preset(name)
        print(f"{name}  {PRESET_DESCRIPTIONS[name]}  (a in [{s.a_min:g}, {s.a_max:g}], {s.n_steps} steps)")
    return EXIT_OK


_COMMANDS = {
    "sweep": cmd_sweep,
    "ep-find": cmd_ep_find,
    "point": cmd_point,
    "validate": cmd_validate,
    "presets": cmd_presets,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except ParseError as exc:
        print(f"twolevel: parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except UsageError as exc:
        print(f"twolevel: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
