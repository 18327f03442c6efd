"""Command-line entry point: ``thzirs <command> [options]``.

Exit status is 0 on success, 1 when ``verify`` finds a failing check and 2 on
configuration errors.
"""

from __future__ import annotations

import argparse
import io
import json
import sys

from . import experiments as ex
from .scenario import ConfigError, build_scenario
from .verify import DEFAULT_SEED, run_verify

EXIT_OK, EXIT_VERIFY_FAILED, EXIT_CONFIG = 0, 1, 2

# Default sweeps as start:stop:step
DEFAULT_SWEEPS = {
    "scattered-field": "-90:90:0.25",
    "gain-vs-distance": "0.5:10:0.1",
    "gain-vs-elements": "1:100:1",
    "ee-sweep": "1:20:0.5",
    "nstar-sweep": "1:20:0.5",
}


def format_value(v) -> str:
    if isinstance(v, (bool, int)) and not isinstance(v, float):
        return str(int(v))
    return f"{float(v):.12g}"


def render_csv(table: ex.Table) -> str:
    buf = io.StringIO()
    buf.write(",".join(table.columns) + "\n")
    for row in table.rows:
        buf.write(",".join(format_value(v) for v in row) + "\n")
    return buf.getvalue()


def render_json(table: ex.Table) -> str:
    doc = {"columns": table.columns, "rows": [dict(zip(table.columns, r)) for r in table.rows]}
    if table.summary:
        doc["summary"] = table.summary
    return json.dumps(doc, indent=2) + "\n"


def parse_sweep(text: str):
    try:
        start, stop, step = (float(t) for t in text.split(":"))
        return ex.sweep_values(start, stop, step)
    except ValueError as exc:
        raise ConfigError(f"bad sweep {text!r}: expected START:STOP:STEP") from exc


def parse_grid(text: str) -> tuple[int, int]:
    try:
        n_x, n_y = (int(t) for t in text.lower().split("x"))
    except ValueError as exc:
        raise ConfigError(f"bad grid {text!r}: expected NXxNY") from exc
    return n_x, n_y


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", metavar="PATH", help="TOML scenario file")
    common.add_argument("--out", metavar="PATH", help="write output here instead of stdout")
    common.add_argument("--format", choices=("csv", "json"), default="csv")
    common.add_argument("--lambda-nominal", type=float, metavar="METERS", help="override wavelength c/f")
    common.add_argument("--pl-mode", choices=("constant", "per-element"))
    common.add_argument("--seed", type=int, default=DEFAULT_SEED)

    parser = argparse.ArgumentParser(prog="thzirs", description="THz IRS channel / gain / energy-efficiency tool")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("region-info", parents=[common], help="physical size and Fresnel band")
    p.add_argument("--grid", action="append", metavar="NXxNY", help="repeatable; default: 80x80 and 100x100")
    for name, help_ in [
        ("scattered-field", "squared scattered field vs. observation angle (deg)"),
        ("path-loss-map", "per-element path loss in dB"),
        ("gain-vs-distance", "normalized gain vs. Tx height z (m)"),
        ("gain-vs-elements", "normalized gain vs. surface side length"),
        ("ee-sweep", "rate and energy efficiency vs. Rx position"),
        ("nstar-sweep", "crossover element count vs. Rx position"),
    ]:
        p = sub.add_parser(name, parents=[common], help=help_)
        if name in DEFAULT_SWEEPS:
            p.add_argument("--sweep", default=DEFAULT_SWEEPS[name], metavar="START:STOP:STEP")
        if name == "nstar-sweep":
            p.add_argument("--placement", choices=[m.value for m in ex.PlacementMode], default="midpoint")
    sub.add_parser("verify", parents=[common], help="run the built-in oracle checks")
    return parser


def _run(args) -> tuple[str, int]:
    scenario = build_scenario(args.command, args.config, args.lambda_nominal, args.pl_mode)
    cmd = args.command
    if cmd == "verify":
        report = run_verify(scenario, args.seed)
        return json.dumps(report, indent=2) + "\n", EXIT_OK if report["passed"] else EXIT_VERIFY_FAILED

    if cmd == "region-info":
        if args.grid:
            grids = [parse_grid(g) for g in args.grid]
        else:
            grids = None if args.config else ex.REGION_TABLE_GRIDS
        table = ex.region_info(scenario, grids)
    elif cmd == "path-loss-map":
        table = ex.path_loss_map(scenario)
    else:
        values = parse_sweep(args.sweep)
        if cmd == "scattered-field":
            table = ex.scattered_field(scenario, values)
        elif cmd == "gain-vs-distance":
            table = ex.gain_vs_distance(scenario, values)
        elif cmd == "gain-vs-elements":
            table = ex.gain_vs_elements(scenario, [int(round(v)) for v in values])
        elif cmd == "ee-sweep":
            table = ex.ee_sweep(scenario, values)
        else:
            table = ex.nstar_sweep(scenario, values, ex.PlacementMode(args.placement))

    text = render_json(table) if args.format == "json" else render_csv(table)
    if table.summary and args.format == "csv":
        for key, value in table.summary.items():
            print(f"# {key} = {format_value(value)}", file=sys.stderr)
    return text, EXIT_OK


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        text, code = _run(args)
    except ConfigError as exc:
        print(f"thzirs: configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except ValueError as exc:
        print(f"thzirs: invalid scenario: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    if args.out:
        with open(args.out, "w", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
