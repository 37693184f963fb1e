"""``abicap`` command line.

    abicap list-scenarios
    abicap run icap_baseline --seed 7 --out results/ --plot
    abicap run my_experiment.ini --set cl_interactive=0.75

Exit codes: 0 success, 1 runtime failure, 2 usage or configuration error.
Outputs are named ``<id>_timeseries.csv`` (plus ``<id>_mastery.csv`` when
nodes are tracked and ``<id>_timeseries.svg`` with ``--plot``), where ``<id>``
is the scenario id or the config file stem. The default output directory is
``$ABICAP_OUTPUT_DIR`` or ``results``; the default seed is 42.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path
from typing import Optional, Sequence

from .config import ConfigError, apply_overrides, load_config_file
from .engine import run_experiment
from .report import render_line_chart, timeseries_rows, write_mastery_csv, write_timeseries_csv
from .scenarios import SCENARIOS, get_scenario

DEFAULT_SEED = 42
OUTPUT_ENV = "ABICAP_OUTPUT_DIR"


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="abicap", description="Agent-based simulation of procedural learning under ICAP modes."
    )
    sub = parser.add_subparsers(dest="command", required=True)

    sub.add_parser("list-scenarios", help="print the built-in scenario ids")

    run = sub.add_parser("run", help="run a scenario or config file and write reports")
    run.add_argument("target", help="scenario id or path to a config file")
    run.add_argument("--seed", type=int, default=None, help=f"master seed (default {DEFAULT_SEED})")
    run.add_argument(
        "--out",
        type=Path,
        default=None,
        help=f"output directory (default ${OUTPUT_ENV} or ./results)",
    )
    run.add_argument(
        "--set",
        dest="overrides",
        action="append",
        default=[],
        metavar="KEY=VALUE",
        help="override any parameter, e.g. cl_interactive=0.75 (repeatable)",
    )
    run.add_argument("--plot", action="store_true", help="also write an SVG chart")
    return parser


def _resolve(args: argparse.Namespace, parser: argparse.ArgumentParser):
    target = args.target
    if target in SCENARIOS:
        config = get_scenario(target, DEFAULT_SEED if args.seed is None else args.seed)
        run_id = target
    elif Path(target).is_file():
        try:
            config = load_config_file(target)
        except ConfigError as exc:
            parser.error(f"{target}: {exc}")
        if args.seed is not None:
            config = config.replace(master_seed=args.seed)
        run_id = Path(target).stem
    else:
        parser.error(
            f"argument target: {target!r} is neither a scenario nor a file; "
            f"valid scenario ids: {', '.join(SCENARIOS)}"
        )
    try:
        config = apply_overrides(config, args.overrides)
    except ConfigError as exc:
        parser.error(f"argument --set: {exc}")
    return run_id, config


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)

    if args.command == "list-scenarios":
        for scenario_id in SCENARIOS:
            print(scenario_id)
        return 0

    try:
        run_id, config = _resolve(args, parser)
    except SystemExit as exc:
        return int(exc.code or 0)

    out_dir = args.out or Path(os.environ.get(OUTPUT_ENV, "results"))
    try:
        result = run_experiment(config)
        out_dir.mkdir(parents=True, exist_ok=True)
        written = [out_dir / f"{run_id}_timeseries.csv"]
        write_timeseries_csv(result, written[0])
        if config.track_nodes:
            written.append(out_dir / f"{run_id}_mastery.csv")
            write_mastery_csv(result, written[-1])
        if args.plot:
            written.append(out_dir / f"{run_id}_timeseries.svg")
            render_line_chart(timeseries_rows(result), written[-1], title=run_id)
    except (OSError, ValueError) as exc:
        print(f"abicap: error: {exc}", file=sys.stderr)
        return 1
    for path in written:
        print(path)
    return 0


if __name__ == "__main__":
    sys.exit(main())
