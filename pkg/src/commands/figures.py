"""
`figures` command: run one of the rho-comparison presets.
"""

import argparse
from pathlib import Path

from src.experiments import PRESETS, preset_spec, run_experiment

from .common import add_eval_arguments, emit, options_from


def run_figures(args: argparse.Namespace) -> int:
    x_range = (args.lo, args.hi, args.points)
    spec = preset_spec(args.preset, output_path=args.out, x_range=x_range)
    summary = run_experiment(spec, options_from(args))
    emit(summary)
    return 0


def register(subparsers: argparse._SubParsersAction) -> None:
    parser = subparsers.add_parser("figures", help="reproduce a rho-comparison experiment")
    parser.add_argument("preset", choices=sorted(PRESETS))
    parser.add_argument("--out", type=Path, default=None, help="directory for CSV and summary.json")
    parser.add_argument("--lo", type=float, default=0.0)
    parser.add_argument("--hi", type=float, default=3.0)
    parser.add_argument("--points", type=int, default=61)
    add_eval_arguments(parser)
    parser.set_defaults(handler=run_figures)
