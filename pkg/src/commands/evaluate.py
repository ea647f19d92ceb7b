"""
Evaluation commands: `eval` (one point) and `curve` (a grid as CSV).
"""

import argparse
import logging
import sys
from pathlib import Path

import numpy as np

from src.errors import DomainError
from src.experiments import write_curve_csv, write_curve_rows
from src.operators import alpha_baskakov, error_curve, evaluate_operator

from .common import (
    add_eval_arguments,
    add_function_argument,
    add_params_arguments,
    emit,
    function_from,
    options_from,
    params_from,
)

logger = logging.getLogger(__name__)


def run_eval(args: argparse.Namespace) -> int:
    params = params_from(args)
    f = function_from(args)
    opts = options_from(args)

    if args.variant == "pointwise":
        f_val = float(f.value(args.x))
        value = alpha_baskakov(params, f, args.x, opts)
        emit({"variant": "pointwise", "x": args.x, "f_val": f_val, "value": value, "abs_err": abs(f_val - value)})
    else:
        result = evaluate_operator(params, f, args.x, opts)
        emit({"variant": "durrmeyer", **result.model_dump(mode="json")})
    return 0


def run_curve(args: argparse.Namespace) -> int:
    params = params_from(args)
    if args.points < 2:
        raise DomainError(f"--points must be at least 2, got {args.points}")
    f = function_from(args)
    grid = np.linspace(args.lo, args.hi, args.points)
    table = error_curve(params, f, grid, options_from(args))

    if args.out is None:
        write_curve_rows(table, sys.stdout)
    else:
        args.out.parent.mkdir(parents=True, exist_ok=True)
        path = write_curve_csv(table, args.out)
        logger.info("Wrote %s (max error %.6g at x=%g)", path, table.max_err, table.argmax_x)
    return 0


def register(subparsers: argparse._SubParsersAction) -> None:
    parser = subparsers.add_parser("eval", help="evaluate the operator at one point")
    add_function_argument(parser)
    add_params_arguments(parser)
    parser.add_argument("--x", type=float, required=True, help="evaluation point x >= 0")
    parser.add_argument(
        "--variant",
        choices=("durrmeyer", "pointwise"),
        default="durrmeyer",
        help="integral (Durrmeyer) operator or point-evaluation operator",
    )
    add_eval_arguments(parser)
    parser.set_defaults(handler=run_eval)

    parser = subparsers.add_parser("curve", help="error curve on a uniform grid as CSV")
    add_function_argument(parser)
    add_params_arguments(parser)
    parser.add_argument("--lo", type=float, default=0.0)
    parser.add_argument("--hi", type=float, default=3.0)
    parser.add_argument("--points", type=int, default=61)
    parser.add_argument("--out", type=Path, default=None, help="CSV file (default: stdout)")
    add_eval_arguments(parser)
    parser.set_defaults(handler=run_curve)
