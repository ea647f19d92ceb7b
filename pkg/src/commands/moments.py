"""
Moment commands: `moments` (closed form vs oracle) and `fourth-moment`.
"""

import argparse

from src.moments import fourth_moment_study, moment_report

from .common import (
    add_eval_arguments,
    add_params_arguments,
    emit,
    int_list,
    options_from,
    params_from,
)


def run_moments(args: argparse.Namespace) -> int:
    report = moment_report(
        params_from(args),
        args.x,
        args.order,
        kind=args.kind,
        opts=options_from(args),
        strict=args.strict,
    )
    emit(report)
    return 0


def run_fourth_moment(args: argparse.Namespace) -> int:
    emit(fourth_moment_study(args.alpha, args.rho, args.x, args.n_list, options_from(args)))
    return 0


def register(subparsers: argparse._SubParsersAction) -> None:
    parser = subparsers.add_parser("moments", help="closed-form moment against the series oracle")
    add_params_arguments(parser)
    parser.add_argument("--x", type=float, required=True)
    parser.add_argument("--order", type=int, required=True, help="0-2 for raw, 1, 2 or 4 for central")
    parser.add_argument("--kind", choices=("raw", "central"), default="central")
    parser.add_argument("--strict", action="store_true", help="fail (exit 5) on a formula mismatch")
    add_eval_arguments(parser)
    parser.set_defaults(handler=run_moments)

    parser = subparsers.add_parser("fourth-moment", help="n^2-scaled fourth central moment along n")
    add_params_arguments(parser, with_n=False)
    parser.add_argument("--x", type=float, required=True)
    parser.add_argument("--n-list", type=int_list, default=[500, 1000, 2000])
    add_eval_arguments(parser)
    parser.set_defaults(handler=run_fourth_moment)
