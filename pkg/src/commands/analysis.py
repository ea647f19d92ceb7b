"""
Analysis commands: `voronovskaja` and `bounds`.
"""

import argparse

from src.analysis import (
    bound_c2_report,
    bound_interval,
    bound_lipschitz,
    bound_modulus,
    kfunctional_quantities,
    voronovskaja_report,
)

from .common import (
    add_eval_arguments,
    add_function_argument,
    add_params_arguments,
    emit,
    function_from,
    int_list,
    options_from,
    params_from,
)


def run_voronovskaja(args: argparse.Namespace) -> int:
    report = voronovskaja_report(
        args.alpha, args.rho, function_from(args), args.x, args.n_list, options_from(args)
    )
    emit(report)
    return 0


def run_bounds(args: argparse.Namespace) -> int:
    params = params_from(args)
    f = function_from(args)
    opts = options_from(args)
    iv = bound_interval(params, args.x)

    result = {"function": f.label, "x": args.x, "interval": iv.model_dump(mode="json")}
    # The modulus, C^2 and K-functional estimates need a bounded target
    if f.bounded:
        result["modulus"] = bound_modulus(params, f, args.x, iv, opts).model_dump(mode="json")
        result["c2"] = bound_c2_report(params, f, args.x, iv, opts).model_dump(mode="json")
        result["kfunctional"] = kfunctional_quantities(params, f, args.x, iv, opts).model_dump(mode="json")
    if args.lip_m is not None:
        result["lipschitz"] = bound_lipschitz(
            params, args.lip_m, args.lip_gamma, f, args.x, opts
        ).model_dump(mode="json")
    emit(result)
    return 0


def register(subparsers: argparse._SubParsersAction) -> None:
    parser = subparsers.add_parser("voronovskaja", help="scaled errors (n rho - 1)(A f - f) along n")
    add_function_argument(parser)
    add_params_arguments(parser, with_n=False)
    parser.add_argument("--x", type=float, required=True)
    parser.add_argument("--n-list", type=int_list, default=[50, 100, 200, 400, 800])
    add_eval_arguments(parser)
    parser.set_defaults(handler=run_voronovskaja)

    parser = subparsers.add_parser("bounds", help="check the error bounds at one point")
    add_function_argument(parser)
    add_params_arguments(parser)
    parser.add_argument("--x", type=float, required=True)
    parser.add_argument("--lip-m", type=float, default=None, help="Lipschitz constant M")
    parser.add_argument("--lip-gamma", type=float, default=1.0, help="Lipschitz exponent gamma")
    add_eval_arguments(parser)
    parser.set_defaults(handler=run_bounds)
