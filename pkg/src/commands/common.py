"""Argument groups and output helpers shared by the CLI commands."""

import argparse
import json
from typing import Any, Optional

from pydantic import BaseModel

from src.models import EvalOptions, FunctionSpec, OperatorParams


def int_list(text: str) -> list[int]:
    try:
        return [int(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def add_params_arguments(parser: argparse.ArgumentParser, with_n: bool = True) -> None:
    group = parser.add_argument_group("operator")
    if with_n:
        group.add_argument("--n", type=int, required=True, help="operator index n >= 1")
    group.add_argument("--alpha", type=float, required=True, help="weight shape, 0 <= alpha <= 1")
    group.add_argument("--rho", type=float, required=True, help="kernel parameter rho > 0")


def add_function_argument(parser: argparse.ArgumentParser, default: Optional[str] = None) -> None:
    parser.add_argument(
        "--fn",
        default=default,
        required=default is None,
        help="target: sqrt, expneg, ratio, e<i> or poly:c0,c1,...",
    )


def add_eval_arguments(parser: argparse.ArgumentParser) -> None:
    group = parser.add_argument_group("numerics")
    group.add_argument("--series-eps", type=float, default=None, help="series truncation tolerance")
    group.add_argument("--quad-rel-tol", type=float, default=None, help="quadrature relative tolerance")
    group.add_argument("--k-max", type=int, default=None, help="hard cap on series terms")


def params_from(args: argparse.Namespace) -> OperatorParams:
    return OperatorParams(n=args.n, alpha=args.alpha, rho=args.rho)


def function_from(args: argparse.Namespace) -> FunctionSpec:
    return FunctionSpec.parse(args.fn)


def options_from(args: argparse.Namespace) -> EvalOptions:
    overrides = {
        "series_eps": args.series_eps,
        "quad_rel_tol": args.quad_rel_tol,
        "k_max": args.k_max,
    }
    return EvalOptions(**{k: v for k, v in overrides.items() if v is not None})


def emit(payload: Any) -> None:
    """Print a model or plain object as indented JSON on stdout."""
    if isinstance(payload, BaseModel):
        payload = payload.model_dump(mode="json")
    print(json.dumps(payload, indent=2))
