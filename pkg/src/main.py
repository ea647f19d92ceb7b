"""
alpha-Baskakov-Durrmeyer toolkit - command-line entry point.

    python -m src.main eval --fn sqrt --n 20 --alpha 0.1 --rho 0.5 --x 1
    python -m src.main figures fig34 --out results/fig34

Results go to stdout (JSON or CSV), logs to stderr. Failures print one line
`abd: error code=<n> kind=<ClassName>: <reason>` and exit with that code.
"""

import argparse
import logging
import sys
from typing import Optional, Sequence

from pydantic import ValidationError

from src.commands import COMMAND_MODULES
from src.config import settings
from src.errors import ApproximationError, DomainError
from src.run_logging import run_log

logger = logging.getLogger(__name__)

USAGE_EXIT = 2


def configure_logging() -> None:
    logging.basicConfig(
        level=logging.DEBUG if settings.debug else logging.INFO,
        format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
        stream=sys.stderr,
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="abd",
        description="Evaluate and analyse alpha-Baskakov-Durrmeyer operators.",
    )
    parser.add_argument("--version", action="version", version=f"{settings.app_name} 1.0.0")
    subparsers = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")
    for module in COMMAND_MODULES:
        module.register(subparsers)
    return parser


def _report(code: int, kind: str, reason: str) -> int:
    print(f"abd: error code={code} kind={kind}: {reason}", file=sys.stderr)
    return code


def _validation_reason(e: ValidationError) -> str:
    return "; ".join(
        f"{'.'.join(str(part) for part in err['loc']) or 'input'}: {err['msg']}"
        for err in e.errors()
    )


def cli_dispatch(argv: Optional[Sequence[str]] = None) -> int:
    """Parse argv, run the command, and map failures to exit codes."""
    configure_logging()
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        code = e.code if isinstance(e.code, int) else USAGE_EXIT
        if code != 0:
            return _report(code, "UsageError", "invalid command line")
        return 0

    try:
        with run_log(args.command):
            return args.handler(args)
    except ApproximationError as e:
        return _report(e.exit_code, type(e).__name__, str(e))
    except ValidationError as e:
        return _report(DomainError.exit_code, "ValidationError", _validation_reason(e))
    except OSError as e:
        return _report(1, type(e).__name__, str(e))


def main() -> None:
    sys.exit(cli_dispatch())


if __name__ == "__main__":
    main()
