"""
Figure-style experiments: error curves of one target for several rho.

Each run writes one CSV per rho (header rho,x,f,approx,abs_err, 17
significant digits) and a summary.json naming the rho with the smallest
maximum grid error. Output depends only on the inputs, so reruns are
byte-identical.
"""

import csv
import json
import logging
from pathlib import Path
from typing import Optional, TextIO

from src.errors import DomainError
from src.models import (
    CurveTable,
    EvalOptions,
    ExperimentSpec,
    ExperimentSummary,
    FunctionSpec,
    RhoSummary,
)
from src.operators import error_curve

logger = logging.getLogger(__name__)

CSV_HEADER = ("rho", "x", "f", "approx", "abs_err")

SUMMARY_FILE = "summary.json"

DEFAULT_X_RANGE = (0.0, 3.0, 61)

# name -> (function, n, alpha, rho values)
PRESETS: dict[str, tuple[str, int, float, tuple[float, ...]]] = {
    "fig12": ("sqrt", 20, 0.1, (1.0, 5.0, 0.5)),
    "fig34": ("sqrt", 20, 1.0, (1.0, 5.0, 0.5)),
    "fig56": ("poly:2,5,1", 20, 0.7, (1.0, 5.0, 0.3)),
}


def preset_spec(
    name: str,
    output_path: Optional[Path] = None,
    x_range: Optional[tuple[float, float, int]] = None,
) -> ExperimentSpec:
    try:
        function, n, alpha, rhos = PRESETS[name]
    except KeyError:
        raise DomainError(f"unknown preset {name!r}; choose from {', '.join(PRESETS)}") from None
    return ExperimentSpec(
        function=FunctionSpec.parse(function),
        n=n,
        alpha=alpha,
        rho_list=rhos,
        x_range=x_range or DEFAULT_X_RANGE,
        output_path=output_path,
    )


def _fmt(value: float) -> str:
    return f"{value:.17g}"


def curve_filename(rho: float) -> str:
    return f"curve_rho_{rho:g}.csv"


def write_curve_rows(table: CurveTable, stream: TextIO) -> None:
    rho = _fmt(table.params.rho)
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for row in table.rows:
        writer.writerow([rho, _fmt(row.x), _fmt(row.f_val), _fmt(row.approx), _fmt(row.abs_err)])


def write_curve_csv(table: CurveTable, path: Path) -> Path:
    with path.open("w", newline="", encoding="utf-8") as f:
        write_curve_rows(table, f)
    return path


def write_summary(summary: ExperimentSummary, path: Path) -> Path:
    payload = summary.model_dump(mode="json")
    path.write_text(json.dumps(payload, indent=2) + "\n", encoding="utf-8")
    return path


def _settings_block(spec: ExperimentSpec, opts: EvalOptions) -> dict:
    lo, hi, points = spec.x_range
    return {
        "function": spec.function.label,
        "n": spec.n,
        "alpha": spec.alpha,
        "rho_list": list(spec.rho_list),
        "x_range": {"lo": lo, "hi": hi, "points": points},
        "series_eps": opts.series_eps,
        "quad_rel_tol": opts.quad_rel_tol,
        "k_max": opts.k_max,
    }


def run_experiment(
    spec: ExperimentSpec,
    opts: Optional[EvalOptions] = None,
    threads: Optional[int] = None,
) -> ExperimentSummary:
    """
    Evaluate the error curve for every rho on the shared grid.

    Ties in the maximum error go to the rho listed first. Files are written
    only when spec.output_path is set; the summary is written last.
    """
    opts = opts or EvalOptions()
    grid = spec.grid()
    logger.info(
        "Running experiment f=%s n=%d alpha=%g rho=%s on %d points",
        spec.function.label, spec.n, spec.alpha,
        ",".join(f"{r:g}" for r in spec.rho_list), len(grid),
    )

    tables = [
        error_curve(spec.params_for(rho), spec.function, grid, opts, threads)
        for rho in spec.rho_list
    ]
    per_rho = [
        RhoSummary(rho=table.params.rho, max_err=table.max_err, argmax_x=table.argmax_x)
        for table in tables
    ]
    best = min(range(len(per_rho)), key=lambda i: (per_rho[i].max_err, i))

    summary = ExperimentSummary(
        settings=_settings_block(spec, opts),
        per_rho=per_rho,
        argmin_rho=per_rho[best].rho,
        tables=tables,
    )
    for entry in per_rho:
        logger.info("rho=%g: max error %.6g at x=%g", entry.rho, entry.max_err, entry.argmax_x)

    if spec.output_path is not None:
        out_dir = Path(spec.output_path)
        out_dir.mkdir(parents=True, exist_ok=True)
        for table in tables:
            path = write_curve_csv(table, out_dir / curve_filename(table.params.rho))
            logger.info("Wrote %s", path)
        path = write_summary(summary, out_dir / SUMMARY_FILE)
        logger.info("Wrote %s", path)

    return summary
