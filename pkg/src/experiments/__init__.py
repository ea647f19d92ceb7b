from .runner import (
    CSV_HEADER,
    PRESETS,
    SUMMARY_FILE,
    curve_filename,
    preset_spec,
    run_experiment,
    write_curve_csv,
    write_curve_rows,
    write_summary,
)

__all__ = [
    "CSV_HEADER",
    "PRESETS",
    "SUMMARY_FILE",
    "curve_filename",
    "preset_spec",
    "run_experiment",
    "write_curve_csv",
    "write_curve_rows",
    "write_summary",
]
