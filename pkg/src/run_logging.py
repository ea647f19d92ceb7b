import logging
import time
from contextlib import contextmanager
from pathlib import Path
from typing import Iterator, Optional

from pydantic import ValidationError

from src.config import settings
from src.errors import ApproximationError

_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"


@contextmanager
def run_log(run_id: str, log_dir: Optional[Path] = None) -> Iterator[Optional[Path]]:
    """
    Capture all log records of one run into its own file.

    Nothing is written unless a log directory is given or configured
    through ABD_LOG_DIR. Yields the log file path (or None).
    """
    directory = log_dir if log_dir is not None else settings.log_dir
    if directory is None:
        yield None
        return

    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    timestamp = time.strftime("%Y%m%d_%H%M%S")
    log_filepath = directory / f"{timestamp}_{run_id}.log"

    file_handler = logging.FileHandler(log_filepath, encoding="utf-8")
    file_handler.setLevel(logging.DEBUG)
    file_handler.setFormatter(logging.Formatter(_FORMAT))

    root_logger = logging.getLogger()
    root_logger.addHandler(file_handler)
    logging.info("Starting run %s", run_id)
    try:
        yield log_filepath
    except (ApproximationError, ValidationError) as e:
        # expected failures get one line; the CLI reports them itself
        logging.error("Run %s failed: %s", run_id, e)
        raise
    except Exception as e:
        logging.exception("Run %s failed: %s", run_id, e)
        raise
    finally:
        logging.info("Finished run %s", run_id)
        root_logger.removeHandler(file_handler)
        file_handler.close()
