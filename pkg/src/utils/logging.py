"""
Logging utilities for FolnerLab.

Logs go to stdout and an optional file; command results are printed
separately by the CLI and never pass through the logger.
"""

import logging
import sys
from datetime import datetime
from pathlib import Path
from typing import Optional

LOG_FORMAT = '%(asctime)s - %(name)s - %(levelname)s - %(message)s'


def setup_logging(
    level: str = "INFO",
    log_file: Optional[Path] = None,
    log_to_console: bool = True,
    stream=None,
) -> logging.Logger:
    """
    Setup logging configuration for FolnerLab.

    Args:
        level: Logging level (DEBUG, INFO, WARNING, ERROR, CRITICAL)
        log_file: Optional path to log file
        log_to_console: Whether to log to the console
        stream: Console stream (defaults to stderr when reports go to stdout
            as JSON, stdout otherwise; chosen by the caller)

    Returns:
        Configured root logger
    """
    numeric_level = getattr(logging, level.upper(), logging.INFO)

    formatter = logging.Formatter(LOG_FORMAT, datefmt='%Y-%m-%d %H:%M:%S')

    root_logger = logging.getLogger()
    root_logger.setLevel(numeric_level)
    root_logger.handlers.clear()

    if log_to_console:
        console_handler = logging.StreamHandler(stream or sys.stdout)
        console_handler.setLevel(numeric_level)
        console_handler.setFormatter(formatter)
        root_logger.addHandler(console_handler)

    if log_file:
        log_file = Path(log_file)
        log_file.parent.mkdir(parents=True, exist_ok=True)
        file_handler = logging.FileHandler(log_file)
        file_handler.setLevel(numeric_level)
        file_handler.setFormatter(formatter)
        root_logger.addHandler(file_handler)

    return root_logger


def log_section(logger: logging.Logger, section_name: str, start_time: datetime) -> None:
    """
    Log an experiment phase with the elapsed time since `start_time`.

    Args:
        logger: Logger instance
        section_name: Name of the phase
        start_time: Start time of the whole run
    """
    elapsed = datetime.now() - start_time
    logger.info(f"[{elapsed}] {section_name}")


class ProgressLogger:
    """
    Progress ticks for exhaustive scans.

    Scans shorter than `min_total` items log at DEBUG only, so small group
    enumerations stay quiet at the default level.
    """

    def __init__(self, logger: logging.Logger, total: int, operation: str, min_total: int = 1000):
        """
        Initialize progress logger.

        Args:
            logger: Logger instance
            total: Total number of items
            operation: Description of the scan
            min_total: Totals below this log at DEBUG level
        """
        self.logger = logger
        self.total = max(0, int(total))
        self.operation = operation
        self.current = 0
        self.start_time = datetime.now()
        self.level = logging.INFO if self.total >= min_total else logging.DEBUG
        self._step = max(1, self.total // 10)

    def update(self, count: int = 1) -> None:
        """Advance the counter, logging every 10%."""
        before = self.current
        self.current += count
        if self.total == 0:
            return
        if self.current // self._step != before // self._step or self.current == self.total:
            progress_pct = min(100.0, (self.current / self.total) * 100)
            elapsed = datetime.now() - self.start_time
            self.logger.log(
                self.level,
                f"{self.operation}: {self.current}/{self.total} ({progress_pct:.0f}%) "
                f"[Elapsed: {elapsed}]",
            )

    def finish(self) -> None:
        """Log completion."""
        elapsed = datetime.now() - self.start_time
        self.logger.log(self.level, f"{self.operation} completed in {elapsed}")
