"""
Logging configuration for the Dynamic Cluster Editing toolkit
"""

import functools
import logging
import logging.handlers
import sys
import time
from pathlib import Path
from typing import Optional


def _parse_size(max_size: str) -> int:
    """Turn strings like "10MB" into a byte count."""
    size_multipliers = {'KB': 1024, 'MB': 1024**2, 'GB': 1024**3, 'B': 1}
    max_size_str = max_size.upper().strip()

    for unit, multiplier in size_multipliers.items():
        if max_size_str.endswith(unit):
            try:
                return int(max_size_str[:-len(unit)]) * multiplier
            except ValueError:
                break
    return 10 * 1024**2  # Default to 10MB


def setup_logging(log_level: str = "WARNING", log_file: Optional[str] = None, max_size: str = "10MB", backup_count: int = 5):
    """Setup logging configuration for the application.

    Console output goes to stderr so that stdout only carries command results.
    """

    # Create logs directory if it doesn't exist
    if log_file:
        log_path = Path(log_file)
        log_path.parent.mkdir(parents=True, exist_ok=True)

    level = getattr(logging, str(log_level).upper(), logging.WARNING)

    # Configure root logger
    root_logger = logging.getLogger()
    root_logger.setLevel(level if not log_file else min(level, logging.DEBUG))

    # Clear existing handlers
    root_logger.handlers.clear()

    formatter = logging.Formatter(
        '%(asctime)s - %(name)s - %(levelname)s - %(message)s',
        datefmt='%Y-%m-%d %H:%M:%S'
    )

    console_handler = logging.StreamHandler(sys.stderr)
    console_handler.setLevel(level)
    console_handler.setFormatter(formatter)
    root_logger.addHandler(console_handler)

    if log_file:
        file_handler = logging.handlers.RotatingFileHandler(
            log_file,
            maxBytes=_parse_size(max_size),
            backupCount=backup_count
        )
        file_handler.setLevel(logging.DEBUG)
        file_handler.setFormatter(formatter)
        root_logger.addHandler(file_handler)

    logger = logging.getLogger(__name__)
    logger.debug(f"Logging initialized at {logging.getLevelName(level)}")
    if log_file:
        logger.debug(f"Log file: {log_file}")


def log_execution_time(func):
    """Decorator to log function execution time."""

    @functools.wraps(func)
    def wrapper(*args, **kwargs):
        logger = logging.getLogger(func.__module__)
        start_time = time.perf_counter()
        try:
            result = func(*args, **kwargs)
            execution_time = time.perf_counter() - start_time
            logger.debug(f"{func.__name__} executed in {execution_time:.4f} seconds")
            return result
        except Exception as e:
            execution_time = time.perf_counter() - start_time
            logger.debug(f"{func.__name__} failed after {execution_time:.4f} seconds: {e}")
            raise
    return wrapper


class LoggerMixin:
    """Mixin class to add logging capabilities to any class."""

    @property
    def logger(self):
        """Get logger for this class."""
        return logging.getLogger(self.__class__.__name__)

    def log_info(self, message: str):
        """Log info message."""
        self.logger.info(message)

    def log_warning(self, message: str):
        """Log warning message."""
        self.logger.warning(message)

    def log_error(self, message: str):
        """Log error message."""
        self.logger.error(message)

    def log_debug(self, message: str):
        """Log debug message."""
        self.logger.debug(message)
