"""Logging configuration for the GBF-PUM toolkit"""
import logging
import os
import time
from contextlib import contextmanager
from typing import Iterator, List, Optional

ROOT_LOGGER_NAME = "gbfpum"
LOG_FORMAT = '%(asctime)s - %(name)s - %(levelname)s - %(message)s'
DATE_FORMAT = '%Y-%m-%d %H:%M:%S'


def _level(level: str) -> int:
    value = logging.getLevelName(level.upper())
    if not isinstance(value, int):
        raise ValueError(f"Unknown log level '{level}'")
    return value


def setup_logger(
    name: str = ROOT_LOGGER_NAME,
    level: str = "INFO",
    log_file: Optional[str] = None,
    log_dir: str = "logs"
) -> logging.Logger:
    """
    Set up the toolkit logger with console and optionally file output

    Calling it again replaces the handlers, so repeated CLI invocations in one
    process do not duplicate output.

    Args:
        name: Logger name
        level: Logging level (DEBUG, INFO, WARNING, ERROR, CRITICAL)
        log_file: Optional log file name
        log_dir: Directory for log files

    Returns:
        Configured logger instance
    """
    numeric_level = _level(level)
    logger = logging.getLogger(name)
    logger.setLevel(numeric_level)
    for handler in logger.handlers[:]:
        logger.removeHandler(handler)
        handler.close()

    # Console goes to stderr; stdout carries command output
    handlers: List[logging.Handler] = [logging.StreamHandler()]
    if log_file:
        os.makedirs(log_dir, exist_ok=True)
        handlers.append(logging.FileHandler(os.path.join(log_dir, log_file), encoding='utf-8'))

    formatter = logging.Formatter(LOG_FORMAT, datefmt=DATE_FORMAT)
    for handler in handlers:
        handler.setLevel(numeric_level)
        handler.setFormatter(formatter)
        logger.addHandler(handler)
    return logger


def get_logger(name: str = ROOT_LOGGER_NAME) -> logging.Logger:
    """
    Get logger instance

    Module loggers are parented under the toolkit root logger so that a single
    setup_logger() call configures the whole package.
    """
    if name.startswith("src."):
        name = f"{ROOT_LOGGER_NAME}.{name[len('src.'):]}"
    elif name != ROOT_LOGGER_NAME and not name.startswith(f"{ROOT_LOGGER_NAME}."):
        name = f"{ROOT_LOGGER_NAME}.{name}"
    return logging.getLogger(name)


class PhaseTimer:
    """Wall-clock seconds of one pipeline phase, filled in when the phase ends"""

    def __init__(self):
        self.seconds = 0.0


@contextmanager
def log_phase(logger: logging.Logger, label: str) -> Iterator[PhaseTimer]:
    """Time a block and log its duration at INFO"""
    timer = PhaseTimer()
    started = time.perf_counter()
    try:
        yield timer
    finally:
        timer.seconds = time.perf_counter() - started
    logger.info(f"✅ {label} in {timer.seconds:.3f}s")
