import logging

from rich.console import Console
from rich.logging import RichHandler

ROOT_LOGGER = "cend"

# Logs go to stderr so command output on stdout stays byte-identical between runs
_stderr = Console(stderr=True)
_configured = False


def configure_logging(level="WARNING"):
    """Attach a single RichHandler to the package logger (idempotent)"""
    global _configured
    logger = logging.getLogger(ROOT_LOGGER)
    if not _configured:
        handler = RichHandler(console=_stderr, show_path=False, rich_tracebacks=True)
        handler.setFormatter(logging.Formatter("%(message)s"))
        logger.addHandler(handler)
        logger.propagate = False
        _configured = True
    logger.setLevel(level.upper() if isinstance(level, str) else level)
    return logger


def get_logger(name):
    """Child logger of the package logger, e.g. get_logger(__name__)"""
    return logging.getLogger(f"{ROOT_LOGGER}.{name}")
