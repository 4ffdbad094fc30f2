"""Loguru sinks for the toolkit.

Records always go to a rotating file. Stderr gets a coloured sink in debug
mode or with ``--verbose``; stdout is reserved for command output.
"""

import sys
from pathlib import Path
from typing import Optional

from loguru import logger

from app.core.config import settings

FILE_FORMAT = (
    "{time:YYYY-MM-DD HH:mm:ss} | {level: <8} | {name}:{function}:{line} - {message}"
)
CONSOLE_FORMAT = (
    "<green>{time:HH:mm:ss}</green> | <level>{level: <8}</level> | "
    "<cyan>{name}</cyan>:<cyan>{function}</cyan> - <level>{message}</level>"
)


def configure_logging(
    level: Optional[str] = None,
    log_file: Optional[str] = None,
    console: Optional[bool] = None,
) -> None:
    """Replace every sink; unset arguments fall back to ``settings``."""
    level = (level or settings.log_level).upper()
    console = settings.debug if console is None else console

    logger.remove()
    logger.add(
        Path(log_file or settings.log_file),
        rotation="10 MB",
        retention="14 days",
        level=level,
        format=FILE_FORMAT,
        encoding="utf-8",
    )
    if console:
        logger.add(
            sys.stderr,
            level="DEBUG" if settings.debug else level,
            format=CONSOLE_FORMAT,
            colorize=True,
        )


configure_logging()

__all__ = ["logger", "configure_logging"]
