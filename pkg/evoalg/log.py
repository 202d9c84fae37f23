"""
Logging setup for the evoalg command line.

Library modules only create module loggers; handlers are installed here by
the entry point.
"""

import logging
import sys
from typing import Union

LOG_FORMAT = "%(asctime)s %(levelname)s %(name)s: %(message)s"


def setup_logging(level: Union[int, str] = logging.WARNING) -> None:
    """
    Configure root logging to stderr, replacing any handlers already installed.

    Args:
        level: Level number or name such as "INFO". Unknown names fall back
            to WARNING.

    Example:
        >>> setup_logging("DEBUG")
    """
    if isinstance(level, str):
        level = logging.getLevelName(level.upper())
        if not isinstance(level, int):
            level = logging.WARNING

    logging.basicConfig(level=level, format=LOG_FORMAT, stream=sys.stderr, force=True)
    logging.getLogger(__name__).debug(f"Logging configured at level {logging.getLevelName(level)}")
