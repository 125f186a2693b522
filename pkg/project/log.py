import logging
import sys
from typing import Union

from project.settings import LogLevel

LOG_FORMAT = "%(levelname)-5.5s [%(name)s] %(message)s"


def configure_logging(level: Union[LogLevel, str]) -> None:
    """
    Route all project logging to stderr.

    Standard output stays reserved for command results.

    :param level: log level name or enum member.
    """
    if isinstance(level, LogLevel):
        level = level.value
    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(logging.Formatter(LOG_FORMAT))

    root = logging.getLogger()
    for existing in list(root.handlers):
        root.removeHandler(existing)
    root.addHandler(handler)
    root.setLevel(level.upper())
