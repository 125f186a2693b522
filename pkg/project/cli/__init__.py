import logging
from typing import Optional, Sequence

from pydantic import ValidationError

from project.cli.commands import COMMANDS
from project.cli.parser import build_parser
from project.exceptions import (
    DuplicatePageError,
    IndexFormatError,
    InputError,
    PnmError,
    SyntheticPageError,
    UnknownWordError,
    WordSpotError,
)
from project.log import configure_logging
from project.settings import settings

logger = logging.getLogger(__name__)

PROCESSING_ERROR = 1
USAGE_ERROR = 2

# Errors caused by what the user passed in rather than by processing it
INPUT_ERRORS = (
    InputError,
    PnmError,
    IndexFormatError,
    UnknownWordError,
    DuplicatePageError,
    SyntheticPageError,
    ValidationError,
)


def main(argv: Optional[Sequence[str]] = None) -> int:
    """
    Run one ``wordspot`` subcommand.

    :param argv: arguments without the program name; ``sys.argv`` when omitted.
    :return: 0 on success, 1 on a processing error, 2 on a usage or input error.
    """
    args = build_parser(settings).parse_args(argv)
    configure_logging(args.log_level)
    try:
        return COMMANDS[args.command](args)
    except INPUT_ERRORS as exc:
        logger.error("%s", exc)
        return USAGE_ERROR
    except WordSpotError as exc:
        logger.error("%s", exc)
        return PROCESSING_ERROR


__all__ = ["main"]
