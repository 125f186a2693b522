class WordSpotError(Exception):
    """Base class for every error raised by the toolkit."""


class PnmError(WordSpotError):
    """A Netpbm file could not be decoded."""


class PnmHeaderError(PnmError):
    """Malformed header."""


class PnmTruncatedError(PnmError):
    """Payload shorter than the header announces."""


class PnmMagicError(PnmError):
    """Magic number other than P1, P2, P4 or P5."""


class BoundingBoxError(WordSpotError, ValueError):
    """Box with non-positive size or outside its parent image."""


class SyntheticPageError(WordSpotError):
    """A synthetic page cannot be rendered from its spec."""


class SegmentationError(WordSpotError):
    """Segmentation received input it cannot work with."""


class MatchingError(WordSpotError):
    """Descriptor inputs are inconsistent (shapes, sizes)."""


class WordIndexError(WordSpotError):
    """Word index cannot be built, loaded or queried."""


class ChecksumMismatchError(WordIndexError):
    """A source page changed since the index was built."""


class UnknownWordError(WordIndexError, KeyError):
    """Word id is not present in the index."""

    def __str__(self) -> str:
        return str(self.args[0]) if self.args else "unknown word"


class DuplicatePageError(WordIndexError):
    """The same page path was given twice."""


class IndexFormatError(WordIndexError):
    """Index file is not valid JSON or fails validation."""


class InputError(WordSpotError):
    """A command input is missing or unusable."""
