"""
Netpbm codec for the bitmap (P1/P4) and greymap (P2/P5) formats.

PBM value 1 is ink and maps to foreground. PGM intensities are rescaled
to 0..255 when the file's maxval differs.
"""

import logging
import re

import numpy as np

from project.exceptions import PnmHeaderError, PnmMagicError, PnmTruncatedError
from project.services.imaging.images import BinaryImage, GrayImage, Image

logger = logging.getLogger(__name__)

SUPPORTED_MAGICS = (b"P1", b"P2", b"P4", b"P5")
_WHITESPACE = b" \t\n\r\v\f"
_PLAIN_BIT = re.compile(rb"[01]")
_COMMENT = re.compile(rb"#[^\r\n]*")


class _HeaderReader:
    """Tokenizer for the whitespace/comment separated header fields."""

    def __init__(self, data: bytes) -> None:
        self.data = data
        self.pos = 2

    def _skip_separators(self) -> None:
        while self.pos < len(self.data):
            byte = self.data[self.pos : self.pos + 1]
            if byte == b"#":
                end = self.data.find(b"\n", self.pos)
                self.pos = len(self.data) if end < 0 else end + 1
            elif byte in _WHITESPACE:
                self.pos += 1
            else:
                return

    def next_int(self, field: str) -> int:
        self._skip_separators()
        start = self.pos
        while self.pos < len(self.data) and self.data[self.pos : self.pos + 1].isdigit():
            self.pos += 1
        if start == self.pos:
            raise PnmHeaderError(f"malformed header: missing or invalid {field}")
        return int(self.data[start : self.pos])

    def end_of_header(self) -> int:
        """Offset of the raster; exactly one whitespace byte follows the header."""
        if self.pos >= len(self.data):
            return self.pos
        if self.data[self.pos : self.pos + 1] not in _WHITESPACE:
            raise PnmHeaderError("malformed header: no separator before raster")
        return self.pos + 1


def load_pnm(data: bytes) -> Image:
    """
    Decode a PBM or PGM file.

    :param data: complete file content.
    :raises PnmMagicError: unsupported magic number.
    :raises PnmHeaderError: malformed header.
    :raises PnmTruncatedError: fewer samples than the header announces.
    :return: BinaryImage for PBM, GrayImage for PGM.
    """
    magic = data[:2]
    if magic not in SUPPORTED_MAGICS:
        raise PnmMagicError(f"unsupported magic number {magic!r}")

    header = _HeaderReader(data)
    width = header.next_int("width")
    height = header.next_int("height")
    if width < 1 or height < 1:
        raise PnmHeaderError(f"malformed header: dimensions {width}x{height}")
    maxval = 1
    if magic in (b"P2", b"P5"):
        maxval = header.next_int("maxval")
        if not 0 < maxval < 65536:  # noqa: PLR2004
            raise PnmHeaderError(f"malformed header: maxval {maxval}")

    count = width * height
    if magic == b"P1":
        bits = _PLAIN_BIT.findall(_plain_raster(data, header.pos))
        if len(bits) < count:
            raise PnmTruncatedError("truncated payload")
        pixels = np.array([bit == b"1" for bit in bits[:count]], dtype=np.bool_)
        return BinaryImage(pixels.reshape(height, width))

    if magic == b"P2":
        values = _plain_raster(data, header.pos).split()
        if len(values) < count:
            raise PnmTruncatedError("truncated payload")
        try:
            samples = np.array([int(value) for value in values[:count]])
        except ValueError as exc:
            raise PnmHeaderError(f"malformed payload: {exc}") from exc
        return GrayImage(_rescale(samples, maxval).reshape(height, width))

    offset = header.end_of_header()
    if magic == b"P4":
        row_bytes = (width + 7) // 8
        payload = data[offset : offset + row_bytes * height]
        if len(payload) < row_bytes * height:
            raise PnmTruncatedError("truncated payload")
        packed = np.frombuffer(payload, dtype=np.uint8).reshape(height, row_bytes)
        bits = np.unpackbits(packed, axis=1)[:, :width]
        return BinaryImage(bits.astype(np.bool_))

    sample_bytes = 1 if maxval < 256 else 2  # noqa: PLR2004
    payload = data[offset : offset + count * sample_bytes]
    if len(payload) < count * sample_bytes:
        raise PnmTruncatedError("truncated payload")
    dtype = np.uint8 if sample_bytes == 1 else np.dtype(">u2")
    samples = np.frombuffer(payload, dtype=dtype).astype(np.int64)
    return GrayImage(_rescale(samples, maxval).reshape(height, width))


def _plain_raster(data: bytes, start: int) -> bytes:
    """Samples of a plain-format file with comments blanked out."""
    return _COMMENT.sub(b" ", data[start:])


def _rescale(samples: np.ndarray, maxval: int) -> np.ndarray:
    if samples.size and int(samples.max()) > maxval:
        raise PnmHeaderError(f"malformed payload: sample exceeds maxval {maxval}")
    if maxval == 255:  # noqa: PLR2004
        return samples.astype(np.uint8)
    return np.rint(samples * 255.0 / maxval).astype(np.uint8)


def save_pnm(img: Image, plain: bool = False) -> bytes:
    """
    Encode an image as PBM (binary images) or PGM with maxval 255.

    :param img: image to encode.
    :param plain: write the ASCII variants P1/P2 instead of P4/P5.
    :return: file content.
    """
    if isinstance(img, BinaryImage):
        if plain:
            rows = (
                " ".join("1" if bit else "0" for bit in row)
                for row in img.pixels
            )
            body = "\n".join(rows).encode("ascii")
            return b"P1\n%d %d\n" % (img.width, img.height) + body + b"\n"
        packed = np.packbits(img.pixels.astype(np.uint8), axis=1)
        return b"P4\n%d %d\n" % (img.width, img.height) + packed.tobytes()

    if plain:
        rows = (" ".join(str(int(value)) for value in row) for row in img.pixels)
        body = "\n".join(rows).encode("ascii")
        return b"P2\n%d %d\n255\n" % (img.width, img.height) + body + b"\n"
    return b"P5\n%d %d\n255\n" % (img.width, img.height) + img.pixels.tobytes()
