import numpy as np
import pytest

from project.exceptions import PnmHeaderError, PnmMagicError, PnmTruncatedError
from project.services.imaging.images import BinaryImage, GrayImage
from project.services.imaging.pnm import load_pnm, save_pnm


def test_plain_pbm_with_comment() -> None:
    img = load_pnm(b"P1\n# scanned page\n3 2\n1 0 1\n0 1 0\n")
    assert isinstance(img, BinaryImage)
    assert img.pixels.tolist() == [[True, False, True], [False, True, False]]


def test_plain_pbm_without_separators() -> None:
    img = load_pnm(b"P1 4 1 0110")
    assert img.pixels.tolist() == [[False, True, True, False]]


def test_raw_pbm_rows_are_padded_to_bytes() -> None:
    # 10 columns take two bytes per row; the padding bits are ignored
    img = load_pnm(b"P4\n10 2\n" + bytes([0b10000000, 0b01111111, 0, 0b11000000]))
    assert img.pixels.tolist() == [
        [True] + [False] * 8 + [True],
        [False] * 8 + [True, True],
    ]


def test_plain_pgm_rescales_maxval() -> None:
    img = load_pnm(b"P2\n2 1\n15\n0 15\n")
    assert isinstance(img, GrayImage)
    assert img.pixels.tolist() == [[0, 255]]


def test_raw_pgm_sixteen_bit_is_big_endian() -> None:
    payload = (0).to_bytes(2, "big") + (200).to_bytes(2, "big") + (1000).to_bytes(2, "big")
    img = load_pnm(b"P5\n3 1\n1000\n" + payload)
    assert img.pixels.tolist() == [[0, 51, 255]]


@pytest.mark.parametrize("data", [b"P3\n1 1\n255\n0 0 0\n", b"P6\n1 1\n255\n\0\0\0", b""])
def test_unsupported_magic(data: bytes) -> None:
    with pytest.raises(PnmMagicError):
        load_pnm(data)


@pytest.mark.parametrize(
    "data",
    [b"P1\nx 2\n0 0\n", b"P2\n2 1\n0\n0 0\n", b"P4\n0 3\n", b"P5\n1 1\n70000\n\0"],
)
def test_malformed_header(data: bytes) -> None:
    with pytest.raises(PnmHeaderError):
        load_pnm(data)


@pytest.mark.parametrize(
    "data",
    [b"P1\n3 2\n1 0 1\n0 1\n", b"P4\n16 2\n\0\0\0", b"P5\n2 2\n255\n\0\0\0"],
)
def test_truncated_payload(data: bytes) -> None:
    with pytest.raises(PnmTruncatedError, match="truncated payload"):
        load_pnm(data)


def test_sample_above_maxval() -> None:
    with pytest.raises(PnmHeaderError):
        load_pnm(b"P2\n1 1\n10\n11\n")


@pytest.mark.parametrize("plain", [False, True])
def test_binary_roundtrip(plain: bool) -> None:
    pixels = np.random.default_rng(7).random((13, 21)) < 0.3
    img = BinaryImage(pixels)
    assert load_pnm(save_pnm(img, plain=plain)) == img


@pytest.mark.parametrize("plain", [False, True])
def test_grey_roundtrip(plain: bool) -> None:
    pixels = np.random.default_rng(7).integers(0, 256, (5, 9), dtype=np.uint8)
    img = GrayImage(pixels)
    assert load_pnm(save_pnm(img, plain=plain)) == img


def test_raw_pbm_header() -> None:
    img = BinaryImage(np.ones((2, 3), dtype=bool))
    assert save_pnm(img) == b"P4\n3 2\n" + bytes([0b11100000, 0b11100000])


def test_comment_digits_are_not_samples() -> None:
    img = load_pnm(b"P1\n2 2\n# 1111\n0 1\n# rows 0 and 1\n1 0\n")
    assert img.pixels.tolist() == [[False, True], [True, False]]
    grey = load_pnm(b"P2\n2 1\n255\n10 # 99 99\n20\n")
    assert grey.pixels.tolist() == [[10, 20]]
