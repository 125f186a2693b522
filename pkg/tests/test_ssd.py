import math
import random

import numpy as np
import pytest

from project.exceptions import MatchingError
from project.services.imaging.images import BinaryImage, BoundingBox
from project.services.imaging.font import CHARSET
from project.services.imaging.synthetic import render_word_block
from project.services.matching.alignment import align_blocks
from project.services.matching.ssd import MAX_DISSIMILAR, ssd
from project.services.segmentation.words import LineReference, WordBlock, WordId


def _block(height: int, width: int, baseline: int) -> WordBlock:
    pixels = np.ones((height, width), dtype=bool)
    return WordBlock(
        word_id=WordId(0, 0, 0),
        box=BoundingBox(0, 0, width, height),
        bitmap=BinaryImage(pixels),
        line_ref=LineReference(0, 1, baseline, height - 1),
        char_count=1,
    )


def test_ssd_of_identical_blocks() -> None:
    block = render_word_block("some")
    assert ssd(block.bitmap, block.bitmap) == 0


def test_ssd_by_hand() -> None:
    a = BinaryImage(np.array([[1, 0], [0, 1]], dtype=bool))
    b = BinaryImage(np.array([[1, 0], [0, 0]], dtype=bool))
    assert ssd(a, b) == pytest.approx(1 / math.sqrt(2))
    assert ssd(a, b) == ssd(b, a)


def test_ssd_of_blank_blocks() -> None:
    blank = BinaryImage(np.zeros((2, 2), dtype=bool))
    inked = BinaryImage(np.eye(2, dtype=bool))
    assert ssd(blank, blank) == 0
    assert ssd(blank, inked) == MAX_DISSIMILAR
    assert ssd(inked, blank) == MAX_DISSIMILAR


def test_ssd_needs_aligned_frames() -> None:
    with pytest.raises(MatchingError):
        ssd(BinaryImage(np.eye(2, dtype=bool)), BinaryImage(np.eye(3, dtype=bool)))


def test_align_equal_blocks() -> None:
    block = render_word_block("run")
    frame_a, frame_b = align_blocks(block, block)
    assert frame_a == block.bitmap
    assert frame_b == block.bitmap


def test_align_puts_baselines_on_one_row() -> None:
    a = _block(height=20, width=8, baseline=15)
    b = _block(height=24, width=12, baseline=18)
    frame_a, frame_b = align_blocks(a, b)
    assert frame_a.pixels.shape == frame_b.pixels.shape
    assert frame_a.height >= 24
    assert frame_a.width == 12
    # a moved down by three rows so both baselines land on row 18
    assert frame_a.pixels[3:23, :8].all()
    assert frame_a.foreground_count == a.bitmap.foreground_count
    assert frame_b.foreground_count == b.bitmap.foreground_count
    assert frame_a.pixels[18, 0] and frame_b.pixels[18, 0]


def test_ssd_properties_on_random_pairs() -> None:
    rng = np.random.default_rng(13)
    for _ in range(1000):
        shape = (int(rng.integers(1, 30)), int(rng.integers(1, 60)))
        a = BinaryImage(rng.random(shape) < rng.random())
        b = BinaryImage(rng.random(shape) < rng.random())
        assert ssd(a, a) == 0
        assert ssd(a, b) == ssd(b, a)
        assert ssd(a, b) >= 0


def test_ssd_properties_on_aligned_words() -> None:
    rng = random.Random(3)
    for _ in range(200):
        texts = ["".join(rng.choices(CHARSET, k=rng.randint(1, 6))) for _ in range(2)]
        scales = [rng.randint(1, 3) for _ in range(2)]
        first, second = (
            render_word_block(text, scale=scale) for text, scale in zip(texts, scales)
        )
        frame_a, frame_b = align_blocks(first, second)
        frame_b2, frame_a2 = align_blocks(second, first)
        assert frame_a == frame_a2
        assert frame_b == frame_b2
        assert ssd(frame_a, frame_b) == ssd(frame_b, frame_a) >= 0
        assert ssd(frame_a, frame_a) == 0
