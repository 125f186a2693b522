import numpy as np

from project.services.imaging.cleanup import despeckle
from project.services.imaging.images import BinaryImage


def test_drops_small_components() -> None:
    pixels = np.zeros((10, 10), dtype=bool)
    pixels[0, 0] = True
    pixels[2:5, 2:5] = True
    pixels[8, 8:10] = True
    cleaned = despeckle(BinaryImage(pixels), 3)
    expected = np.zeros_like(pixels)
    expected[2:5, 2:5] = True
    assert np.array_equal(cleaned.pixels, expected)


def test_diagonal_pixels_are_connected() -> None:
    img = BinaryImage(np.eye(4, dtype=bool))
    assert despeckle(img, 4) == img
    assert despeckle(img, 5).foreground_count == 0


def test_small_threshold_is_identity() -> None:
    img = BinaryImage(np.eye(3, dtype=bool))
    assert despeckle(img, 1) is img
    blank = BinaryImage(np.zeros((3, 3), dtype=bool))
    assert despeckle(blank, 5) is blank
