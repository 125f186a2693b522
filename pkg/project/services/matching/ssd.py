import logging
import math

import numpy as np

from project.exceptions import MatchingError
from project.services.imaging.images import BinaryImage

logger = logging.getLogger(__name__)

# Score of a blank block against an inked one; sorts after every real score.
MAX_DISSIMILAR = math.inf


def ssd(a: BinaryImage, b: BinaryImage) -> float:
    """
    Normalized sum of squared differences of two aligned bitmaps.

    ``sum((a - b)^2) / sqrt(sum(a^2) * sum(b^2))`` with foreground 1 and
    background 0. Lower is more similar, identical blocks score 0.

    :raises MatchingError: frames of different shape.
    :return: score, 0 for two blank blocks, MAX_DISSIMILAR when only one is blank.
    """
    if a.pixels.shape != b.pixels.shape:
        raise MatchingError(
            f"ssd needs aligned blocks, got {a.pixels.shape} and {b.pixels.shape}",
        )
    ink_a = a.foreground_count
    ink_b = b.foreground_count
    if ink_a == 0 and ink_b == 0:
        return 0.0
    if ink_a == 0 or ink_b == 0:
        logger.debug("blank block in ssd, scoring as MAX_DISSIMILAR")
        return MAX_DISSIMILAR
    # binary pixels: squares are the pixels themselves
    difference = int(np.count_nonzero(a.pixels ^ b.pixels))
    return difference / math.sqrt(ink_a * ink_b)
