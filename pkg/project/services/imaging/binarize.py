import logging
from typing import Literal, Union

import numpy as np

from project.services.imaging.images import BinaryImage, GrayImage

logger = logging.getLogger(__name__)

AUTO = "auto"
Threshold = Union[int, Literal["auto"]]


def otsu_threshold(img: GrayImage) -> int:
    """
    Threshold maximizing the between-class variance.

    Classes are ``intensity < t`` (ink) and ``intensity >= t`` (paper);
    the smallest maximizing ``t`` in 1..255 wins.

    :param img: grey image.
    :return: threshold, or 0 when the image holds a single intensity.
    """
    hist = np.bincount(img.pixels.ravel(), minlength=256).astype(np.float64)
    if np.count_nonzero(hist) < 2:  # noqa: PLR2004
        return 0

    levels = np.arange(256, dtype=np.float64)
    total = hist.sum()
    # index t-1 of the cumulative arrays describes the class below t
    weight_low = np.cumsum(hist)[:-1]
    mass_low = np.cumsum(hist * levels)[:-1]
    weight_high = total - weight_low
    mass_high = mass_low[-1] + hist[-1] * 255.0 - mass_low

    valid = (weight_low > 0) & (weight_high > 0)
    variance = np.zeros(255)
    mean_low = np.divide(mass_low, weight_low, out=np.zeros(255), where=valid)
    mean_high = np.divide(mass_high, weight_high, out=np.zeros(255), where=valid)
    variance[valid] = (
        weight_low[valid] * weight_high[valid]
        * (mean_low[valid] - mean_high[valid]) ** 2
    )
    return int(np.argmax(variance)) + 1


def binarize(img: GrayImage, threshold: Threshold = AUTO) -> BinaryImage:
    """
    Dark ink on light paper: a pixel is foreground iff intensity < threshold.

    :param img: grey image.
    :param threshold: fixed intensity, or ``"auto"`` for Otsu's threshold.
    :return: binary image; a constant image under ``"auto"`` is all background.
    """
    if threshold == AUTO:
        threshold = otsu_threshold(img)
        logger.debug("otsu threshold %d", threshold)
    return BinaryImage(img.pixels < int(threshold))
