import logging

import numpy as np
from scipy import ndimage

from project.services.imaging.images import BinaryImage

logger = logging.getLogger(__name__)

# 8-connectivity: diagonal neighbours belong to the same component
_NEIGHBOURHOOD = np.ones((3, 3), dtype=bool)


def despeckle(img: BinaryImage, min_size: int) -> BinaryImage:
    """
    Drop foreground components smaller than ``min_size`` pixels.

    Salt noise leaves isolated specks in margins and gaps; since a single
    speck makes an empty row or column non-empty, profiles of noisy scans
    lose their white runs. ``min_size`` below 2 returns the image unchanged.
    """
    if min_size < 2:  # noqa: PLR2004
        return img
    labels, count = ndimage.label(img.pixels, structure=_NEIGHBOURHOOD)
    if count == 0:
        return img
    sizes = np.bincount(labels.ravel())
    keep = sizes >= min_size
    keep[0] = False
    logger.debug(
        "despeckle: dropped %d of %d components below %d px",
        int(count - np.count_nonzero(keep)), count, min_size,
    )
    return BinaryImage(keep[labels])
