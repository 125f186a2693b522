import numpy as np

from project.services.imaging.images import BinaryImage
from project.services.segmentation.words import WordBlock


def align_blocks(a: WordBlock, b: WordBlock) -> tuple[BinaryImage, BinaryImage]:
    """
    Place two word bitmaps in one frame, left edges and baselines coincident.

    The frame is as wide as the wider block and tall enough to hold both
    after the baseline shift; padding is background.
    """
    baseline = max(a.line_ref.baseline, b.line_ref.baseline)
    offset_a = baseline - a.line_ref.baseline
    offset_b = baseline - b.line_ref.baseline
    height = max(offset_a + a.bitmap.height, offset_b + b.bitmap.height)
    width = max(a.bitmap.width, b.bitmap.width)

    frames = []
    for block, offset in ((a, offset_a), (b, offset_b)):
        frame = np.zeros((height, width), dtype=np.bool_)
        frame[offset : offset + block.bitmap.height, : block.bitmap.width] = (
            block.bitmap.pixels
        )
        frames.append(BinaryImage(frame))
    return frames[0], frames[1]
