"""
Built-in monochrome glyph set for synthetic pages.

Each glyph sits on a 5x9 base grid split into three equal zones:
rows 0-2 ascender, rows 3-5 x-height body, rows 6-8 descender.
Every glyph column holds ink, so characters of a word are separated
by exactly the inter-character gap.
"""

from functools import lru_cache

import numpy as np
from numpy.typing import NDArray

from project.exceptions import SyntheticPageError

BUILTIN = "builtin"
GLYPH_WIDTH = 5
GLYPH_HEIGHT = 9
ZONE_HEIGHT = 3

_BLANK = (".....", ".....", ".....")

_ASCENDERS = {
    "b": ("#....", "#....", "#...."),
    "d": ("....#", "....#", "....#"),
    "f": ("..##.", ".#...", ".#..."),
    "h": ("#....", "#....", "#...."),
    "k": ("#....", "#....", "#...."),
    "l": ("##...", ".#...", ".#..."),
    "t": (".#...", ".#...", ".#..."),
}

_BODIES = {
    "a": (".###.", "#..##", ".##.#"),
    "b": ("####.", "#...#", "####."),
    "c": (".####", "##...", ".####"),
    "d": (".####", "#...#", ".####"),
    "e": (".###.", "#####", ".##.."),
    "f": ("#####", ".##..", ".##.."),
    "g": (".####", "#...#", ".####"),
    "h": ("####.", "#...#", "#...#"),
    "i": ("###..", ".##..", "#####"),
    "j": ("..###", "...##", "...##"),
    "k": ("#..##", "###..", "#..##"),
    "l": (".##..", ".##..", "#####"),
    "m": ("####.", "#.#.#", "#.#.#"),
    "n": ("####.", "#...#", "#...#"),
    "o": (".###.", "#...#", ".###."),
    "p": ("####.", "#...#", "####."),
    "q": (".####", "#...#", ".####"),
    "r": ("#.###", "##...", "##..."),
    "s": (".####", ".###.", "####."),
    "t": ("#####", ".##..", "..###"),
    "u": ("#...#", "#...#", ".####"),
    "v": ("#...#", ".#.#.", ".###."),
    "w": ("#.#.#", "#.#.#", ".#.#."),
    "x": ("##.##", ".###.", "##.##"),
    "y": ("#...#", "#...#", ".####"),
    "z": ("#####", "..##.", "#####"),
}

_DESCENDERS = {
    "g": ("....#", "....#", "..##."),
    "j": ("...##", "...##", "##..."),
    "p": ("#....", "#....", "#...."),
    "q": ("....#", "....#", "....#"),
    "y": ("....#", "....#", "..##."),
}

ASCENDER_CHARS = frozenset(_ASCENDERS)
DESCENDER_CHARS = frozenset(_DESCENDERS)
CHARSET = "".join(sorted(_BODIES))


def _rows(char: str) -> tuple[str, ...]:
    return (
        _ASCENDERS.get(char, _BLANK)
        + _BODIES[char]
        + _DESCENDERS.get(char, _BLANK)
    )


@lru_cache(maxsize=None)
def glyph(char: str, scale: int = 1) -> NDArray[np.bool_]:
    """
    Bitmap of one character, magnified by ``scale`` in both directions.

    :raises SyntheticPageError: character outside the glyph set.
    """
    if char not in _BODIES:
        raise SyntheticPageError(f"no glyph for character {char!r}")
    base = np.array([[cell == "#" for cell in row] for row in _rows(char)])
    scaled = np.kron(base, np.ones((scale, scale), dtype=np.bool_))
    scaled.setflags(write=False)
    return scaled


def word_width(text: str, scale: int, char_gap: int) -> int:
    """Pixel width of ``text`` rendered with the given gap between glyphs."""
    if not text:
        return 0
    return len(text) * GLYPH_WIDTH * scale + (len(text) - 1) * char_gap


def render_text(text: str, scale: int, char_gap: int) -> NDArray[np.bool_]:
    """Render one word as a ``(9*scale, word_width)`` bitmap."""
    height = GLYPH_HEIGHT * scale
    canvas = np.zeros((height, word_width(text, scale, char_gap)), dtype=np.bool_)
    x = 0
    for char in text:
        bitmap = glyph(char, scale)
        canvas[:, x : x + bitmap.shape[1]] = bitmap
        x += bitmap.shape[1] + char_gap
    return canvas


def reference_rows(scale: int) -> tuple[int, int, int, int]:
    """
    Top line, x-line, baseline and bottom line of a rendered word.

    The x-line is the first body row, the baseline the last one; top and
    bottom lines sit one spacing ``baseline - x_line`` away from them.
    """
    zone = ZONE_HEIGHT * scale
    x_line, baseline = zone, 2 * zone - 1
    k = baseline - x_line
    return max(0, x_line - k), x_line, baseline, min(GLYPH_HEIGHT * scale - 1, baseline + k)
