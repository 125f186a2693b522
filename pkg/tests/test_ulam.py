import itertools
import random

import numpy as np
import pytest

from project.exceptions import MatchingError
from project.services.imaging.images import BinaryImage, BoundingBox
from project.services.imaging.synthetic import render_word_block
from project.services.matching.ulam import (
    RankMatrix,
    composition_permutation,
    lis_length,
    rank_window,
    ulam_tau,
    ulam_word_similarity,
)
from project.services.segmentation.words import LineReference, WordBlock, WordId

FIRST = [[10, 30, 70], [20, 50, 80], [40, 60, 100]]
SECOND = [[10, 30, 70], [20, 50, 80], [40, 60, 15]]


def _brute_lis(s: tuple[int, ...]) -> int:
    for size in range(len(s), 0, -1):
        for picked in itertools.combinations(s, size):
            if all(a < b for a, b in zip(picked, picked[1:])):
                return size
    return 0


def _reference_tau(w1: np.ndarray, w2: np.ndarray) -> float:
    """Straight from the definitions: quadratic LIS, dict lookups."""
    flat1, flat2 = list(w1.ravel()), list(w2.ravel())
    n = len(flat1)

    def ranks(values: list) -> list[int]:
        order = sorted(range(n), key=lambda pos: (values[pos], pos))
        result = [0] * n
        for rank, pos in enumerate(order, start=1):
            result[pos] = rank
        return result

    r1, r2 = ranks(flat1), ranks(flat2)
    position_of = {rank: pos for pos, rank in enumerate(r1)}
    s = [r2[position_of[i]] for i in range(1, n + 1)]

    def lis(seq: list[int]) -> int:
        best = [1] * len(seq)
        for j in range(len(seq)):
            for i in range(j):
                if seq[i] < seq[j]:
                    best[j] = max(best[j], best[i] + 1)
        return max(best)

    tau_u = 1 - 2 * (n - lis(s)) / (n - 1)
    tau_r = 1 - 2 * (n - lis(s[::-1])) / (n - 1)
    return (tau_u - tau_r) / 2


def _block(pixels: np.ndarray) -> WordBlock:
    height, width = pixels.shape
    return WordBlock(
        word_id=WordId(0, 0, 0),
        box=BoundingBox(0, 0, width, height),
        bitmap=BinaryImage(pixels.astype(bool)),
        line_ref=LineReference(0, 0, height - 1, height - 1),
        char_count=1,
    )


def test_rank_window_worked_example() -> None:
    assert rank_window(FIRST) == RankMatrix(np.array([[1, 3, 7], [2, 5, 8], [4, 6, 9]]))
    assert rank_window(SECOND) == RankMatrix(np.array([[1, 4, 8], [3, 6, 9], [5, 7, 2]]))


def test_rank_window_ties_in_raster_order() -> None:
    ranks = rank_window(np.zeros((2, 3), dtype=bool))
    assert ranks.ranks.tolist() == [[1, 2, 3], [4, 5, 6]]
    with pytest.raises(MatchingError):
        rank_window(np.zeros((0, 3)))


def test_composition_worked_example() -> None:
    s = composition_permutation(rank_window(FIRST), rank_window(SECOND))
    assert s == (1, 3, 4, 5, 6, 7, 8, 9, 2)


def test_composition_identity_and_reverse() -> None:
    p = rank_window(FIRST)
    assert composition_permutation(p, p) == tuple(range(1, 10))
    reverse = RankMatrix(10 - p.ranks)
    assert composition_permutation(p, reverse) == tuple(range(9, 0, -1))
    with pytest.raises(MatchingError):
        composition_permutation(p, rank_window([[1, 2]]))


def test_lis_length() -> None:
    assert lis_length((1, 3, 4, 5, 6, 7, 8, 9, 2)) == 8
    assert lis_length(tuple(range(1, 12))) == 11
    assert lis_length(()) == 0


def _dp_lis(s: list[int]) -> int:
    """Quadratic LIS over numpy rows."""
    seq = np.asarray(s)
    best = np.ones(seq.size, dtype=int)
    for j in range(1, seq.size):
        smaller = seq[:j] < seq[j]
        if smaller.any():
            best[j] = best[:j][smaller].max() + 1
    return int(best.max(initial=0))


def test_lis_over_every_permutation_of_seven() -> None:
    for s in itertools.permutations(range(1, 8)):
        assert lis_length(s) == _brute_lis(s)


def test_lis_matches_dp_oracle() -> None:
    rng = random.Random(11)
    for _ in range(1000):
        s = list(range(1, rng.randint(1, 200) + 1))
        rng.shuffle(s)
        assert lis_length(s) == _dp_lis(s)


def test_ulam_tau_worked_example() -> None:
    result = ulam_tau(FIRST, SECOND)
    assert (result.delta1, result.delta2) == (1, 7)
    assert result.tau_u == pytest.approx(0.75)
    assert result.tau_r == pytest.approx(-0.75)
    assert result.tau == pytest.approx(0.75)
    assert result.s_reversed == (2, 9, 8, 7, 6, 5, 4, 3, 1)


def test_ulam_tau_identical_windows() -> None:
    result = ulam_tau(FIRST, FIRST)
    assert result.s == tuple(range(1, 10))
    assert (result.delta1, result.delta2) == (0, 8)
    assert (result.tau_u, result.tau_r, result.tau) == (1, -1, 1)


def test_ulam_tau_reversed_intensities() -> None:
    window = np.array(FIRST)
    assert ulam_tau(window, -window).tau == pytest.approx(-1)


def test_ulam_tau_rejects_bad_windows() -> None:
    with pytest.raises(MatchingError):
        ulam_tau([[1, 2]], [[1], [2]])
    with pytest.raises(MatchingError):
        ulam_tau([[1]], [[1]])


def test_ulam_tau_bounds() -> None:
    rng = np.random.default_rng(5)
    for _ in range(10_000):
        height = int(rng.integers(1, 17))
        width = int(rng.integers(2 if height == 1 else 1, 256 // height + 1))
        w1 = rng.random((height, width)) < rng.random()
        w2 = rng.random((height, width)) < rng.random()
        result = ulam_tau(w1, w2)
        assert result.n <= 256
        assert 0 <= result.delta1 <= result.n - 1
        assert 0 <= result.delta2 <= result.n - 1
        for value in (result.tau_u, result.tau_r, result.tau):
            assert -1 <= value <= 1
        assert ulam_tau(w1, w1).tau == 1


def test_word_against_itself() -> None:
    block = render_word_block("some")
    score = ulam_word_similarity(block, block)
    assert score.tau == 1
    assert not score.downsampled


def test_word_against_complement() -> None:
    # the complement swaps the two tie groups: s = (o+1..n, 1..o), so
    # LIS(s) = max(zeros, ones) and LIS(reversed s) = 2
    rng = np.random.default_rng(9)
    for _ in range(200):
        pixels = rng.random((4, 6)) < 0.4
        ones = int(pixels.sum())
        if ones in (0, pixels.size):
            continue
        n = pixels.size
        expected = (max(ones, n - ones) - 2) / (n - 1)
        score = ulam_word_similarity(_block(pixels), _block(~pixels))
        assert score.tau == pytest.approx(expected)
        assert score.tau == pytest.approx(_reference_tau(pixels, ~pixels))


def test_word_similarity_matches_reference() -> None:
    rng = np.random.default_rng(21)
    for _ in range(300):
        a = rng.random((4, 4)) < 0.5
        b = rng.random((4, 4)) < 0.5
        score = ulam_word_similarity(_block(a), _block(b))
        assert score.tau == pytest.approx(_reference_tau(a, b))


def test_large_frame_is_downsampled() -> None:
    block = render_word_block("zero" * 7)
    assert block.width > 256
    score = ulam_word_similarity(block, block)
    assert score.downsampled
    assert score.tau == 1
    assert not ulam_word_similarity(block, block, max_width=1024).downsampled
