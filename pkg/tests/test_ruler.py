import numpy as np
import pytest

from backend.encoding import encode_shifted, suffix_after_lcp
from backend.errors import InvalidInputError
from backend.oracle import brute_level_cost
from backend.ruler import LevelIntervals, level_interval_arrays, level_intervals, ruler_level_bit, ruler_value


def test_ruler_values_over_sixteen():
    assert [ruler_value(j, 4) for j in range(8)] == [1, 2, 1, 3, 1, 2, 1, 4]
    assert ruler_value(15, 4) == 4
    assert ruler_value(31, 4) == 4


def test_ruler_value_is_sum_of_level_bits():
    for j in range(64):
        assert ruler_value(j, 6) == sum(ruler_level_bit(j, k) for k in range(1, 7))


@pytest.mark.parametrize("u", [2, 4, 8, 16, 32, 64, 128, 256])
def test_gap_length_is_largest_ruler_value(u):
    log_u = u.bit_length() - 1
    codes = [encode_shifted(x, 0, u) for x in range(u)]
    for x in range(u):
        largest = 0
        for y in range(x + 1, u):
            largest = max(largest, ruler_value(y - 1, log_u))
            assert len(suffix_after_lcp(codes[x], codes[y])) == largest, (x, y)


def test_ruler_level_bit_rejects_bad_arguments():
    with pytest.raises(InvalidInputError):
        ruler_level_bit(3, 0)
    with pytest.raises(InvalidInputError):
        ruler_level_bit(-1, 2)


@pytest.mark.parametrize("x, x_next, k, u, segments", [
    (2, 4, 3, 16, ((0, 2),)),
    (0, 8, 3, 16, ((0, 4),)),
    (13, 18, 4, 16, ((0, 3), (6, 8))),
    (3, 4, 1, 8, ((0, 1),)),
    (7, 8, 3, 8, ((0, 1),)),
], ids=["single", "full", "wrapping", "level-one", "stop-at-zero"])
def test_level_intervals(x, x_next, k, u, segments):
    assert level_intervals(x, x_next, k, u).segments == segments


def test_level_intervals_properties():
    wrapping = level_intervals(13, 18, 4, 16)
    assert wrapping.period == 8
    assert wrapping.covered_length() == 5
    assert not wrapping.is_full
    assert wrapping.contains(2) and wrapping.contains(6) and wrapping.contains(10)
    assert not wrapping.contains(4)
    assert level_intervals(0, 8, 3, 16).is_full


@pytest.mark.parametrize("x, x_next, k, u", [
    (2, 4, 0, 16),
    (2, 4, 5, 16),
    (4, 4, 2, 16),
    (4, 2, 2, 16),
    (1, 18, 2, 16),
    (30, 33, 2, 16),
    (2, 4, 2, 12),
])
def test_level_intervals_rejects_bad_arguments(x, x_next, k, u):
    with pytest.raises(InvalidInputError):
        level_intervals(x, x_next, k, u)


def test_gap_at_least_period_costs_every_shift():
    for k in range(1, 5):
        period = 1 << (k - 1)
        for a in range(16):
            assert brute_level_cost(3, 3 + period, k, a, 16) == 1
            assert level_intervals(3, 3 + period, k, 16).is_full


def test_brute_level_cost_examples():
    assert brute_level_cost(2, 4, 3, 2, 16) == 0
    assert brute_level_cost(2, 4, 3, 0, 16) == 1


def _check_membership(u):
    log_u = u.bit_length() - 1
    for x in range(u):
        for x_next in range(x + 1, x + u + 1):
            for k in range(1, log_u + 1):
                intervals = level_intervals(x, x_next, k, u)
                assert intervals.covered_length() == min(x_next - x, intervals.period)
                for a in range(u):
                    assert intervals.contains(a) == bool(brute_level_cost(x, x_next, k, a, u)), (x, x_next, k, a)


@pytest.mark.parametrize("u", [2, 4, 8, 16])
def test_interval_membership_matches_level_cost(u):
    _check_membership(u)


@pytest.mark.slow
@pytest.mark.parametrize("u", [32, 64])
def test_interval_membership_matches_level_cost_exhaustive(u):
    _check_membership(u)


@pytest.mark.parametrize("k", [1, 2, 3, 4, 5, 6])
def test_vectorized_intervals_match_scalar(rng, k):
    u = 64
    xs, x_nexts = [], []
    for _ in range(200):
        x = rng.randrange(u)
        xs.append(x)
        x_nexts.append(x + rng.randint(1, u))
    starts, stops = level_interval_arrays(np.array(xs), np.array(x_nexts), k, u)
    expected = sorted(
        segment
        for x, x_next in zip(xs, x_nexts)
        for segment in level_intervals(x, x_next, k, u).segments
    )
    assert sorted(zip(starts.tolist(), stops.tolist())) == expected


def test_level_intervals_value_object():
    intervals = LevelIntervals(level=3, segments=((1, 3),))
    assert intervals.period == 4
    assert intervals.contains(5) and not intervals.contains(4)
