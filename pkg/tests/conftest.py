import random

import pytest

from backend.set_sequence import OccurrenceSets, SetSequence, build_occurrence_sets


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: exhaustive sweeps and large-universe runs")


@pytest.fixture
def rng():
    return random.Random(20241018)


@pytest.fixture
def three_four_six():
    """The single set {3, 4, 6} over u = 8."""
    return SetSequence(universe_size=8, sets=((3, 4, 6),))


@pytest.fixture
def sixteen_universe_sequence():
    return SetSequence(universe_size=16, sets=((2, 4, 10, 13),))


@pytest.fixture
def four_position_sequence():
    """Three sets whose occurrence sets are A_0={2}, A_1={1,2,3}, A_2={1,3}, A_3={3}."""
    return SetSequence(universe_size=4, sets=((1, 2), (0, 1), (1, 2, 3)))


@pytest.fixture
def four_position_occurrences(four_position_sequence):
    return build_occurrence_sets(four_position_sequence)


@pytest.fixture
def make_sequence(rng):
    """Factory for random sequences; ``wrap_heavy`` draws elements close to both ends of the universe."""
    def make(universe_size, max_sets=8, max_set_size=8, wrap_heavy=False):
        if wrap_heavy:
            edge = max(1, universe_size // 8)
            pool = sorted(set(range(universe_size - edge, universe_size)) | set(range(min(edge, universe_size))))
        else:
            pool = range(universe_size)
        sets = []
        for _ in range(rng.randint(1, max_sets)):
            size = rng.randint(0, min(max_set_size, len(pool)))
            sets.append(rng.sample(pool, size))
        if not any(sets):
            sets[0] = [rng.choice(pool)]
        return SetSequence.from_iterables(sets, universe_size=universe_size)
    return make


@pytest.fixture
def make_dense_occurrences(rng):
    """Factory for random dense occurrence sets: no empty ``A_x`` and every index used."""
    def make(universe_size, num_sets):
        buckets = [set(rng.sample(range(1, num_sets + 1), rng.randint(1, num_sets))) for _ in range(universe_size)]
        for i in range(1, num_sets + 1):
            buckets[rng.randrange(universe_size)].add(i)
        return OccurrenceSets(num_sets=num_sets, sets=tuple(tuple(sorted(b)) for b in buckets))
    return make
