import pytest

from app.cache import lookup
from app.core.errors import BoundExceeded
from app.gue.wick import (
    WickOracle,
    canonical,
    connected_correlator,
    corr_to_dict,
    full_correlator,
    map_count,
)
from app.models import MapCache


def test_canonical_sorts_indices() -> None:
    assert canonical([3, 1, 2]) == (1, 2, 3)


def test_canonical_rejects_nonpositive() -> None:
    with pytest.raises(ValueError):
        canonical([2, 0])


def test_one_point_correlators() -> None:
    assert corr_to_dict(full_correlator([2])) == {2: 1}
    assert corr_to_dict(full_correlator([4])) == {1: 1, 3: 2}


def test_odd_total_vanishes() -> None:
    assert not full_correlator([3])
    assert map_count(0, [3]) == 0


def test_connected_two_point() -> None:
    assert corr_to_dict(connected_correlator([2, 2])) == {2: 2}
    assert corr_to_dict(connected_correlator([1, 1])) == {1: 1}


@pytest.mark.parametrize(
    ("g", "indices", "expected"),
    [
        (0, (4,), 2),
        (1, (4,), 1),
        (0, (6,), 5),
        (1, (6,), 10),
        (2, (8,), 21),
        (0, (2, 2), 2),
        (0, (1, 1), 1),
        (1, (3, 3), 3),
    ],
)
def test_map_count(g: int, indices: tuple[int, ...], expected: int) -> None:
    assert map_count(g, indices) == expected


def test_map_count_outside_genus_range_is_zero() -> None:
    assert map_count(2, (4,)) == 0
    assert map_count(-1, (4,)) == 0
    assert map_count(0, ()) == 0


def test_bound_exceeded() -> None:
    oracle = WickOracle(bound=4)
    with pytest.raises(BoundExceeded):
        oracle.full_correlator([6])


def test_bound_above_hard_cap() -> None:
    with pytest.raises(ValueError):
        WickOracle(bound=22)


def test_oracle_records_every_genus() -> None:
    cache = MapCache()
    oracle = WickOracle(cache=cache)
    assert oracle.map_count(1, (6,)) == 10
    assert lookup(cache, 0, (6,)) == 5
    assert cache.entries["1;6"].producer == "oracle"


def test_cache_is_consulted_first() -> None:
    cache = MapCache()
    WickOracle(cache=cache).map_count(0, (4,))
    # bound 2 would refuse to enumerate (4,)
    assert WickOracle(bound=2, cache=cache).map_count(0, (4,)) == 2


@pytest.mark.slow
def test_parallel_enumeration_matches_serial() -> None:
    serial = WickOracle(workers=1).full_correlator([4, 4, 2])
    parallel = WickOracle(workers=2).full_correlator([4, 4, 2])
    assert serial == parallel
