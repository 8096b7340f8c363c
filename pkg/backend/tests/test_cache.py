import json
from pathlib import Path

import pytest

from app.cache import cache_merge, load_cache, lookup, merge_caches, record, save_cache
from app.core.errors import CacheConflict
from app.models import CacheEntry, MapCache, Producer, cache_key


def _cache(entries: dict[str, tuple[str, Producer]]) -> MapCache:
    return MapCache(
        entries={
            key: CacheEntry(value=value, producer=producer)
            for key, (value, producer) in entries.items()
        }
    )


def test_cache_key_sorts_indices() -> None:
    assert cache_key(1, [4, 2]) == "1;2,4"


def test_record_and_lookup() -> None:
    cache = MapCache()
    record(cache=cache, g=1, indices=(4,), value=1, producer="oracle")
    assert lookup(cache, 1, (4,)) == 1
    assert lookup(cache, 0, (4,)) is None


def test_record_same_value_twice() -> None:
    cache = MapCache()
    record(cache=cache, g=0, indices=(4,), value=2, producer="oracle")
    record(cache=cache, g=0, indices=(4,), value=2, producer="resolvent")
    assert cache.entries["0;4"].producer == "oracle"


def test_record_conflict() -> None:
    cache = MapCache()
    record(cache=cache, g=0, indices=(4,), value=2, producer="oracle")
    with pytest.raises(CacheConflict) as exc_info:
        record(cache=cache, g=0, indices=(4,), value=3, producer="resolvent")
    assert exc_info.value.key == "0;4"
    assert exc_info.value.values == ["2", "3"]


def test_save_and_load(cache_path: Path) -> None:
    cache = MapCache()
    record(cache=cache, g=1, indices=(6,), value=10, producer="oracle")
    record(cache=cache, g=0, indices=(2, 2), value=2, producer="resolvent")
    save_cache(cache, cache_path)
    document = json.loads(cache_path.read_text())
    assert list(document["entries"]) == ["0;2,2", "1;6"]
    assert load_cache(cache_path) == cache


def test_load_missing_file_is_empty(tmp_path: Path) -> None:
    assert load_cache(tmp_path / "absent.json").entries == {}


def test_load_rejects_other_versions(cache_path: Path) -> None:
    cache_path.write_text(json.dumps({"version": 99, "entries": {}}))
    with pytest.raises(ValueError):
        load_cache(cache_path)


def test_merge_disjoint() -> None:
    merged = merge_caches(
        [("a", _cache({"0;4": ("2", "oracle")})), ("b", _cache({"1;4": ("1", "resolvent")}))]
    )
    assert set(merged.entries) == {"0;4", "1;4"}


def test_merge_duplicate_is_unchanged() -> None:
    first = _cache({"0;4": ("2", "oracle")})
    merged = merge_caches([("a", first), ("b", first)])
    assert merged.entries == first.entries


def test_merge_conflict_names_both_sources(tmp_path: Path) -> None:
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    save_cache(_cache({"0;4": ("2", "oracle")}), a)
    save_cache(_cache({"0;4": ("3", "resolvent")}), b)
    with pytest.raises(CacheConflict) as exc_info:
        cache_merge([a, b])
    assert str(a) in exc_info.value.sources[0]
    assert str(b) in exc_info.value.sources[1]
