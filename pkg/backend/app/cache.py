import logging
import os
from collections.abc import Iterable, Sequence
from pathlib import Path

from tenacity import (
    after_log,
    before_log,
    retry,
    retry_if_exception_type,
    stop_after_attempt,
    wait_fixed,
)

from app.core.errors import CacheConflict
from app.models import MAP_CACHE_VERSION, CacheEntry, MapCache, Producer, cache_key

logger = logging.getLogger(__name__)

max_tries = 5
wait_seconds = 0.2


def lookup(cache: MapCache, g: int, indices: Sequence[int]) -> int | None:
    entry = cache.entries.get(cache_key(g, list(indices)))
    return None if entry is None else int(entry.value)


def record(
    *, cache: MapCache, g: int, indices: Sequence[int], value: int, producer: Producer
) -> None:
    """Insert one map count; a different stored value raises CacheConflict."""
    key = cache_key(g, list(indices))
    _insert(cache, key, CacheEntry(value=str(value), producer=producer))


def _insert(cache: MapCache, key: str, entry: CacheEntry) -> None:
    existing = cache.entries.get(key)
    if existing is None:
        cache.entries[key] = entry
        return
    if existing.value != entry.value:
        raise CacheConflict(
            key,
            [existing.value, entry.value],
            [existing.producer, entry.producer],
        )


def load_cache(path: Path) -> MapCache:
    if not path.exists():
        logger.info("No map cache at %s, starting empty", path)
        return MapCache()
    cache = MapCache.model_validate_json(path.read_text(encoding="utf-8"))
    if cache.version != MAP_CACHE_VERSION:
        raise ValueError(
            f"Unsupported map cache version {cache.version} in {path}"
        )
    logger.debug("Loaded %d map counts from %s", len(cache.entries), path)
    return cache


@retry(
    retry=retry_if_exception_type(OSError),
    stop=stop_after_attempt(max_tries),
    wait=wait_fixed(wait_seconds),
    before=before_log(logger, logging.DEBUG),
    after=after_log(logger, logging.WARN),
    reraise=True,
)
def _replace(tmp_path: Path, path: Path) -> None:
    os.replace(tmp_path, path)


def save_cache(cache: MapCache, path: Path) -> None:
    """Write atomically: sibling temp file, then ``os.replace``."""
    ordered = MapCache(
        version=cache.version,
        entries={key: cache.entries[key] for key in sorted(cache.entries)},
    )
    path.parent.mkdir(parents=True, exist_ok=True)
    tmp_path = path.with_name(f".{path.name}.tmp")
    tmp_path.write_text(ordered.model_dump_json(indent=2) + "\n", encoding="utf-8")
    _replace(tmp_path, path)
    logger.info("Saved %d map counts to %s", len(ordered.entries), path)


def merge_caches(caches: Iterable[tuple[str, MapCache]]) -> MapCache:
    """Union of named caches; disagreeing values abort with both provenances."""
    merged = MapCache()
    origins: dict[str, str] = {}
    for source, cache in caches:
        for key, entry in sorted(cache.entries.items()):
            existing = merged.entries.get(key)
            if existing is not None and existing.value != entry.value:
                raise CacheConflict(
                    key,
                    [existing.value, entry.value],
                    [
                        f"{existing.producer} ({origins[key]})",
                        f"{entry.producer} ({source})",
                    ],
                )
            merged.entries.setdefault(key, entry)
            origins.setdefault(key, source)
    logger.info("Merged %d map counts", len(merged.entries))
    return merged


def cache_merge(paths: Sequence[Path]) -> MapCache:
    return merge_caches((str(path), load_cache(path)) for path in paths)
