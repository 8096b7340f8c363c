"""Chooses where a map count comes from: closed form, resolvent or Wick enumeration."""

import logging
from collections.abc import Iterable

from app.gue.closed_forms import catalan_onepoint, genus0_twopoint
from app.gue.wick import WickOracle, canonical, default_oracle, vertex_count
from app.models import MapCache
from app.toda.specialized import resolvent_map_count

logger = logging.getLogger(__name__)

CLOSED_FORM = "closed-form"
RESOLVENT = "resolvent"
ORACLE = "oracle"
TRIVIAL = "trivial"


def map_count_backend(
    g: int, indices: Iterable[int], cache: MapCache | None = None
) -> tuple[int, str]:
    """``(Map_g(i), backend)``.

    Genus-0 one- and two-point counts use closed forms, other one- and
    two-point counts the initial-data resolvent, everything else the Wick
    oracle (which raises ``BoundExceeded`` past its bound).
    """
    key = canonical(indices)
    if g < 0 or not key or sum(key) % 2 or vertex_count(g, key) < 1:
        return 0, TRIVIAL
    if g == 0 and len(key) == 1:
        return catalan_onepoint(key[0] // 2), CLOSED_FORM
    if g == 0 and len(key) == 2:
        i1, i2 = key
        if i1 % 2 == 0:
            return genus0_twopoint(i1 // 2, i2 // 2, "even"), CLOSED_FORM
        return genus0_twopoint((i1 + 1) // 2, (i2 + 1) // 2, "odd"), CLOSED_FORM
    if len(key) <= 2:
        return resolvent_map_count(g, key, cache), RESOLVENT
    oracle = default_oracle() if cache is None else WickOracle(cache=cache)
    return oracle.map_count(g, key), ORACLE


def backend_map_count(g: int, indices: Iterable[int]) -> int:
    """``map_count_backend`` without the backend name, as a ``MapCountFn``."""
    return map_count_backend(g, indices)[0]
