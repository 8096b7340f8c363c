"""
wick.py
=======
``WickOracle``: exact GUE correlators ``<tr M^{i_1} ... tr M^{i_n}>`` as
polynomials in the matrix size ``N``, by enumerating Wick pairings.

Half-edges ``0 … |i|-1`` sit on ``n`` cyclic vertices of valences ``i_a``;
``γ`` sends a half-edge to the next one around its vertex. Every perfect
matching ``μ`` contributes ``N^{c(γ∘μ)}`` where ``c`` counts cycles.

Typical usage
-------------
::

    oracle = WickOracle(bound=12)
    oracle.full_correlator((4,))          # 2N^3 + N
    oracle.map_count(1, (4,))             # 1
"""

from __future__ import annotations

import logging
import math
from collections import Counter
from collections.abc import Iterable, Sequence
from concurrent.futures import ProcessPoolExecutor
from functools import lru_cache
from typing import Any

from sympy.polys.domains import ZZ
from sympy.polys.orderings import lex
from sympy.polys.rings import PolyRing
from sympy.utilities.iterables import multiset_partitions

from app.cache import lookup, record
from app.core.config import WICK_HARD_CAP, settings
from app.core.errors import BoundExceeded
from app.models import MapCache

logger = logging.getLogger(__name__)

N_RING = PolyRing(("N",), ZZ, lex)

# Below this many half-edges a process pool costs more than it saves.
_PARALLEL_MIN_HALF_EDGES = 10

IndexMultiset = tuple[int, ...]
CorrPolyN = Any  # element of N_RING


def canonical(indices: Iterable[int]) -> IndexMultiset:
    """Sorted tuple of positive integers; the key every cache uses."""
    result = tuple(sorted(int(i) for i in indices))
    if any(i < 1 for i in result):
        raise ValueError(f"indices must be positive, got {result}")
    return result


def vertex_count(g: int, indices: IndexMultiset) -> int:
    """``2 − 2g + |i|/2 − n``, the N-exponent carrying genus ``g``."""
    return 2 - 2 * g + sum(indices) // 2 - len(indices)


def corr_coefficient(poly: CorrPolyN, exponent: int) -> int:
    if exponent < 0:
        return 0
    return int(poly.get((exponent,), ZZ.zero))


def corr_to_dict(poly: CorrPolyN) -> dict[int, int]:
    return {int(monom[0]): int(coeff) for monom, coeff in sorted(poly.items())}


# ---------------------------------------------------------------------------
# Matching enumeration
# ---------------------------------------------------------------------------


def _vertex_cycle(valences: Sequence[int]) -> list[int]:
    gamma: list[int] = []
    start = 0
    for valence in valences:
        gamma.extend(start + (k + 1) % valence for k in range(valence))
        start += valence
    return gamma


def _count_cycles(gamma: list[int], mu: list[int]) -> int:
    seen = 0
    cycles = 0
    for start in range(len(mu)):
        if seen >> start & 1:
            continue
        cycles += 1
        h = start
        while not seen >> h & 1:
            seen |= 1 << h
            h = gamma[mu[h]]
    return cycles


def _walk(gamma: list[int], mu: list[int], start: int, hist: Counter[int]) -> None:
    m = len(mu)
    first = start
    while first < m and mu[first] >= 0:
        first += 1
    if first == m:
        hist[_count_cycles(gamma, mu)] += 1
        return
    for partner in range(first + 1, m):
        if mu[partner] < 0:
            mu[first] = partner
            mu[partner] = first
            _walk(gamma, mu, first + 1, hist)
            mu[first] = mu[partner] = -1


def cycle_histogram(
    valences: Sequence[int], first_partner: int | None = None
) -> dict[int, int]:
    """``{cycle count: number of matchings}``, optionally with half-edge 0 fixed."""
    gamma = _vertex_cycle(valences)
    m = len(gamma)
    mu = [-1] * m
    hist: Counter[int] = Counter()
    if m == 0:
        hist[0] += 1
        return dict(hist)
    if first_partner is None:
        _walk(gamma, mu, 0, hist)
    else:
        mu[0] = first_partner
        mu[first_partner] = 0
        _walk(gamma, mu, 1, hist)
    return dict(hist)


# ---------------------------------------------------------------------------
# WickOracle
# ---------------------------------------------------------------------------


class WickOracle:
    """Full and connected GUE correlators with per-instance memoization.

    Attributes:
        bound: Largest ``|i|`` the enumerator accepts.
        workers: Process count for the first-pairing split.
        cache: Optional persistent map-count cache, consulted first and
            extended with every genus of each connected correlator computed.
    """

    def __init__(
        self,
        *,
        bound: int | None = None,
        workers: int | None = None,
        cache: MapCache | None = None,
    ) -> None:
        self.bound = settings.WICK_BOUND if bound is None else bound
        if self.bound > WICK_HARD_CAP:
            raise ValueError(
                f"Wick bound {self.bound} exceeds the hard cap {WICK_HARD_CAP}"
            )
        self.workers = settings.WORKERS if workers is None else workers
        self.cache = cache
        self._full: dict[IndexMultiset, CorrPolyN] = {}
        self._connected: dict[IndexMultiset, CorrPolyN] = {}

    def _check_bound(self, indices: IndexMultiset) -> None:
        total = sum(indices)
        if total > self.bound:
            raise BoundExceeded(
                f"|i| = {total} exceeds the Wick enumeration bound {self.bound}"
            )

    def full_correlator(self, indices: Iterable[int]) -> CorrPolyN:
        key = canonical(indices)
        if sum(key) % 2:
            return N_RING.zero
        self._check_bound(key)
        if key in self._full:
            return self._full[key]
        m = sum(key)
        if self.workers > 1 and m >= _PARALLEL_MIN_HALF_EDGES:
            hist: Counter[int] = Counter()
            with ProcessPoolExecutor(max_workers=self.workers) as pool:
                futures = [
                    pool.submit(cycle_histogram, key, partner)
                    for partner in range(1, m)
                ]
                for future in futures:
                    hist.update(future.result())
        else:
            hist = Counter(cycle_histogram(key))
        poly = N_RING.from_dict({(c,): ZZ(n) for c, n in sorted(hist.items())})
        logger.debug(
            "full correlator %s: %d matchings", key, math.prod(range(m - 1, 0, -2))
        )
        self._full[key] = poly
        return poly

    def connected_correlator(self, indices: Iterable[int]) -> CorrPolyN:
        key = canonical(indices)
        if not key or sum(key) % 2:
            return N_RING.zero
        if key in self._connected:
            return self._connected[key]
        self._check_bound(key)
        n = len(key)
        total = N_RING.zero
        for partition in multiset_partitions(list(range(n))):
            blocks = len(partition)
            term = N_RING(
                (-1) ** (blocks - 1) * math.factorial(blocks - 1)
            )
            for block in partition:
                term *= self.full_correlator(key[a] for a in block)
                if not term:
                    break
            total += term
        self._connected[key] = total
        return total

    def map_count(self, g: int, indices: Iterable[int]) -> int:
        key = canonical(indices)
        if g < 0 or not key or sum(key) % 2:
            return 0
        exponent = vertex_count(g, key)
        if exponent < 1:
            return 0
        if self.cache is not None:
            cached = lookup(self.cache, g, key)
            if cached is not None:
                return cached
        poly = self.connected_correlator(key)
        value = corr_coefficient(poly, exponent)
        if self.cache is not None:
            for genus in range(0, (1 - len(key) + sum(key) // 2) // 2 + 1):
                record(
                    cache=self.cache,
                    g=genus,
                    indices=key,
                    value=corr_coefficient(poly, vertex_count(genus, key)),
                    producer="oracle",
                )
        return value


@lru_cache(maxsize=1)
def default_oracle() -> WickOracle:
    return WickOracle()


def full_correlator(indices: Iterable[int]) -> CorrPolyN:
    return default_oracle().full_correlator(indices)


def connected_correlator(indices: Iterable[int]) -> CorrPolyN:
    return default_oracle().connected_correlator(indices)


def map_count(g: int, indices: Iterable[int]) -> int:
    return default_oracle().map_count(g, indices)
