"""
specialized.py
==============
The resolvent on the GUE initial data ``v ≡ 0``, ``w ≡ x``, solved directly
in homogeneous polynomials of ``(x, ε)`` cut above a fixed ε power, and the
one- and two-point map counts read off from it.

On this data every entry ``R_k`` is homogeneous in ``(x, ε)``, so an entry is
stored as its degree plus the integer coefficients of
``x^{deg−q} ε^q`` for ``q = 0 … q_max``.

One-point: ``ε(Λ−1) ∂F/∂s_i |_{s=0} = [λ^{−i−1}] Λ(R_21)``.
Two-point: ``Σ_{i,j} ε² ∂²F/∂s_i∂s_j |_{s=0} X^{i−1} Y^{j−1}
= (tr R(λ)R(μ) − 1)/(X − Y)²`` with ``X = λ⁻¹``, ``Y = μ⁻¹``.
"""

from __future__ import annotations

import logging
import math
from collections.abc import Iterable

from app.cache import lookup, record
from app.gue.wick import canonical, vertex_count
from app.models import MapCache
from app.toda.resolvent import ResolventEntries, solve_entries, twopoint_antidiagonal

logger = logging.getLogger(__name__)


class XEPoly:
    """Homogeneous ``Σ_q c_q x^{deg−q} ε^q`` with ``q ≤ q_max``, integer coefficients."""

    __slots__ = ("coeffs", "degree")

    def __init__(self, degree: int, coeffs: Iterable[int]) -> None:
        self.degree = degree
        self.coeffs = tuple(coeffs)

    @classmethod
    def zero(cls, q_max: int) -> XEPoly:
        return cls(0, [0] * (q_max + 1))

    @classmethod
    def constant(cls, c: int, q_max: int) -> XEPoly:
        return cls(0, [c] + [0] * q_max)

    @classmethod
    def x(cls, q_max: int) -> XEPoly:
        return cls(1, [1] + [0] * q_max)

    @property
    def q_max(self) -> int:
        return len(self.coeffs) - 1

    def __bool__(self) -> bool:
        return any(self.coeffs)

    def _align(self, other: XEPoly | int) -> XEPoly:
        if isinstance(other, int):
            return XEPoly.constant(other, self.q_max)
        return other

    def __add__(self, other: XEPoly | int) -> XEPoly:
        rhs = self._align(other)
        if not rhs:
            return self
        if not self:
            return rhs
        if rhs.degree != self.degree:
            raise ValueError(
                f"adding (x, ε) polynomials of degrees {self.degree} and {rhs.degree}"
            )
        return XEPoly(self.degree, (p + q for p, q in zip(self.coeffs, rhs.coeffs)))

    def __neg__(self) -> XEPoly:
        return XEPoly(self.degree, (-p for p in self.coeffs))

    def __sub__(self, other: XEPoly | int) -> XEPoly:
        return self + (-self._align(other))

    def __mul__(self, other: XEPoly | int) -> XEPoly:
        if isinstance(other, int):
            return XEPoly(self.degree, (p * other for p in self.coeffs))
        if not self or not other:
            return XEPoly.zero(self.q_max)
        q_max = self.q_max
        out = [0] * (q_max + 1)
        for q1, p1 in enumerate(self.coeffs):
            if not p1:
                continue
            for q2 in range(q_max + 1 - q1):
                p2 = other.coeffs[q2]
                if p2:
                    out[q1 + q2] += p1 * p2
        return XEPoly(self.degree + other.degree, out)

    def shift(self, k: int) -> XEPoly:
        """``Λ^k``: ``x ↦ x + kε``."""
        if k == 0 or not self:
            return self
        out = [0] * (self.q_max + 1)
        for q, p in enumerate(self.coeffs):
            if not p:
                continue
            power = self.degree - q
            for r in range(self.q_max + 1 - q):
                out[q + r] += p * math.comb(power, r) * k**r
        return XEPoly(self.degree, out)

    def coefficient(self, q: int) -> int:
        """Coefficient of ``x^{deg−q} ε^q``."""
        return self.coeffs[q] if q <= self.q_max else 0

    def __repr__(self) -> str:
        terms = [
            f"{p}*x^{self.degree - q}*eps^{q}" for q, p in enumerate(self.coeffs) if p
        ]
        return " + ".join(terms) or "0"


def _shift(value: XEPoly, k: int) -> XEPoly:
    return value.shift(k)


class InitialDataResolvent:
    """Lazily deepened resolvent on ``v ≡ 0, w ≡ x`` cut at ``ε^{q_max}``."""

    def __init__(self, q_max: int) -> None:
        self.q_max = q_max
        self._entries: ResolventEntries | None = None

    def entries(self, depth: int) -> ResolventEntries:
        if self._entries is None or self._entries.depth < depth:
            logger.info(
                "Solving the initial-data resolvent to depth %d (ε^%d)",
                depth,
                self.q_max,
            )
            self._entries = solve_entries(
                XEPoly.zero(self.q_max), XEPoly.x(self.q_max), depth, _shift
            )
        return self._entries


_solvers: dict[int, InitialDataResolvent] = {}


def initial_data_resolvent(q_max: int) -> InitialDataResolvent:
    if q_max not in _solvers:
        _solvers[q_max] = InitialDataResolvent(q_max)
    return _solvers[q_max]


def _q_budget(g_max: int) -> int:
    return 2 * g_max


# ---------------------------------------------------------------------------
# One-point
# ---------------------------------------------------------------------------


def onepoint_genus_ladder(i: int, g_max: int) -> list[int]:
    """``[Map_0(i), …, Map_{g_max}(i)]`` from ``Λ(c_{i+1})``.

    ``[ε^{2g} x^{p_g − 1}] Λ(c_{i+1}) = Σ_{g' ≤ g} C(p_{g'}, 2(g−g')+1) Map_{g'}(i)``
    with ``p_g = 1 − 2g + i/2``, solved upwards in ``g``.
    """
    if i % 2:
        return [0] * (g_max + 1)
    solver = initial_data_resolvent(_q_budget(g_max))
    shifted = solver.entries(i + 1).c[i + 1].shift(1)
    values: list[int] = []
    for g in range(g_max + 1):
        p_g = 1 - 2 * g + i // 2
        if p_g < 1:
            values.append(0)
            continue
        known = shifted.coefficient(2 * g)
        for h, value in enumerate(values):
            known -= math.comb(1 - 2 * h + i // 2, 2 * (g - h) + 1) * value
        if known % p_g:
            raise ArithmeticError(f"one-point extraction for i={i}, g={g} is not integral")
        values.append(known // p_g)
    return values


def onepoint_correlators_via_resolvent(
    i_max: int, g_max: int
) -> dict[tuple[int, int], int]:
    """``{(g, i): Map_g(i)}`` for ``1 ≤ i ≤ i_max``, ``g ≤ g_max``."""
    table: dict[tuple[int, int], int] = {}
    for i in range(1, i_max + 1):
        for g, value in enumerate(onepoint_genus_ladder(i, g_max)):
            table[(g, i)] = value
    return table


# ---------------------------------------------------------------------------
# Two-point
# ---------------------------------------------------------------------------


def twopoint_genus_ladder(i: int, j: int, g_max: int) -> list[int]:
    """``[Map_0(i, j), …, Map_{g_max}(i, j)]``."""
    if (i + j) % 2:
        return [0] * (g_max + 1)
    q_max = _q_budget(g_max)
    total = i + j
    entries = initial_data_resolvent(q_max).entries(total)
    twice, remainders = twopoint_antidiagonal(entries, total, XEPoly.zero(q_max))
    if any(remainders):
        raise ArithmeticError(f"antidiagonal {total} is not divisible by (X - Y)^2")
    value = twice[(i - 1, j - 1)]
    ladder = []
    for g in range(g_max + 1):
        if vertex_count(g, (i, j)) < 1:
            ladder.append(0)
        else:
            ladder.append(value.coefficient(2 * g))
    return ladder


def twopoint_correlators_via_resolvent(
    i_max: int, j_max: int, g_max: int
) -> dict[tuple[int, int, int], int]:
    """``{(g, i, j): Map_g(i, j)}`` for ``i ≤ i_max``, ``j ≤ j_max``."""
    table: dict[tuple[int, int, int], int] = {}
    for i in range(1, i_max + 1):
        for j in range(1, j_max + 1):
            for g, value in enumerate(twopoint_genus_ladder(i, j, g_max)):
                table[(g, i, j)] = value
    return table


def resolvent_map_count(
    g: int, indices: Iterable[int], cache: MapCache | None = None
) -> int:
    """One- or two-point ``Map_g(i)`` from the initial-data resolvent."""
    key = canonical(indices)
    if len(key) not in (1, 2):
        raise ValueError(f"the resolvent supplies one- and two-point counts, got {key}")
    if g < 0 or sum(key) % 2 or vertex_count(g, key) < 1:
        return 0
    if cache is not None:
        cached = lookup(cache, g, key)
        if cached is not None:
            return cached
    if len(key) == 1:
        ladder = onepoint_genus_ladder(key[0], g)
    else:
        ladder = twopoint_genus_ladder(key[0], key[1], g)
    if cache is not None:
        for genus, value in enumerate(ladder):
            if vertex_count(genus, key) >= 1:
                record(cache=cache, g=genus, indices=key, value=value, producer="resolvent")
    return ladder[g]
