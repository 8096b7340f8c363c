"""
homogeneous.py
==============
``HomogPoly``: homogeneous polynomials in ``x1 … xn`` over ℚ, backed by a
sympy sparse polynomial ring. Used for the Witten n-point functions.
"""

from __future__ import annotations

from collections.abc import Iterator, Mapping, Sequence
from fractions import Fraction
from functools import lru_cache
from typing import Any

from sympy.polys.domains import QQ
from sympy.polys.orderings import lex
from sympy.polys.polyerrors import ExactQuotientFailed
from sympy.polys.rings import PolyRing

from app.core.errors import NonExactDivision
from app.exact.rational import from_domain, rat_str, to_qq

Monomial = tuple[int, ...]


@lru_cache(maxsize=None)
def homog_ring(n: int) -> PolyRing:
    if n < 1:
        raise ValueError(f"need at least one variable, got {n}")
    return PolyRing(tuple(f"x{a}" for a in range(1, n + 1)), QQ, lex)


class HomogPoly:
    """A homogeneous element of ``ℚ[x1, …, xn]``.

    The zero polynomial has ``degree`` None and is homogeneous of every degree.
    """

    __slots__ = ("n", "poly", "degree")

    def __init__(self, n: int, poly: Any) -> None:
        self.n = n
        self.poly = poly
        degrees = {sum(m) for m in poly.keys()}
        if len(degrees) > 1:
            raise ValueError(f"not homogeneous: degrees {sorted(degrees)}")
        self.degree: int | None = degrees.pop() if degrees else None

    # ------------------------------------------------------------------
    # Constructors
    # ------------------------------------------------------------------

    @classmethod
    def from_terms(cls, n: int, terms: Mapping[Monomial, Fraction | int]) -> HomogPoly:
        ring = homog_ring(n)
        for monom in terms:
            if len(monom) != n:
                raise ValueError(f"exponent {monom} does not have {n} entries")
        return cls(n, ring.from_dict({m: to_qq(c) for m, c in terms.items() if c}))

    @classmethod
    def zero(cls, n: int) -> HomogPoly:
        return cls(n, homog_ring(n).zero)

    @classmethod
    def constant(cls, n: int, c: Fraction | int) -> HomogPoly:
        return cls(n, homog_ring(n).ground_new(to_qq(c)))

    @classmethod
    def variable(cls, n: int, a: int) -> HomogPoly:
        """``x_{a+1}`` (0-based ``a``)."""
        return cls(n, homog_ring(n).gens[a])

    @classmethod
    def subset_sum(cls, n: int, subset: Sequence[int]) -> HomogPoly:
        """``|x_A| = Σ_{a∈A} x_a`` for 0-based indices."""
        gens = homog_ring(n).gens
        total = homog_ring(n).zero
        for a in subset:
            total += gens[a]
        return cls(n, total)

    # ------------------------------------------------------------------
    # Inspection
    # ------------------------------------------------------------------

    def terms(self) -> Iterator[tuple[Monomial, Fraction]]:
        """Terms in lexicographic exponent order."""
        for monom, coeff in sorted(self.poly.items()):
            yield tuple(monom), from_domain(coeff)

    def coefficient(self, monom: Sequence[int]) -> Fraction:
        key = tuple(monom)
        if len(key) != self.n:
            raise ValueError(f"exponent {key} does not have {self.n} entries")
        return from_domain(self.poly.get(key, QQ.zero))

    def is_zero(self) -> bool:
        return not self.poly

    def __bool__(self) -> bool:
        return bool(self.poly)

    def is_symmetric(self) -> bool:
        table = dict(self.terms())
        return all(
            table.get(tuple(sorted(m)), None) == c for m, c in table.items()
        )

    # ------------------------------------------------------------------
    # Arithmetic
    # ------------------------------------------------------------------

    def _check(self, other: HomogPoly) -> None:
        if other.n != self.n:
            raise ValueError(f"variable count mismatch: {self.n} vs {other.n}")

    def __add__(self, other: HomogPoly) -> HomogPoly:
        self._check(other)
        return HomogPoly(self.n, self.poly + other.poly)

    def __sub__(self, other: HomogPoly) -> HomogPoly:
        self._check(other)
        return HomogPoly(self.n, self.poly - other.poly)

    def __neg__(self) -> HomogPoly:
        return HomogPoly(self.n, -self.poly)

    def __mul__(self, other: HomogPoly | Fraction | int) -> HomogPoly:
        if isinstance(other, HomogPoly):
            self._check(other)
            return HomogPoly(self.n, self.poly * other.poly)
        return HomogPoly(self.n, self.poly * to_qq(other))

    __rmul__ = __mul__

    def __pow__(self, k: int) -> HomogPoly:
        return HomogPoly(self.n, self.poly**k)

    def embed(self, n_total: int, positions: Sequence[int]) -> HomogPoly:
        """Rename ``x_{k+1}`` to ``x_{positions[k]+1}`` inside ``n_total`` variables."""
        if len(positions) != self.n:
            raise ValueError("one position per variable is required")
        terms: dict[Monomial, Fraction] = {}
        for monom, coeff in self.terms():
            full = [0] * n_total
            for k, e in enumerate(monom):
                full[positions[k]] += e
            terms[tuple(full)] = terms.get(tuple(full), Fraction(0)) + coeff
        return HomogPoly.from_terms(n_total, terms)

    def restrict(self, keep: int) -> HomogPoly:
        """Set every variable past the first ``keep`` to zero."""
        terms = {
            monom[:keep]: coeff
            for monom, coeff in self.terms()
            if not any(monom[keep:])
        }
        return HomogPoly.from_terms(keep, terms)

    def evaluate(self, point: Sequence[Fraction | int]) -> Fraction:
        if len(point) != self.n:
            raise ValueError(f"point needs {self.n} coordinates")
        total = Fraction(0)
        for monom, coeff in self.terms():
            value = coeff
            for base, e in zip(point, monom):
                value *= Fraction(base) ** e
            total += value
        return total

    # ------------------------------------------------------------------
    # Comparison / serialization
    # ------------------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, HomogPoly):
            return NotImplemented
        return self.n == other.n and self.poly == other.poly

    def __hash__(self) -> int:
        return hash((self.n, tuple(self.terms())))

    def to_json(self) -> dict[str, str]:
        return {
            ",".join(str(e) for e in monom): rat_str(coeff)
            for monom, coeff in self.terms()
        }

    def __repr__(self) -> str:
        return f"HomogPoly(n={self.n}, {self.poly})"


def poly_exact_div(num: HomogPoly, den: HomogPoly) -> HomogPoly:
    """Exact quotient ``num / den``; a nonzero remainder raises NonExactDivision."""
    if num.n != den.n:
        raise ValueError(f"variable count mismatch: {num.n} vs {den.n}")
    if den.is_zero():
        raise ValueError("division by the zero polynomial")
    try:
        quotient = num.poly.exquo(den.poly)
    except ExactQuotientFailed as exc:
        raise NonExactDivision(f"{num.poly} is not divisible by {den.poly}") from exc
    return HomogPoly(num.n, quotient)
