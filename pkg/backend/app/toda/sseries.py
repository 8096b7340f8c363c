"""
sseries.py
==========
``SSeries``: truncated power series in the couplings ``s1, s2, …`` whose
coefficients are ``EpsSeries``. Houses the GUE free energy, the partition
function, the Toda solution ``(v, w)`` and their even restrictions.

A coefficient is stored under the sorted tuple of coupling indices of its
monomial, so ``F`` holds ``Map_g(i)/∏ m_k! · ε^{2g-2} x^{...}`` under ``i``.

The truncation ``Box(max_weight, max_count)`` marks which coefficients are
known: every monomial with total index weight ``≤ max_weight`` and at most
``max_count`` factors. ``None`` means unbounded.
"""

from __future__ import annotations

import itertools
from collections.abc import Callable, Iterator, Mapping
from dataclasses import dataclass
from fractions import Fraction

from app.core.errors import TruncationMismatch
from app.exact.series import EpsSeries
from app.exact.xlog import Scalar, XLogPoly

Monomial = tuple[int, ...]


def _min_bound(a: int | None, b: int | None) -> int | None:
    if a is None:
        return b
    if b is None:
        return a
    return min(a, b)


def _shift_bound(a: int | None, k: int) -> int | None:
    return None if a is None else a + k


@dataclass(frozen=True)
class Box:
    max_weight: int | None = None
    max_count: int | None = None

    def contains(self, monom: Monomial) -> bool:
        if self.max_weight is not None and sum(monom) > self.max_weight:
            return False
        if self.max_count is not None and len(monom) > self.max_count:
            return False
        return True

    def meet(self, other: Box) -> Box:
        return Box(
            _min_bound(self.max_weight, other.max_weight),
            _min_bound(self.max_count, other.max_count),
        )

    def after_derivative(self, i: int) -> Box:
        return Box(_shift_bound(self.max_weight, -i), _shift_bound(self.max_count, -1))

    def after_coupling(self, i: int) -> Box:
        return Box(_shift_bound(self.max_weight, i), _shift_bound(self.max_count, 1))

    def is_empty(self) -> bool:
        return (self.max_weight is not None and self.max_weight < 0) or (
            self.max_count is not None and self.max_count < 0
        )

    def monomials(self, indices: Callable[[int], bool] | None = None) -> list[Monomial]:
        """Every monomial inside the box, optionally restricted to some indices."""
        if self.max_weight is None:
            raise ValueError("cannot enumerate an unbounded box")
        if self.is_empty():
            return []
        allowed = [
            i
            for i in range(1, self.max_weight + 1)
            if indices is None or indices(i)
        ]
        count = self.max_count if self.max_count is not None else self.max_weight
        result: list[Monomial] = [()]
        for n in range(1, count + 1):
            for monom in itertools.combinations_with_replacement(allowed, n):
                if sum(monom) <= self.max_weight:
                    result.append(monom)
        return result


def monomial_label(monom: Monomial) -> str:
    if not monom:
        return "1"
    parts = []
    for i, group in itertools.groupby(monom):
        k = len(list(group))
        parts.append(f"s{i}" if k == 1 else f"s{i}^{k}")
    return "*".join(parts)


def merge_monomials(a: Monomial, b: Monomial) -> Monomial:
    return tuple(sorted(a + b))


class SSeries:
    """Immutable truncated series in the couplings with ``EpsSeries`` coefficients."""

    __slots__ = ("_coeffs", "box")

    def __init__(
        self, coeffs: Mapping[Monomial, EpsSeries] | None = None, box: Box = Box()
    ) -> None:
        cleaned: dict[Monomial, EpsSeries] = {}
        if coeffs:
            for monom, c in coeffs.items():
                if not box.contains(monom):
                    continue
                # an empty but truncated coefficient still carries information
                if c or not c.is_exact():
                    cleaned[monom] = c
        self._coeffs = cleaned
        self.box = box

    # ------------------------------------------------------------------
    # Constructors
    # ------------------------------------------------------------------

    @classmethod
    def constant(
        cls, c: EpsSeries | XLogPoly | Scalar, box: Box = Box()
    ) -> SSeries:
        if not isinstance(c, EpsSeries):
            c = EpsSeries.constant(c)
        return cls({(): c}, box)

    @classmethod
    def coupling(cls, i: int) -> SSeries:
        return cls({(i,): EpsSeries.constant(1)})

    # ------------------------------------------------------------------
    # Inspection
    # ------------------------------------------------------------------

    def items(self) -> Iterator[tuple[Monomial, EpsSeries]]:
        return iter(sorted(self._coeffs.items()))

    def monomials(self) -> list[Monomial]:
        return sorted(self._coeffs)

    def coefficient(self, monom: Monomial) -> EpsSeries:
        key = tuple(sorted(monom))
        if not self.box.contains(key):
            raise TruncationMismatch(
                f"{monomial_label(key)} lies outside the truncation {self.box}"
            )
        return self._coeffs.get(key, EpsSeries.zero())

    def s_free(self) -> EpsSeries:
        return self.coefficient(())

    def eps_order(self) -> int | None:
        orders = [c.order for c in self._coeffs.values() if c.order is not None]
        return min(orders) if orders else None

    def is_zero(self) -> bool:
        return all(not c for c in self._coeffs.values())

    # ------------------------------------------------------------------
    # Arithmetic
    # ------------------------------------------------------------------

    def __add__(self, other: SSeries | EpsSeries | XLogPoly | Scalar) -> SSeries:
        rhs = other if isinstance(other, SSeries) else SSeries.constant(other)
        coeffs = dict(self._coeffs)
        for monom, c in rhs._coeffs.items():
            coeffs[monom] = coeffs[monom] + c if monom in coeffs else c
        return SSeries(coeffs, self.box.meet(rhs.box))

    __radd__ = __add__

    def __neg__(self) -> SSeries:
        return SSeries({m: -c for m, c in self._coeffs.items()}, self.box)

    def __sub__(self, other: SSeries | EpsSeries | XLogPoly | Scalar) -> SSeries:
        rhs = other if isinstance(other, SSeries) else SSeries.constant(other)
        return self + (-rhs)

    def __rsub__(self, other: EpsSeries | XLogPoly | Scalar) -> SSeries:
        return SSeries.constant(other) - self

    def __mul__(self, other: SSeries | EpsSeries | XLogPoly | Scalar) -> SSeries:
        if not isinstance(other, SSeries):
            return SSeries({m: c * other for m, c in self._coeffs.items()}, self.box)
        box = self.box.meet(other.box)
        coeffs: dict[Monomial, EpsSeries] = {}
        for m1, c1 in self._coeffs.items():
            for m2, c2 in other._coeffs.items():
                monom = merge_monomials(m1, m2)
                if not box.contains(monom):
                    continue
                prod = c1 * c2
                coeffs[monom] = coeffs[monom] + prod if monom in coeffs else prod
        return SSeries(coeffs, box)

    __rmul__ = __mul__

    def scale(self, c: Scalar) -> SSeries:
        return self * c

    def derivative_s(self, i: int) -> SSeries:
        """``∂/∂s_i``."""
        coeffs: dict[Monomial, EpsSeries] = {}
        for monom, c in self._coeffs.items():
            k = monom.count(i)
            if not k:
                continue
            reduced = list(monom)
            reduced.remove(i)
            coeffs[tuple(reduced)] = c.scale(k)
        return SSeries(coeffs, self.box.after_derivative(i))

    def times_coupling(self, i: int) -> SSeries:
        """Multiply by ``s_i``."""
        coeffs = {merge_monomials(m, (i,)): c for m, c in self._coeffs.items()}
        return SSeries(coeffs, self.box.after_coupling(i))

    def map_eps(self, fn: Callable[[EpsSeries], EpsSeries]) -> SSeries:
        """Apply an x/ε operator (shift, ∂_x, …) to every coefficient."""
        return SSeries({m: fn(c) for m, c in self._coeffs.items()}, self.box)

    def derivative_x(self, times: int = 1) -> SSeries:
        return self.map_eps(lambda c: c.derivative(times))

    def truncate(self, box: Box) -> SSeries:
        return SSeries(self._coeffs, self.box.meet(box))

    def truncate_eps(self, order: int | None) -> SSeries:
        return self.map_eps(lambda c: c.truncate(order))

    def without_s_free(self) -> SSeries:
        return SSeries({m: c for m, c in self._coeffs.items() if m}, self.box)

    def restrict_even(self) -> SSeries:
        """Set every odd coupling to zero."""
        return SSeries(
            {m: c for m, c in self._coeffs.items() if all(i % 2 == 0 for i in m)},
            self.box,
        )

    def exp(self, order: int | None = None) -> SSeries:
        """Formal exponential; the s-free factor goes through ``EpsSeries.exp``."""
        head = self._coeffs.get((), EpsSeries.zero())
        head_exp = head.exp(order)
        rest = self.without_s_free()
        if not rest._coeffs:
            return SSeries.constant(head_exp, self.box)
        limit = self.box.max_count if self.box.max_count is not None else self.box.max_weight
        if limit is None:
            raise ValueError("exp of an untruncated coupling series")
        total = SSeries.constant(1, self.box)
        term = SSeries.constant(1, self.box)
        for k in range(1, limit + 1):
            term = (term * rest).scale(Fraction(1, k))
            if not term._coeffs:
                break
            total = total + term
        return total * head_exp

    # ------------------------------------------------------------------
    # Comparison / serialization
    # ------------------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SSeries):
            return NotImplemented
        return self.box == other.box and self._coeffs == other._coeffs

    def __hash__(self) -> int:
        return hash((self.box, frozenset(self._coeffs.items())))

    def to_json(self) -> dict[str, object]:
        return {
            "box": {"max_weight": self.box.max_weight, "max_count": self.box.max_count},
            "terms": {monomial_label(m): c.to_json() for m, c in self.items()},
        }

    def __repr__(self) -> str:
        body = " + ".join(f"[{monomial_label(m)}]({c!r})" for m, c in self.items())
        return f"SSeries({body or '0'}; {self.box})"
