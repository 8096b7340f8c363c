"""
xlog.py
=======
``XLogPoly``: sparse sums of ``c · x^p (log x)^q ζ'(-1)^z`` with rational
coefficients.

``log x`` and ``ζ'(-1)`` are opaque symbols: nothing is ever evaluated
numerically, only differentiated (``∂_x log x = 1/x``, ``∂_x ζ'(-1) = 0``)
and multiplied. Negative x-exponents are allowed everywhere.
"""

from __future__ import annotations

from collections.abc import Iterator, Mapping
from fractions import Fraction

from app.exact.rational import rat_str

# (x-exponent, log-degree, zeta'(-1)-degree)
XLogKey = tuple[int, int, int]

Scalar = Fraction | int


class XLogPoly:
    """Immutable sparse polynomial in ``x^{±1}``, ``log x`` and ``ζ'(-1)``."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[XLogKey, Scalar] | None = None) -> None:
        cleaned: dict[XLogKey, Fraction] = {}
        if terms:
            for key, coeff in terms.items():
                _, log_degree, zeta_degree = key
                if log_degree < 0 or zeta_degree not in (0, 1):
                    raise ValueError(f"Invalid XLog term key {key}")
                if coeff:
                    cleaned[key] = Fraction(coeff)
        self._terms = cleaned

    # ------------------------------------------------------------------
    # Constructors
    # ------------------------------------------------------------------

    @classmethod
    def constant(cls, c: Scalar) -> XLogPoly:
        return cls({(0, 0, 0): c})

    @classmethod
    def monomial(
        cls, p: int, q: int = 0, z: int = 0, coeff: Scalar = 1
    ) -> XLogPoly:
        return cls({(p, q, z): coeff})

    @classmethod
    def x(cls) -> XLogPoly:
        return cls.monomial(1)

    @classmethod
    def log_x(cls) -> XLogPoly:
        return cls.monomial(0, 1)

    @classmethod
    def zeta_prime(cls) -> XLogPoly:
        return cls.monomial(0, 0, 1)

    @classmethod
    def zero(cls) -> XLogPoly:
        return cls()

    # ------------------------------------------------------------------
    # Inspection
    # ------------------------------------------------------------------

    def items(self) -> Iterator[tuple[XLogKey, Fraction]]:
        return iter(sorted(self._terms.items()))

    def coefficient(self, p: int, q: int = 0, z: int = 0) -> Fraction:
        return self._terms.get((p, q, z), Fraction(0))

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def has_log(self) -> bool:
        return any(q for (_, q, _) in self._terms)

    def is_polynomial(self) -> bool:
        """True when every term is ``c x^p`` with ``p >= 0`` and no symbols."""
        return all(p >= 0 and q == 0 and z == 0 for (p, q, z) in self._terms)

    def log_multiple(self) -> int | None:
        """Return ``a`` if ``self == a·log x`` with integer ``a``, else ``None``."""
        if not self._terms:
            return 0
        if set(self._terms) != {(0, 1, 0)}:
            return None
        a = self._terms[(0, 1, 0)]
        return a.numerator if a.denominator == 1 else None

    # ------------------------------------------------------------------
    # Arithmetic
    # ------------------------------------------------------------------

    def __add__(self, other: XLogPoly | Scalar) -> XLogPoly:
        rhs = _coerce(other)
        terms = dict(self._terms)
        for key, coeff in rhs._terms.items():
            terms[key] = terms.get(key, Fraction(0)) + coeff
        return XLogPoly(terms)

    __radd__ = __add__

    def __neg__(self) -> XLogPoly:
        return XLogPoly({key: -coeff for key, coeff in self._terms.items()})

    def __sub__(self, other: XLogPoly | Scalar) -> XLogPoly:
        return self + (-_coerce(other))

    def __rsub__(self, other: XLogPoly | Scalar) -> XLogPoly:
        return _coerce(other) - self

    def scale(self, c: Scalar) -> XLogPoly:
        if not c:
            return XLogPoly()
        factor = Fraction(c)
        return XLogPoly({key: factor * coeff for key, coeff in self._terms.items()})

    def __mul__(self, other: XLogPoly | Scalar) -> XLogPoly:
        if not isinstance(other, XLogPoly):
            return self.scale(other)
        terms: dict[XLogKey, Fraction] = {}
        for (p1, q1, z1), c1 in self._terms.items():
            for (p2, q2, z2), c2 in other._terms.items():
                if z1 + z2 > 1:
                    raise ValueError("ζ'(-1) appears at most linearly")
                key = (p1 + p2, q1 + q2, z1 + z2)
                terms[key] = terms.get(key, Fraction(0)) + c1 * c2
        return XLogPoly(terms)

    __rmul__ = __mul__

    def times_x_power(self, k: int) -> XLogPoly:
        return XLogPoly({(p + k, q, z): c for (p, q, z), c in self._terms.items()})

    def derivative(self, times: int = 1) -> XLogPoly:
        result = self
        for _ in range(times):
            if not result._terms:
                break
            terms: dict[XLogKey, Fraction] = {}
            for (p, q, z), c in result._terms.items():
                if p:
                    key = (p - 1, q, z)
                    terms[key] = terms.get(key, Fraction(0)) + p * c
                if q:
                    key = (p - 1, q - 1, z)
                    terms[key] = terms.get(key, Fraction(0)) + q * c
            result = XLogPoly(terms)
        return result

    # ------------------------------------------------------------------
    # Comparison / serialization
    # ------------------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int | Fraction):
            other = XLogPoly.constant(other)
        if not isinstance(other, XLogPoly):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        return hash(frozenset(self._terms.items()))

    def to_json(self) -> dict[str, str]:
        return {f"{p},{q},{z}": rat_str(c) for (p, q, z), c in self.items()}

    def __repr__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for (p, q, z), c in self.items():
            factors = [rat_str(c)]
            if p:
                factors.append(f"x^{p}")
            if q:
                factors.append(f"log(x)^{q}")
            if z:
                factors.append("zeta'(-1)")
            parts.append("*".join(factors))
        return " + ".join(parts)


def _coerce(value: XLogPoly | Scalar) -> XLogPoly:
    if isinstance(value, XLogPoly):
        return value
    return XLogPoly.constant(value)
