"""
series.py
=========
``EpsSeries``: truncated Laurent series in ε with ``XLogPoly`` coefficients,
and the shift calculus built on ``Λ = exp(ε ∂_x)``.

Truncation convention: ``order`` is the largest ε power known exactly.
``order=None`` means the series is exact (every power above the stored ones
is zero). Arithmetic keeps the tightest order that is still correct.
"""

from __future__ import annotations

import logging
import math
from collections.abc import Callable, Iterator, Mapping
from fractions import Fraction

from app.core.errors import TruncationMismatch
from app.exact.rational import bernoulli
from app.exact.xlog import Scalar, XLogPoly

logger = logging.getLogger(__name__)


def _min_order(a: int | None, b: int | None) -> int | None:
    if a is None:
        return b
    if b is None:
        return a
    return min(a, b)


class EpsSeries:
    """Immutable ``Σ_k c_k ε^k`` with ``c_k`` in ``XLogPoly``."""

    __slots__ = ("_coeffs", "order")

    def __init__(
        self,
        coeffs: Mapping[int, XLogPoly] | None = None,
        order: int | None = None,
    ) -> None:
        cleaned: dict[int, XLogPoly] = {}
        if coeffs:
            for k, c in coeffs.items():
                if order is not None and k > order:
                    continue
                if c:
                    cleaned[k] = c
        self._coeffs = cleaned
        self.order = order

    # ------------------------------------------------------------------
    # Constructors
    # ------------------------------------------------------------------

    @classmethod
    def zero(cls, order: int | None = None) -> EpsSeries:
        return cls({}, order)

    @classmethod
    def constant(cls, c: XLogPoly | Scalar, order: int | None = None) -> EpsSeries:
        poly = c if isinstance(c, XLogPoly) else XLogPoly.constant(c)
        return cls({0: poly}, order)

    @classmethod
    def term(
        cls, k: int, c: XLogPoly | Scalar, order: int | None = None
    ) -> EpsSeries:
        poly = c if isinstance(c, XLogPoly) else XLogPoly.constant(c)
        return cls({k: poly}, order)

    @classmethod
    def x(cls) -> EpsSeries:
        return cls.constant(XLogPoly.x())

    # ------------------------------------------------------------------
    # Inspection
    # ------------------------------------------------------------------

    def items(self) -> Iterator[tuple[int, XLogPoly]]:
        return iter(sorted(self._coeffs.items()))

    def powers(self) -> list[int]:
        return sorted(self._coeffs)

    def is_exact(self) -> bool:
        return self.order is None

    def is_zero(self) -> bool:
        """True when every known coefficient vanishes."""
        return not self._coeffs

    def __bool__(self) -> bool:
        return bool(self._coeffs)

    def lowest(self) -> int | None:
        """Lowest ε power that may be nonzero; ``None`` for the exact zero."""
        if self._coeffs:
            return min(self._coeffs)
        if self.order is None:
            return None
        return self.order + 1

    def coefficient(self, k: int) -> XLogPoly:
        if self.order is not None and k > self.order:
            raise TruncationMismatch(
                f"ε^{k} requested from a series known only to ε^{self.order}"
            )
        return self._coeffs.get(k, XLogPoly())

    def truncate(self, order: int | None) -> EpsSeries:
        return EpsSeries(self._coeffs, _min_order(self.order, order))

    # ------------------------------------------------------------------
    # Arithmetic
    # ------------------------------------------------------------------

    def __add__(self, other: EpsSeries | XLogPoly | Scalar) -> EpsSeries:
        rhs = _coerce(other)
        order = _min_order(self.order, rhs.order)
        coeffs = dict(self._coeffs)
        for k, c in rhs._coeffs.items():
            coeffs[k] = coeffs[k] + c if k in coeffs else c
        return EpsSeries(coeffs, order)

    __radd__ = __add__

    def __neg__(self) -> EpsSeries:
        return EpsSeries({k: -c for k, c in self._coeffs.items()}, self.order)

    def __sub__(self, other: EpsSeries | XLogPoly | Scalar) -> EpsSeries:
        return self + (-_coerce(other))

    def __rsub__(self, other: EpsSeries | XLogPoly | Scalar) -> EpsSeries:
        return _coerce(other) - self

    def __mul__(self, other: EpsSeries | XLogPoly | Scalar) -> EpsSeries:
        if isinstance(other, XLogPoly):
            return EpsSeries(
                {k: c * other for k, c in self._coeffs.items()}, self.order
            )
        if not isinstance(other, EpsSeries):
            return EpsSeries(
                {k: c.scale(other) for k, c in self._coeffs.items()}, self.order
            )
        low_a, low_b = self.lowest(), other.lowest()
        if low_a is None or low_b is None:
            return EpsSeries.zero()
        order: int | None = None
        if self.order is not None:
            order = self.order + low_b
        if other.order is not None:
            order = _min_order(order, other.order + low_a)
        coeffs: dict[int, XLogPoly] = {}
        for k1, c1 in self._coeffs.items():
            for k2, c2 in other._coeffs.items():
                k = k1 + k2
                if order is not None and k > order:
                    continue
                prod = c1 * c2
                coeffs[k] = coeffs[k] + prod if k in coeffs else prod
        return EpsSeries(coeffs, order)

    __rmul__ = __mul__

    def shift_power(self, k: int) -> EpsSeries:
        """Multiply by ``ε^k``."""
        order = None if self.order is None else self.order + k
        return EpsSeries({p + k: c for p, c in self._coeffs.items()}, order)

    def map_coefficients(self, fn: Callable[[XLogPoly], XLogPoly]) -> EpsSeries:
        return EpsSeries({k: fn(c) for k, c in self._coeffs.items()}, self.order)

    def derivative(self, times: int = 1) -> EpsSeries:
        """``∂_x`` applied coefficientwise."""
        return self.map_coefficients(lambda c: c.derivative(times))

    def exp(self, order: int | None = None) -> EpsSeries:
        """Formal exponential.

        The ε⁰ part may be ``a·log x`` with integer ``a`` (it becomes the
        factor ``x^a``); any other content at ε⁰ or below is rejected.
        """
        if any(k < 0 for k in self._coeffs):
            raise ValueError("exp of a series with negative ε powers")
        a = self.coefficient(0).log_multiple() if self._coeffs.get(0) else 0
        if a is None:
            raise ValueError("exp needs an ε⁰ part of the form a·log x")
        rest = EpsSeries(
            {k: c for k, c in self._coeffs.items() if k > 0}, self.order
        )
        target = _min_order(self.order, order)
        if target is None and rest:
            raise ValueError("exp of an exact non-constant series needs an order")
        result = EpsSeries.constant(1, target)
        term = EpsSeries.constant(1, target)
        k = 1
        while rest:
            low = rest.lowest()
            assert low is not None and target is not None
            if low * k > target:
                break
            term = (term * rest).truncate(target).scale(Fraction(1, k))
            result = result + term
            k += 1
        if a:
            result = result.map_coefficients(lambda c: c.times_x_power(a))
        return result

    def scale(self, c: Scalar) -> EpsSeries:
        return self * c

    # ------------------------------------------------------------------
    # Comparison / serialization
    # ------------------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, EpsSeries):
            return NotImplemented
        return self.order == other.order and self._coeffs == other._coeffs

    def __hash__(self) -> int:
        return hash((self.order, frozenset(self._coeffs.items())))

    def agrees_with(self, other: EpsSeries) -> bool:
        """Equality on the powers both series know exactly."""
        order = _min_order(self.order, other.order)
        return (self - other).truncate(order).is_zero()

    def to_json(self) -> dict[str, object]:
        return {
            "order": self.order,
            "terms": {str(k): c.to_json() for k, c in self.items()},
        }

    def __repr__(self) -> str:
        body = " + ".join(f"({c!r})*eps^{k}" for k, c in self.items()) or "0"
        if self.order is not None:
            body += f" + O(eps^{self.order + 1})"
        return body


def _coerce(value: EpsSeries | XLogPoly | Scalar) -> EpsSeries:
    if isinstance(value, EpsSeries):
        return value
    return EpsSeries.constant(value)


def _promote(f: EpsSeries | XLogPoly) -> EpsSeries:
    return f if isinstance(f, EpsSeries) else EpsSeries.constant(f)


def _derivative_ladder(
    f: EpsSeries,
    weights: Callable[[int], tuple[int, int, Fraction] | None],
    order: int | None,
) -> EpsSeries:
    """Apply ``Σ_m ε^{e_m} w_m ∂_x^{d_m}`` to ``f``.

    ``weights(m)`` returns ``(e_m, d_m, w_m)`` for the m-th term or ``None``
    to stop; ``e_m`` and ``d_m`` must be increasing. The result stays exact
    whenever every coefficient's derivative chain dies before the cut.
    """
    first = weights(0)
    lift = first[0] if first is not None else 0
    # an unknown tail O(ε^{o+1}) of f moves up by the lowest ε power applied
    known = None if f.order is None else f.order + lift
    cut = _min_order(known, order)
    if cut is None:
        if not all(c.is_polynomial() for _, c in f.items()):
            raise ValueError("a non-terminating expansion needs an explicit order")
    coeffs: dict[int, XLogPoly] = {}
    lost = False
    for k, c in f.items():
        m = 0
        derived = c
        last_d = 0
        while True:
            step = weights(m)
            if step is None:
                break
            e, d, w = step
            derived = derived.derivative(d - last_d)
            last_d = d
            if not derived:
                break
            power = k + e
            if cut is not None and power > cut:
                lost = True
                break
            if w:
                piece = derived.scale(w)
                coeffs[power] = coeffs[power] + piece if power in coeffs else piece
            m += 1
    if lost:
        logger.debug("derivative ladder truncated at ε^%s", cut)
    return EpsSeries(coeffs, cut if lost else known)


def taylor_shift(f: EpsSeries | XLogPoly, k: int, order: int | None = None) -> EpsSeries:
    """``Λ^k f = Σ_m (kε)^m ∂_x^m f / m!`` cut at ``ε^order``."""
    series = _promote(f)
    if k == 0:
        return series.truncate(order)

    def weight(m: int) -> tuple[int, int, Fraction]:
        return m, m, Fraction(k**m, math.factorial(m))

    return _derivative_ladder(series, weight, order)


def second_difference(f: EpsSeries | XLogPoly, order: int | None = None) -> EpsSeries:
    """``(Λ−1)(1−Λ⁻¹) f = Λf + Λ⁻¹f − 2f``."""
    series = _promote(f)

    def weight(m: int) -> tuple[int, int, Fraction]:
        # only even derivatives survive: 2 ε^{2m+2} ∂^{2m+2} / (2m+2)!
        return 2 * m + 2, 2 * m + 2, Fraction(2, math.factorial(2 * m + 2))

    return _derivative_ladder(series, weight, order)


def tanh_coefficient(g: int) -> Fraction:
    """Coefficient of ``ε^{2g+2} ∂^{2g+1}`` in ``ε(Λ−1)/(Λ+1)``."""
    return (
        (2 ** (2 * g + 3) - 2)
        * bernoulli(2 * g + 2)
        / math.factorial(2 * g + 2)
    )


def tanh_half_operator(f: EpsSeries | XLogPoly, order: int | None = None) -> EpsSeries:
    """``ε(Λ−1)/(Λ+1) f = Σ_g ε^{2g+2} c_g ∂_x^{2g+1} f``."""
    series = _promote(f)

    def weight(g: int) -> tuple[int, int, Fraction]:
        return 2 * g + 2, 2 * g + 1, tanh_coefficient(g)

    return _derivative_ladder(series, weight, order)


def inverse_one_plus_shift(f: EpsSeries | XLogPoly, order: int | None = None) -> EpsSeries:
    """``(Λ+1)⁻¹ f = ½ (f − ε⁻¹ · ε(Λ−1)/(Λ+1) f)``."""
    series = _promote(f)
    # one ε is lost when dividing, so ask the tanh ladder for one more power
    inner_order = None if order is None else order + 1
    tanh = tanh_half_operator(series, inner_order).shift_power(-1)
    return (series - tanh).scale(Fraction(1, 2)).truncate(order)


def genus_slice(series: EpsSeries, g: int) -> XLogPoly:
    """``[ε^{2g−2}] series``."""
    power = 2 * g - 2
    if power < -2:
        raise ValueError(f"genus slice {g} lies below ε^-2")
    return series.coefficient(power)


def rat_terms(series: EpsSeries) -> dict[str, dict[str, str]]:
    """Flat string form used in reports."""
    return {str(k): c.to_json() for k, c in series.items()}


__all__ = [
    "EpsSeries",
    "genus_slice",
    "inverse_one_plus_shift",
    "rat_terms",
    "second_difference",
    "tanh_coefficient",
    "tanh_half_operator",
    "taylor_shift",
]
