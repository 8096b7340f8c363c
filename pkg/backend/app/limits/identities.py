"""
identities.py
=============
Exact map-count identities behind the limit argument.

``pre_identity_residual`` is the coefficient form of the genus-``h`` product
identity of the even free energy: for ``j = (j_1, …, j_n)``,

    Σ_{g+g'=h} (2^{2g+3}−2) B_{2g+2} (2|j| Map_{g'}(2j) + δ_{g'0}δ_{n0})
        · C(2−2g'−n+|j|, 2g+2)
  = Σ_{A⊔B=I} Σ_{g1+g2+g1'+g2'=h} (2^{2g1+3}−2) B_{2g1+2}/(2g1+2)
        · C(2−2g1'−|A|+|j_A|, 2g1+1) (2|j_A| Map_{g1'}(2j_A) + δ_{g1'0}δ_{A∅})
        · (δ_{B∅}δ_{g2,0}δ_{g2',0} + 2(2g2+3) C(2−2g2'−|B|+|j_B|, 2g2+3) Map_{g2'}(2j_B)),

with generalized binomials ``C`` and ``Map_g(∅) = 0``. ``eq56_sides`` is the
same identity with the low-genus blocks separated, in the form whose
``κ → ∞`` limit is the KdV recursion for ``Q_h``.
"""

import logging
from collections.abc import Callable, Iterable, Iterator, Sequence
from fractions import Fraction

import mpmath

from app.core.config import settings
from app.exact.rational import bernoulli, gen_binom, rat_str
from app.limits.backends import backend_map_count
from app.models import LimitDemoReport, LimitDemoRow
from app.witten.npoint import splittings, weighted_q

logger = logging.getLogger(__name__)

MapCountFn = Callable[[int, Iterable[int]], int]


def _tanh_weight(g: int) -> Fraction:
    """``(2^{2g+3} − 2) B_{2g+2}``."""
    return (2 ** (2 * g + 3) - 2) * bernoulli(2 * g + 2)


def _subsets(n: int) -> Iterator[tuple[list[int], list[int]]]:
    """Every ordered ``(A, B)`` with ``A ⊔ B = {0, …, n−1}``."""
    for mask in range(2**n):
        yield (
            [k for k in range(n) if mask >> k & 1],
            [k for k in range(n) if not mask >> k & 1],
        )


def _compositions(total: int, parts: int) -> Iterator[tuple[int, ...]]:
    """Ordered ``parts``-tuples of nonnegative integers with the given sum."""
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, parts - 1):
            yield (first, *rest)


class _Maps:
    """``Map_g(2 j_S)`` for sub-multisets of ``j`` with ``Map_g(∅) = 0``."""

    def __init__(self, j: Sequence[int], counts: MapCountFn) -> None:
        self.j = list(j)
        self.counts = counts
        self._memo: dict[tuple[int, tuple[int, ...]], int] = {}

    def __call__(self, g: int, subset: Sequence[int]) -> int:
        if g < 0 or not subset:
            return 0
        key = (g, tuple(sorted(2 * self.j[k] for k in subset)))
        if key not in self._memo:
            self._memo[key] = self.counts(g, key[1])
        return self._memo[key]

    def size(self, subset: Sequence[int]) -> int:
        return sum(self.j[k] for k in subset)


def _check(j: Sequence[int]) -> None:
    if any(k < 1 for k in j):
        raise ValueError(f"j must be positive, got {list(j)}")


def pre_identity_sides(
    h: int, j: Sequence[int], counts: MapCountFn = backend_map_count
) -> tuple[Fraction, Fraction]:
    _check(j)
    n = len(j)
    maps = _Maps(j, counts)
    full = list(range(n))
    size = maps.size(full)
    lhs = Fraction(0)
    for g in range(h + 1):
        gp = h - g
        inner = 2 * size * maps(gp, full) + (1 if gp == 0 and n == 0 else 0)
        if inner:
            lhs += _tanh_weight(g) * inner * gen_binom(2 - 2 * gp - n + size, 2 * g + 2)
    rhs = Fraction(0)
    for a, b in _subsets(n):
        size_a, size_b = maps.size(a), maps.size(b)
        for g1, g2, g1p, g2p in _compositions(h, 4):
            left = 2 * size_a * maps(g1p, a) + (1 if g1p == 0 and not a else 0)
            if not left:
                continue
            right = Fraction(1 if not b and g2 == 0 and g2p == 0 else 0)
            right += (
                2 * (2 * g2 + 3)
                * gen_binom(2 - 2 * g2p - len(b) + size_b, 2 * g2 + 3)
                * maps(g2p, b)
            )
            if not right:
                continue
            rhs += (
                _tanh_weight(g1) / (2 * g1 + 2)
                * gen_binom(2 - 2 * g1p - len(a) + size_a, 2 * g1 + 1)
                * left
                * right
            )
    return lhs, rhs


def pre_identity_residual(
    h: int, n: int, j: Sequence[int], counts: MapCountFn = backend_map_count
) -> Fraction:
    """LHS − RHS of the coefficient identity; ``n`` must equal ``len(j)``."""
    if n != len(j):
        raise ValueError(f"n = {n} but j has {len(j)} entries")
    lhs, rhs = pre_identity_sides(h, j, counts)
    return lhs - rhs


def eq56_sides(
    h: int, j: Sequence[int], counts: MapCountFn = backend_map_count
) -> tuple[Fraction, Fraction]:
    """Both sides of the block form; the ``ε²`` and ``ε⁴`` blocks are explicit."""
    _check(j)
    n = len(j)
    if n < 1:
        raise ValueError("the block form needs at least one index")
    maps = _Maps(j, counts)
    full = list(range(n))
    size = maps.size(full)
    b2, b4 = bernoulli(2), bernoulli(4)
    top, below = maps(h, full), maps(h - 1, full)
    p = size - 2 * h - n

    lhs = 6 * b2 * (2 * h + n - 1) * (p + 2) * p * top
    lhs += 30 * b4 * size * below * (p + 4) * (p + 3) * (p + 2) * (p + 1) / 12
    for g in range(2, h + 1):
        lhs += (
            _tanh_weight(g) * 2 * size * maps(h - g, full)
            * gen_binom(2 - 2 * (h - g) - n + size, 2 * g + 2)
        )

    rhs = Fraction(0)
    for a, b in splittings(n):
        size_a, size_b = maps.size(a), maps.size(b)
        for g1p in range(h + 1):
            g2p = h - g1p
            q = size_b - 2 * g2p - len(b)
            rhs += (
                6 * b2 * (2 - 2 * g1p - len(a) + size_a) * size_a * maps(g1p, a)
                * (q + 2) * (q + 1) * q * maps(g2p, b)
            )
        for g1, g2, g1p, g2p in _compositions(h, 4):
            if g1 + g2 == 0:
                continue
            rhs += (
                _tanh_weight(g1) / (g1 + 1)
                * gen_binom(2 - 2 * g1p - len(a) + size_a, 2 * g1 + 1)
                * size_a * maps(g1p, a)
                * 2 * (2 * g2 + 3)
                * gen_binom(2 - 2 * g2p - len(b) + size_b, 2 * g2 + 3)
                * maps(g2p, b)
            )
    rhs += 6 * b2 * 10 * gen_binom(2 - 2 * (h - 1) - n + size, 5) * below
    for g2 in range(2, h + 1):
        rhs += (
            6 * b2 * 2 * (2 * g2 + 3)
            * gen_binom(2 - 2 * (h - g2) - n + size, 2 * g2 + 3)
            * maps(h - g2, full)
        )
    for g1 in range(1, h + 1):
        rhs += (
            _tanh_weight(g1) / (2 * g1 + 2)
            * gen_binom(2 - 2 * (h - g1) - n + size, 2 * g1 + 1)
            * maps(h - g1, full) * 2 * size
        )
    return lhs, rhs


def eq56_residual(
    h: int, n: int, j: Sequence[int], counts: MapCountFn = backend_map_count
) -> Fraction:
    if n != len(j):
        raise ValueError(f"n = {n} but j has {len(j)} entries")
    lhs, rhs = eq56_sides(h, j, counts)
    return lhs - rhs


# ---------------------------------------------------------------------------
# Limit of the block form
# ---------------------------------------------------------------------------


def limiting_sides(h: int, x: Sequence[Fraction]) -> tuple[Fraction, Fraction]:
    """``(2h+n−1)|x|²Q_h − |x|⁵Q_{h−1}/24`` and
    ``Σ_{A,B≠∅} Σ |x_A|²|x_B|³ Q Q + |x|⁵Q_{h−1}/24``."""
    n = len(x)
    point = list(x)
    full = list(range(n))

    def value(g: int, subset: list[int], power: int) -> Fraction:
        poly = weighted_q(g, subset, n, power)
        return Fraction(0) if poly is None else poly.evaluate(point)

    correction = value(h - 1, full, 5) / 24
    lhs = (2 * h + n - 1) * value(h, full, 2) - correction
    rhs = correction
    for a, b in splittings(n):
        for g1 in range(h + 1):
            rhs += value(g1, a, 2) * value(h - g1, b, 3)
    return lhs, rhs


def limit_of_identity_demo(
    h: int,
    x: Iterable[Fraction | int | str],
    ladder: Iterable[int],
    counts: MapCountFn = backend_map_count,
) -> LimitDemoReport:
    """Both sides of the block form scaled by
    ``2^{2h−1+3n/2} π^{n/2} / (√(x_1⋯x_n) 2^{2|j|} κ^{3h−1+3n/2})``."""
    point = [Fraction(xa) for xa in x]
    n = len(point)
    lhs_limit, rhs_limit = limiting_sides(h, point)
    report = LimitDemoReport(
        h=h,
        x=[rat_str(xa) for xa in point],
        lhs_limit=rat_str(lhs_limit),
        rhs_limit=rat_str(rhs_limit),
    )
    for kappa in sorted(ladder):
        j = [round(Fraction(kappa) * xa / 2) for xa in point]
        if any(k < 1 for k in j):
            raise ValueError(f"κ = {kappa} is too small for x = {point}")
        lhs, rhs = eq56_sides(h, j, counts)
        with mpmath.workdps(settings.mp_dps):
            log_scale = (2 * h - 1 + mpmath.mpf(3 * n) / 2) * mpmath.log(2)
            log_scale += mpmath.mpf(n) / 2 * mpmath.log(mpmath.pi)
            log_scale -= sum(mpmath.log(mpmath.mpf(xa.numerator) / xa.denominator) for xa in point) / 2
            log_scale -= 2 * sum(j) * mpmath.log(2)
            log_scale -= (3 * h - 1 + mpmath.mpf(3 * n) / 2) * mpmath.log(kappa)
            scale = mpmath.exp(log_scale)
            row = LimitDemoRow(
                kappa=kappa,
                j=j,
                lhs_scaled=float(scale * mpmath.mpf(lhs.numerator) / lhs.denominator),
                rhs_scaled=float(scale * mpmath.mpf(rhs.numerator) / rhs.denominator),
            )
        report.rows.append(row)
        logger.info("κ=%d: lhs %.10g, rhs %.10g", kappa, row.lhs_scaled, row.rhs_scaled)
    return report
