"""
correlators.py
==============
Psi-class intersection numbers ``⟨τ_{d_1} … τ_{d_n}⟩_g`` read off the
n-point functions, after removing ``τ_0`` and ``τ_1`` insertions with the
string and dilaton equations

    ⟨τ_0 τ_d⟩_g = Σ_{a: d_a>0} ⟨τ_{d_a−1} τ_{d∖a}⟩_g + δ_{n,2} δ_{g,0},
    ⟨τ_1 τ_d⟩_g = (2g−2+n) ⟨τ_d⟩_g + δ_{g,1} δ_{n,0}/24.
"""

import itertools
import logging
from collections.abc import Iterable, Iterator
from fractions import Fraction
from functools import lru_cache

from sympy.utilities.iterables import partitions

from app.models import ResidualReport
from app.residuals import ResidualTally
from app.witten.npoint import check_budget, is_stable, q_polynomial, splittings

logger = logging.getLogger(__name__)

PsiKey = tuple[int, ...]


def canonical_key(d: Iterable[int]) -> PsiKey:
    return tuple(sorted(d, reverse=True))


def dimension_matches(g: int, d: PsiKey) -> bool:
    return sum(d) == 3 * g - 3 + len(d)


def key_label(g: int, d: PsiKey) -> str:
    body = "".join(f"t{k}" for k in d) or "1"
    return f"<{body}>_{g}"


def q_coefficient(g: int, d: Iterable[int]) -> Fraction:
    """The coefficient of ``x^d`` in ``Q_g``, with no string/dilaton reduction."""
    key = tuple(d)
    if any(k < 0 for k in key) or not is_stable(g, len(key)):
        return Fraction(0)
    if not dimension_matches(g, key):
        return Fraction(0)
    return q_polynomial(g, len(key)).coefficient(key)


@lru_cache(maxsize=None)
def _intersection(g: int, key: PsiKey) -> Fraction:
    n = len(key)
    if g < 0 or any(k < 0 for k in key) or not is_stable(g, n):
        return Fraction(0)
    if not dimension_matches(g, key):
        return Fraction(0)
    if 0 in key:
        rest = list(key)
        rest.remove(0)
        total = Fraction(1) if (g, len(rest)) == (0, 2) else Fraction(0)
        for a, k in enumerate(rest):
            if k > 0:
                lowered = rest[:a] + [k - 1] + rest[a + 1 :]
                total += _intersection(g, canonical_key(lowered))
        return total
    if 1 in key:
        rest = list(key)
        rest.remove(1)
        total = Fraction(1, 24) if (g, len(rest)) == (1, 0) else Fraction(0)
        return total + (2 * g - 2 + len(rest)) * _intersection(g, tuple(rest))
    check_budget(g, n)
    return q_polynomial(g, n).coefficient(key)


def intersection_number(g: int, d: Iterable[int]) -> Fraction:
    """``⟨τ_{d_1} … τ_{d_n}⟩_g``; zero off the dimension and for unstable ``(g, n)``."""
    return _intersection(g, canonical_key(d))


def dimension_keys(g: int, n: int) -> Iterator[PsiKey]:
    """Every nonincreasing ``d`` with ``n`` entries and ``Σ d = 3g − 3 + n``."""
    if n >= 0:
        yield from keys_with_sum(3 * g - 3 + n, n)


def intersection_table(g_max: int, n_max: int) -> dict[tuple[int, PsiKey], Fraction]:
    """All nonzero stable correlators with ``g ≤ g_max`` and ``1 ≤ n ≤ n_max``."""
    table: dict[tuple[int, PsiKey], Fraction] = {}
    for g in range(g_max + 1):
        for n in range(1, n_max + 1):
            if not is_stable(g, n):
                continue
            for key in dimension_keys(g, n):
                value = intersection_number(g, key)
                if value:
                    table[(g, key)] = value
    logger.info("intersection table: %d nonzero correlators", len(table))
    return table


def verify_string_dilaton(g_max: int, n_max: int) -> ResidualReport:
    """String and dilaton equations on the raw n-point coefficients.

    Both sides are read from ``Q_g`` directly, so the check exercises the
    recursion rather than the reductions ``intersection_number`` applies.
    """
    tally = ResidualTally("string-dilaton", g_max=g_max, n_max=n_max)
    for g in range(g_max + 1):
        for n in range(2, n_max + 1):
            if not is_stable(g, n):
                continue
            for key in dimension_keys(g, n):
                if key[-1] == 0:
                    rest = list(key[:-1])
                    rhs = Fraction(1) if (g, len(rest)) == (0, 2) else Fraction(0)
                    for a, k in enumerate(rest):
                        if k > 0:
                            rhs += q_coefficient(g, rest[:a] + [k - 1] + rest[a + 1 :])
                    tally.value("string", key_label(g, key), q_coefficient(g, key) - rhs)
                if 1 in key:
                    rest = list(key)
                    rest.remove(1)
                    rhs = (2 * g - 2 + len(rest)) * q_coefficient(g, rest)
                    tally.value("dilaton", key_label(g, key), q_coefficient(g, key) - rhs)
    dilaton_seed = q_coefficient(1, (1,)) - Fraction(1, 24)
    tally.value("dilaton", key_label(1, (1,)), dilaton_seed)
    return tally.report()


def verify_equivkdv0(g_max: int, n_max: int) -> ResidualReport:
    """``⟨τ_1τ_0²τ_{d_I}⟩_g = ⟨τ_0⁵τ_{d_I}⟩_{g−1}/12
    + Σ_{g1+g2=g} Σ_{A⊔B=I} ⟨τ_0²τ_{d_A}⟩_{g1} ⟨τ_0³τ_{d_B}⟩_{g2}``."""
    tally = ResidualTally("equivkdv0", g_max=g_max, n_max=n_max)
    for g in range(g_max + 1):
        for n in range(n_max + 1):
            total = 3 * g - 1 + n
            if total < 0:
                continue
            for key in keys_with_sum(total, n):
                lhs = intersection_number(g, (1, 0, 0, *key))
                rhs = intersection_number(g - 1, (0,) * 5 + key) / 12
                for a, b in _all_splittings(n):
                    part_a = tuple(key[k] for k in a)
                    part_b = tuple(key[k] for k in b)
                    for g1 in range(g + 1):
                        rhs += intersection_number(
                            g1, (0, 0, *part_a)
                        ) * intersection_number(g - g1, (0, 0, 0, *part_b))
                tally.value("kdv", key_label(g, key), lhs - rhs)
    return tally.report()


def keys_with_sum(total: int, n: int) -> Iterator[PsiKey]:
    """Nonincreasing ``n``-tuples of nonnegative integers summing to ``total``."""
    if total < 0 or n < 0:
        return
    if n == 0:
        if total == 0:
            yield ()
        return
    for parts in partitions(total, m=n):
        key = sorted(itertools.chain.from_iterable([k] * m for k, m in parts.items()))
        yield tuple(reversed(key)) + (0,) * (n - len(key))


def _all_splittings(n: int) -> Iterator[tuple[list[int], list[int]]]:
    """Ordered ``(A, B)`` with ``A ⊔ B = I``, empty parts included."""
    yield [], list(range(n))
    if n:
        yield from splittings(n)
        yield list(range(n)), []
