"""
rational.py
===========
Exact rational helpers shared by every module: Bernoulli numbers,
generalized binomials, double factorials and the string form used in JSON
documents.

``Rat`` is :class:`fractions.Fraction`; sympy domain elements are converted
at the boundary with :func:`to_qq` / :func:`from_domain`.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from typing import Any

from sympy.polys.domains import QQ

Rat = Fraction


@lru_cache(maxsize=None)
def bernoulli(m: int) -> Fraction:
    """Return ``B_m`` with the convention ``B_1 = -1/2``."""
    if m < 0:
        raise ValueError(f"Bernoulli index must be nonnegative, got {m}")
    if m == 0:
        return Fraction(1)
    if m > 1 and m % 2:
        return Fraction(0)
    total = sum(
        (math.comb(m + 1, k) * bernoulli(k) for k in range(m)), start=Fraction(0)
    )
    return -total / (m + 1)


def falling_factorial(p: int, k: int) -> int:
    """``p (p-1) ... (p-k+1)``; equals 1 for ``k = 0``."""
    if k < 0:
        raise ValueError(f"k must be nonnegative, got {k}")
    result = 1
    for step in range(k):
        result *= p - step
    return result


def gen_binom(p: int, k: int) -> Fraction:
    """Generalized binomial ``p(p-1)...(p-k+1)/k!``; ``p`` may be negative."""
    return Fraction(falling_factorial(p, k), math.factorial(k))


def double_factorial(n: int) -> int:
    """``n!!`` with ``(-1)!! = 0!! = 1``."""
    if n < -1:
        raise ValueError(f"double factorial undefined for {n}")
    result = 1
    for factor in range(n, 0, -2):
        result *= factor
    return result


def rat_str(value: Fraction | int) -> str:
    r = Fraction(value)
    if r.denominator == 1:
        return str(r.numerator)
    return f"{r.numerator}/{r.denominator}"


def parse_rat(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"Not a rational number: {text!r}") from exc


def to_qq(value: Fraction | int) -> Any:
    r = Fraction(value)
    return QQ(r.numerator, r.denominator)


def from_domain(c: Any) -> Fraction:
    """Convert a ZZ/QQ domain element (python, gmpy or sympy flavour) to ``Rat``."""
    if isinstance(c, int):
        return Fraction(c)
    numerator = getattr(c, "numerator", None)
    denominator = getattr(c, "denominator", None)
    if numerator is not None and denominator is not None:
        num = numerator() if callable(numerator) else numerator
        den = denominator() if callable(denominator) else denominator
        return Fraction(int(num), int(den))
    return Fraction(int(c))
