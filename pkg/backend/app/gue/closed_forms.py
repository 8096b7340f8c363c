"""Closed forms for genus-0 one- and two-point map counts, and the dilation check."""

import math
from collections.abc import Callable, Iterable
from fractions import Fraction
from typing import Literal

from app.gue.wick import canonical, map_count

MapCountFn = Callable[[int, Iterable[int]], int]


def catalan_onepoint(j: int) -> int:
    """``Map_0(2j)`` is the Catalan number ``C_j``."""
    if j < 1:
        raise ValueError(f"j must be positive, got {j}")
    return math.comb(2 * j, j) // (j + 1)


def genus0_twopoint(j1: int, j2: int, parity: Literal["even", "odd"]) -> int:
    """``Map_0(2j1, 2j2)`` (even) or ``Map_0(2j1-1, 2j2-1)`` (odd)."""
    if j1 < 1 or j2 < 1:
        raise ValueError(f"j1, j2 must be positive, got {(j1, j2)}")
    if parity == "even":
        value = Fraction(
            math.comb(2 * j1, j1) * math.comb(2 * j2, j2) * j1 * j2, j1 + j2
        )
    elif parity == "odd":
        value = Fraction(
            math.comb(2 * j1 - 1, j1) * math.comb(2 * j2 - 1, j2) * j1 * j2,
            j1 + j2 - 1,
        )
    else:
        raise ValueError(f"parity must be 'even' or 'odd', got {parity!r}")
    if value.denominator != 1:
        raise ArithmeticError(f"two-point closed form is not integral: {value}")
    return value.numerator


def check_dilation(g: int, indices: Iterable[int], counts: MapCountFn = map_count) -> int:
    """``Map_g(2, i) − |i|·Map_g(i) − δ_{g,0}δ_{n,0}``; zero when dilation holds."""
    key = canonical(indices)
    delta = 1 if g == 0 and not key else 0
    return counts(g, (2, *key)) - sum(key) * counts(g, key) - delta
