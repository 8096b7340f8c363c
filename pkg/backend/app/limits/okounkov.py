"""
okounkov.py
===========
Numerical probe of the limit

    2^{2g−3+3n/2} π^{n/2} / √(x_1⋯x_n) · Map_g(i) / (2^{|i|} κ^{3g−3+3n/2}) → Q_g(x)

as ``κ → ∞`` with ``i_a/κ → x_a`` and ``|i|`` even. Map counts stay exact
until the final step; logarithms are taken in mpmath at ``settings.mp_dps``
digits, and genus-0 closed forms go through log-Gamma directly.
"""

import logging
from collections.abc import Iterable, Sequence
from fractions import Fraction
from typing import Literal

import mpmath

from app.core.config import settings
from app.exact.rational import rat_str
from app.limits.backends import CLOSED_FORM, map_count_backend
from app.models import ConvergenceReport, ConvergenceRow, MapCache
from app.witten.npoint import weighted_q

logger = logging.getLogger(__name__)

Parity = Literal["even", "odd"]


def round_indices(x: Sequence[Fraction], kappa: int, parity: Parity = "even") -> tuple[int, ...]:
    """``i_a = 2·round(κx_a/2)``, or ``2·round((κx_a+1)/2) − 1`` for odd indices."""
    if parity == "even":
        indices = tuple(2 * round(Fraction(kappa) * xa / 2) for xa in x)
    elif parity == "odd":
        indices = tuple(2 * round((Fraction(kappa) * xa + 1) / 2) - 1 for xa in x)
    else:
        raise ValueError(f"parity must be 'even' or 'odd', got {parity!r}")
    if any(i < 1 for i in indices):
        raise ValueError(f"κ = {kappa} is too small for x = {list(x)}")
    if sum(indices) % 2:
        raise ValueError(f"|i| = {sum(indices)} is odd; the limit is taken along even |i|")
    return indices


def q_limit(g: int, x: Sequence[Fraction]) -> Fraction:
    """``Q_g(x)`` including the unstable values ``1/x²`` and ``1/(x_1+x_2)``."""
    n = len(x)
    norm = sum(x, Fraction(0))
    # |x|² Q_g(x) is a polynomial in every case the limit is stated for
    weighted = weighted_q(g, list(range(n)), n, 2)
    if weighted is None:
        return Fraction(0)
    return weighted.evaluate(list(x)) / norm**2


def _log_closed_form(indices: tuple[int, ...]) -> mpmath.mpf:
    """``log Map_0(i)`` for one- and two-point counts via log-Gamma."""

    def log_binom(a: int, b: int) -> mpmath.mpf:
        return mpmath.loggamma(a + 1) - mpmath.loggamma(b + 1) - mpmath.loggamma(a - b + 1)

    if len(indices) == 1:
        j = indices[0] // 2
        return log_binom(2 * j, j) - mpmath.log(j + 1)
    i1, i2 = indices
    if i1 % 2 == 0:
        j1, j2 = i1 // 2, i2 // 2
        return (
            log_binom(2 * j1, j1)
            + log_binom(2 * j2, j2)
            + mpmath.log(j1 * j2)
            - mpmath.log(j1 + j2)
        )
    j1, j2 = (i1 + 1) // 2, (i2 + 1) // 2
    return (
        log_binom(2 * j1 - 1, j1)
        + log_binom(2 * j2 - 1, j2)
        + mpmath.log(j1 * j2)
        - mpmath.log(j1 + j2 - 1)
    )


def log_prefactor(g: int, x: Sequence[Fraction], indices: Sequence[int], kappa: int) -> mpmath.mpf:
    n = len(x)
    log2 = mpmath.log(2)
    total = (2 * g - 3 + mpmath.mpf(3 * n) / 2) * log2
    total += mpmath.mpf(n) / 2 * mpmath.log(mpmath.pi)
    total -= sum(mpmath.log(mpmath.mpf(xa.numerator) / xa.denominator) for xa in x) / 2
    total -= sum(indices) * log2
    total -= (3 * g - 3 + mpmath.mpf(3 * n) / 2) * mpmath.log(kappa)
    return total


def okounkov_scaled_value(
    g: int,
    x: Iterable[Fraction | int | str],
    kappa: int,
    *,
    parity: Parity = "even",
    cache: MapCache | None = None,
) -> tuple[float, tuple[int, ...], str]:
    """The scaled count at ``κ``: ``(value, indices, backend)``."""
    point = [Fraction(xa) for xa in x]
    if any(xa <= 0 for xa in point):
        raise ValueError(f"x must be positive, got {point}")
    indices = round_indices(point, kappa, parity)
    with mpmath.workdps(settings.mp_dps):
        if g == 0 and len(indices) <= 2:
            log_count = _log_closed_form(indices)
            backend = CLOSED_FORM
        else:
            count, backend = map_count_backend(g, indices, cache)
            if count == 0:
                return 0.0, indices, backend
            log_count = mpmath.log(count)
        value = mpmath.exp(log_prefactor(g, point, indices, kappa) + log_count)
        return float(value), indices, backend


def okounkov_convergence_report(
    g: int,
    x: Iterable[Fraction | int | str],
    ladder: Iterable[int],
    *,
    parity: Parity = "even",
    cache: MapCache | None = None,
) -> ConvergenceReport:
    point = [Fraction(xa) for xa in x]
    limit = q_limit(g, point)
    report = ConvergenceReport(
        g=g, x=[rat_str(xa) for xa in point], parity=parity, limit_exact=rat_str(limit)
    )
    for kappa in sorted(ladder):
        value, indices, backend = okounkov_scaled_value(
            g, point, kappa, parity=parity, cache=cache
        )
        rel_error = abs(value - float(limit)) / abs(float(limit)) if limit else abs(value)
        report.rows.append(
            ConvergenceRow(
                kappa=kappa,
                indices=list(indices),
                scaled_value=value,
                limit=float(limit),
                rel_error=rel_error,
            )
        )
        report.backend = backend
        logger.info("κ=%d: scaled %.12g, relative error %.3g", kappa, value, rel_error)
    return report
