"""
npoint.py
=========
Witten n-point functions ``Q_g(x_1, …, x_n) = Σ_d ⟨τ_{d_1} … τ_{d_n}⟩_g x^d``
computed as whole homogeneous polynomials from the KdV recursion

    (2g+n−1) |x_I|² Q_g(x_I) = |x_I|⁵/12 Q_{g−1}(x_I)
        + Σ_{g1+g2=g} Σ_{A⊔B=I, A,B≠∅} |x_A|² |x_B|³ Q_{g1}(x_A) Q_{g2}(x_B),

with the unstable values ``Q_0(x) = 1/x²``, ``Q_0(x, y) = 1/(x+y)`` and
``Q_0(∅) = Q_1(∅) = Q_{−1} = 0``. Every unstable factor appears multiplied by
enough powers of ``|x_S|`` to be a polynomial.
"""

import logging
from collections.abc import Iterator, Sequence
from fractions import Fraction
from functools import lru_cache

from app.core.config import settings
from app.core.errors import BudgetExceeded
from app.exact.homogeneous import HomogPoly, poly_exact_div

logger = logging.getLogger(__name__)


def is_stable(g: int, n: int) -> bool:
    return 2 * g - 2 + n > 0


def check_budget(g: int, n: int) -> None:
    if g > settings.G_MAX or n > settings.N_MAX:
        raise BudgetExceeded(
            f"(g, n) = ({g}, {n}) exceeds the budget "
            f"(G_MAX={settings.G_MAX}, N_MAX={settings.N_MAX})"
        )


def splittings(n: int) -> Iterator[tuple[list[int], list[int]]]:
    """Ordered ``(A, B)`` with ``A ⊔ B = {0, …, n−1}``, both nonempty."""
    for mask in range(1, 2**n - 1):
        a = [k for k in range(n) if mask >> k & 1]
        b = [k for k in range(n) if not mask >> k & 1]
        yield a, b


def weighted_q(g: int, subset: Sequence[int], n_total: int, power: int) -> HomogPoly | None:
    """``|x_S|^power · Q_g(x_S)`` inside ``n_total`` variables; ``None`` when it is zero.

    The unstable ``(0, 1)`` and ``(0, 2)`` factors are replaced by the
    polynomials ``|x_S|^{power−2}`` and ``|x_S|^{power−1}``.
    """
    k = len(subset)
    if g < 0:
        return None
    norm = HomogPoly.subset_sum(n_total, subset)
    if (g, k) == (0, 1):
        if power < 2:
            raise ValueError(f"|x|^{power} Q_0(x) is not a polynomial")
        return norm ** (power - 2)
    if (g, k) == (0, 2):
        if power < 1:
            raise ValueError(f"|x|^{power} Q_0(x, y) is not a polynomial")
        return norm ** (power - 1)
    if not is_stable(g, k):
        return None
    return norm**power * _q_polynomial(g, k).embed(n_total, list(subset))


def _kdv_terms(
    g: int, n: int, inner: int, outer: tuple[int, int], correction: Fraction
) -> HomogPoly:
    """``correction |x_I|^inner Q_{g−1} + Σ |x_A|^a |x_B|^b Q_{g1} Q_{g2}``."""
    full = list(range(n))
    total = HomogPoly.zero(n)
    lower = weighted_q(g - 1, full, n, inner)
    if lower is not None:
        total = total + lower * correction
    for a, b in splittings(n):
        for g1 in range(g + 1):
            left = weighted_q(g1, a, n, outer[0])
            right = weighted_q(g - g1, b, n, outer[1])
            if left is not None and right is not None:
                total = total + left * right
    return total


@lru_cache(maxsize=None)
def _q_polynomial(g: int, n: int) -> HomogPoly:
    rhs = _kdv_terms(g, n, 5, (2, 3), Fraction(1, 12))
    norm = HomogPoly.subset_sum(n, range(n))
    q = poly_exact_div(rhs, norm**2 * (2 * g + n - 1))
    logger.debug("Q_%d in %d variables: %d terms", g, n, len(q.poly))
    return q


def q_polynomial(g: int, n: int) -> HomogPoly:
    """The stable n-point function ``Q_g`` in ``n`` variables."""
    if n < 1 or not is_stable(g, n):
        raise ValueError(f"(g, n) = ({g}, {n}) is not stable")
    check_budget(g, n)
    return _q_polynomial(g, n)


def lx_crosscheck(g: int, n: int) -> HomogPoly:
    """Residual of ``(2g+n−1)|x_I| Q_g = |x_I|⁴/12 Q_{g−1} + Σ |x_A|²|x_B|² Q_{g1} Q_{g2}``."""
    q = q_polynomial(g, n)
    norm = HomogPoly.subset_sum(n, range(n))
    lhs = norm * q * (2 * g + n - 1)
    return lhs - _kdv_terms(g, n, 4, (2, 2), Fraction(1, 12))


def verify_stringQ(g: int, n: int, s: int) -> HomogPoly:
    """Residual of ``Q_g(x_I, 0, …, 0) = |x_I|^s Q_g(x_I)`` with ``s`` zeros."""
    if n < 1 or s < 0 or not is_stable(g, n + s):
        raise ValueError(f"(g, n, s) = ({g}, {n}, {s}) needs 2g − 2 + n + s > 0")
    full = list(range(n))
    rhs = weighted_q(g, full, n, s)
    lhs = q_polynomial(g, n + s).restrict(n)
    return lhs if rhs is None else lhs - rhs
