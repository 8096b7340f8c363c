"""
free_energy.py
==============
The GUE free energy ``F^G(x, s; ε)`` as an ``SSeries``, its partition
function and the string / scaling equations the partition function obeys.

Coupling coefficients are exact in ε: a monomial ``s_i`` carries finitely
many genera, those with ``2 − 2g − n + |i|/2 ≥ 1``. Only the s-free part is
an infinite genus sum and is cut after ``G_max``.
"""

import logging
import math
from collections import Counter
from collections.abc import Callable, Iterable
from fractions import Fraction

from app.exact.rational import bernoulli
from app.exact.series import EpsSeries
from app.exact.xlog import XLogPoly
from app.gue.wick import map_count, vertex_count
from app.models import ResidualReport
from app.residuals import ResidualTally
from app.toda.sseries import Box, Monomial, SSeries

logger = logging.getLogger(__name__)

MapCountFn = Callable[[int, Iterable[int]], int]


def s_free_part(g_max: int) -> EpsSeries:
    """``x²/(2ε²)(log x − 3/2) − log x/12 + ζ'(−1) + Σ_{2≤g≤G} ε^{2g−2}B_{2g}/(4g(g−1)x^{2g−2})``."""
    coeffs: dict[int, XLogPoly] = {
        -2: XLogPoly({(2, 1, 0): Fraction(1, 2), (2, 0, 0): Fraction(-3, 4)}),
        0: XLogPoly({(0, 1, 0): Fraction(-1, 12), (0, 0, 1): 1}),
    }
    for g in range(2, g_max + 1):
        coeffs[2 * g - 2] = XLogPoly.monomial(
            2 - 2 * g, coeff=bernoulli(2 * g) / (4 * g * (g - 1))
        )
    return EpsSeries(coeffs, 2 * g_max - 1)


def monomial_coefficient(monom: Monomial, counts: MapCountFn = map_count) -> EpsSeries:
    """``Σ_g Map_g(i)/∏ m_k! · ε^{2g−2} x^{2−2g−n+|i|/2}`` for one monomial."""
    if sum(monom) % 2:
        return EpsSeries.zero()
    symmetry = math.prod(math.factorial(k) for k in Counter(monom).values())
    coeffs: dict[int, XLogPoly] = {}
    g = 0
    while (power := vertex_count(g, monom)) >= 1:
        value = counts(g, monom)
        if value:
            coeffs[2 * g - 2] = XLogPoly.monomial(
                power, coeff=Fraction(value, symmetry)
            )
        g += 1
    return EpsSeries(coeffs)


def assemble_gue_free_energy(
    g_max: int,
    n_max: int,
    i_max: int,
    eps_order: int | None = None,
    *,
    counts: MapCountFn = map_count,
    even: bool = False,
) -> SSeries:
    """``F^G`` on the box ``(i_max, n_max)``.

    The s-free part is known to ``ε^{2 g_max − 1}`` (or ``eps_order`` when
    smaller). With ``even`` only monomials in even couplings are filled,
    which is ``F^G`` restricted to ``s_odd = 0``.
    """
    box = Box(i_max, n_max)
    logger.info(
        "Assembling GUE free energy (G=%d, N=%d, I=%d, even=%s)",
        g_max,
        n_max,
        i_max,
        even,
    )
    only_even = (lambda i: i % 2 == 0) if even else None
    coeffs: dict[Monomial, EpsSeries] = {}
    for monom in box.monomials(only_even):
        if not monom:
            continue
        coeff = monomial_coefficient(monom, counts)
        if coeff:
            coeffs[monom] = coeff
    logger.debug("free energy: %d nonzero coupling monomials", len(coeffs))
    head = s_free_part(g_max)
    if eps_order is not None:
        head = head.truncate(eps_order)
    coeffs[()] = head
    return SSeries(coeffs, box)


def normalized_free_energy(free_energy: SSeries) -> SSeries:
    """``F`` minus its s-free part."""
    return free_energy.without_s_free()


def gue_partition_function(free_energy: SSeries) -> SSeries:
    """``exp`` of the normalized free energy on the box of ``free_energy``.

    The s-free factor ``exp(F(x, 0; ε))`` is left out; both PDEs are linear
    in ``Z`` and free of x-derivatives, so it drops out of every check.
    """
    return normalized_free_energy(free_energy).exp()


def string_residual(partition: SSeries) -> SSeries:
    """``Σ_{i≥1} i(s_i − δ_{i,2}/2) ∂Z/∂s_{i−1} + x s_1 Z/ε²`` with ``∂/∂s_0 := 0``."""
    weight = partition.box.max_weight
    if weight is None:
        raise ValueError("string equation needs a weight-bounded partition function")
    residual = -partition.derivative_s(1)
    for i in range(2, weight + 2):
        residual = residual + partition.derivative_s(i - 1).times_coupling(i).scale(i)
    return residual + partition.times_coupling(1) * EpsSeries.term(-2, XLogPoly.x())


def scaling_residual(partition: SSeries) -> SSeries:
    """``Σ_{i≥1} i(s_i − δ_{i,2}/2) ∂Z/∂s_i + x² Z/ε²``."""
    weight = partition.box.max_weight
    if weight is None:
        raise ValueError("scaling equation needs a weight-bounded partition function")
    residual = -partition.derivative_s(2)
    for i in range(1, weight + 1):
        residual = residual + partition.derivative_s(i).times_coupling(i).scale(i)
    return residual + partition * EpsSeries.term(-2, XLogPoly.monomial(2))


def verify_gue_pdes(partition: SSeries) -> ResidualReport:
    tally = ResidualTally(
        "gue-pdes",
        max_weight=partition.box.max_weight,
        max_count=partition.box.max_count,
    )
    tally.sseries("string", string_residual(partition))
    tally.sseries("scaling", scaling_residual(partition))
    return tally.report()


def even_free_energy(
    g_max: int,
    n_max: int,
    i_max: int,
    eps_order: int | None = None,
    *,
    counts: MapCountFn = map_count,
) -> SSeries:
    """``F^eG``: ``F^G`` with every odd coupling set to zero."""
    return assemble_gue_free_energy(
        g_max, n_max, i_max, eps_order, counts=counts, even=True
    )
