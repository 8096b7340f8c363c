"""
gue_solution.py
===============
The Toda solution carried by the GUE free energy,

    v^G = ε(Λ−1) ∂F/∂s_1,        w^G = exp((Λ + Λ⁻¹ − 2) F),

and the checks that it solves the first two Toda flows, starts from
``(0, x)`` and has ``Z^G`` as its tau-function.
"""

import logging
from collections.abc import Callable

from app.core.config import settings
from app.exact.series import (
    EpsSeries,
    inverse_one_plus_shift,
    second_difference,
    taylor_shift,
)
from app.exact.xlog import XLogPoly
from app.models import ResidualReport
from app.residuals import ResidualTally
from app.toda.lattice import Specializer, flow_window, lattice_ring, toda_flow
from app.toda.resolvent import ResolventEntries, solve_entries, twopoint_antidiagonal
from app.toda.sseries import SSeries

logger = logging.getLogger(__name__)

EPS = EpsSeries.term(1, 1)
EPS_SQUARED = EpsSeries.term(2, 1)


def series_shift(order: int | None) -> Callable[[SSeries, int], SSeries]:
    """``Λ^k`` on coupling series, coefficientwise Taylor shifts cut at ``ε^order``."""

    def shift(f: SSeries, k: int) -> SSeries:
        return f.map_eps(lambda c: taylor_shift(c, k, order))

    return shift


def eps_difference(f: SSeries, order: int | None) -> SSeries:
    """``ε(Λ−1) f``."""
    return f.map_eps(lambda c: (taylor_shift(c, 1, order) - c).shift_power(1))


def gue_solution(
    free_energy: SSeries, order: int | None = None
) -> tuple[SSeries, SSeries]:
    """``(v^G, w^G)`` known to ``ε^order`` (``EPS_ORDER`` by default)."""
    order = settings.EPS_ORDER if order is None else order
    v = eps_difference(free_energy.derivative_s(1), order)
    w = free_energy.map_eps(lambda c: second_difference(c, order)).exp(order)
    return v, w


def verify_initial_data(free_energy: SSeries, order: int | None = None) -> ResidualReport:
    """``w^G(x, 0; ε) = x`` through ``ε^order`` and ``v^G(x, 0; ε) = 0``."""
    order = settings.EPS_ORDER if order is None else order
    tally = ResidualTally("initial-data", order=order)
    head = free_energy.s_free()
    w0 = second_difference(head, order).exp(order)
    if w0.order is not None and w0.order < order:
        logger.warning(
            "s-free part only supports w(x,0) to ε^%d, asked for ε^%d", w0.order, order
        )
        tally.note(f"w(x,0) known to eps^{w0.order}")
    tally.eps("w(x,0)=x", "1", w0 - XLogPoly.x())
    v = eps_difference(free_energy.derivative_s(1), order)
    tally.eps("v(x,0)=0", "1", v.s_free())
    return tally.report()


def verify_toda_on_gue(free_energy: SSeries, order: int | None = None) -> ResidualReport:
    """``ε ∂(v, w)/∂s_i = D_i(v_0, w_0)`` for the first two flows."""
    order = settings.EPS_ORDER if order is None else order
    v, w = gue_solution(free_energy, order)
    shift = series_shift(order)
    tally = ResidualTally(
        "toda",
        order=order,
        max_weight=free_energy.box.max_weight,
        max_count=free_energy.box.max_count,
    )
    for i in (1, 2):
        lattice = lattice_ring(flow_window(i))
        dv, dw = toda_flow(i, lattice)
        subst = Specializer(lattice, v, w, shift)
        tally.sseries(f"s{i}-flow v", v.derivative_s(i) * EPS - subst(dv))
        tally.sseries(f"s{i}-flow w", w.derivative_s(i) * EPS - subst(dw))
    return tally.report()


def gue_resolvent(
    v: SSeries, w: SSeries, depth: int, order: int | None
) -> ResolventEntries:
    shift = series_shift(order)
    return solve_entries(
        v, w, depth, shift, trim=lambda f: f.truncate_eps(order)
    )


def verify_tau_identities(
    free_energy: SSeries,
    order: int | None = None,
    *,
    pair_max: int = 5,
) -> ResidualReport:
    """The three tau-function identities on the GUE solution.

    * one-point: ``ε(Λ−1) ∂F/∂s_i = [λ^{−i−1}] Λ(R_21)`` for ``i ≥ 1``;
    * two-point: ``ε² ∂²F/∂s_i∂s_j = [λ^{−i−1} μ^{−j−1}] (tr R(λ)R(μ) − 1)/(λ−μ)²``
      for ``i, j ≤ pair_max``;
    * ``exp((Λ+Λ⁻¹−2)F) = (Λ+1)⁻¹(ε(Λ−1)∂F/∂s_2 − v²)``.
    """
    order = settings.EPS_ORDER if order is None else order
    box = free_energy.box
    weight = box.max_weight or 0
    count = box.max_count or 0
    tally = ResidualTally(
        "tau", order=order, max_weight=weight, max_count=count, pair_max=pair_max
    )
    v, w = gue_solution(free_energy, order)
    pair_total = min(2 * pair_max, weight) if count >= 2 else 0
    depth = max(weight + 1, pair_total)
    entries = gue_resolvent(v, w, depth, order)
    shift = series_shift(order)

    for i in range(1, weight + 1):
        lhs = eps_difference(free_energy.derivative_s(i), order)
        tally.sseries(f"one-point i={i}", lhs - shift(entries.c[i + 1], 1))
    tally.note(f"R21 at lambda^-1: {entries.c[1].s_free()!r}")
    if weight >= 2:
        unshifted = eps_difference(free_energy.derivative_s(2), order) - entries.c[3]
        tally.note(f"unshifted one-point residual at i=2, s=0: {unshifted.s_free()!r}")

    zero = v * 0
    for total in range(2, pair_total + 1):
        coeffs, remainders = twopoint_antidiagonal(entries, total, zero)
        for k, remainder in enumerate(remainders):
            tally.sseries(f"two-point divisibility {k + 1}", remainder)
        for i in range(max(1, total - pair_max), min(pair_max, total - 1) + 1):
            j = total - i
            lhs = free_energy.derivative_s(i).derivative_s(j) * EPS_SQUARED
            tally.sseries(f"two-point i={i},j={j}", lhs - coeffs[(i - 1, j - 1)])

    if weight >= 2:
        rhs = eps_difference(free_energy.derivative_s(2), order) - v * v
        recovered = rhs.map_eps(lambda c: inverse_one_plus_shift(c, order))
        tally.sseries("exp second difference", w - recovered)
    return tally.report()
