"""
even.py
=======
The even GUE free energy ``F^eG = F^G|_{s_odd = 0}`` and the identities it
satisfies: the Volterra lattice equation and its ``s_4`` flow, the vanishing
of ``v^G`` at ``s_odd = 0``, and the identities built on
``T = ε(Λ−1)/(Λ+1)`` and ``S = (Λ−1)(1−Λ⁻¹)``:

    T(∂F/∂s_2) = w^eG = exp(S F),
    T(∂²F/∂x∂s_2) = T(∂F/∂s_2) · S(∂F/∂x),

the same for the normalized ``F^norm = F^eG − F^eG|_{s=0}`` (where ``1/x``
appears) and the per-genus form of the latter.
"""

import logging
import math
from fractions import Fraction

from app.core.config import settings
from app.core.errors import SupportViolation
from app.exact.series import (
    EpsSeries,
    genus_slice,
    second_difference,
    tanh_coefficient,
    tanh_half_operator,
)
from app.exact.xlog import XLogPoly
from app.gue.free_energy import normalized_free_energy
from app.models import ResidualReport
from app.residuals import ResidualTally
from app.toda.gue_solution import EPS, eps_difference, gue_solution, series_shift
from app.toda.lattice import LatticeOp, Specializer, lattice_ring
from app.toda.sseries import SSeries

logger = logging.getLogger(__name__)

# j ≥ 3 flows are not needed by anything downstream
MAX_VOLTERRA_FLOW = 2


def _order(order: int | None) -> int:
    return settings.EPS_ORDER if order is None else order


def even_solution(even_energy: SSeries, order: int | None = None) -> SSeries:
    """``w^eG = exp((Λ + Λ⁻¹ − 2) F^eG)``."""
    order = _order(order)
    return even_energy.map_eps(lambda c: second_difference(c, order)).exp(order)


def _tanh(f: SSeries, order: int) -> SSeries:
    return f.map_eps(lambda c: tanh_half_operator(c, order))


def _second_difference(f: SSeries, order: int) -> SSeries:
    return f.map_eps(lambda c: second_difference(c, order))


def verify_volterra(even_energy: SSeries, order: int | None = None) -> ResidualReport:
    """``ε ∂w/∂s_2 = w (Λw − Λ⁻¹w)``."""
    order = _order(order)
    w = even_solution(even_energy, order)
    shift = series_shift(order)
    tally = ResidualTally("volterra", order=order)
    rhs = w * (shift(w, 1) - shift(w, -1))
    tally.sseries("s2-flow", w.derivative_s(2) * EPS - rhs, indices=_even)
    return tally.report()


def _even(i: int) -> bool:
    return i % 2 == 0


def volterra_flow(j: int) -> object:
    """Λ⁻¹ coefficient of ``[(L_e^{2j})_+, L_e]`` with ``L_e = Λ + w_0 Λ⁻¹``."""
    if not 1 <= j <= MAX_VOLTERRA_FLOW:
        raise ValueError(f"Volterra flows are implemented for 1 ≤ j ≤ {MAX_VOLTERRA_FLOW}, got {j}")
    lattice = lattice_ring(4 * j + 2)
    lax = LatticeOp(lattice, {1: lattice.ring.one, -1: lattice.w(0)})
    positive = lax.power(2 * j).plus_part()
    commutator = positive @ lax - lax @ positive
    stray = [m for m in commutator.support() if m != -1]
    if stray:
        raise SupportViolation(
            f"[(L_e^{2 * j})_+, L_e] has terms at shift degrees {stray}"
        )
    return commutator.coefficient(-1)


def verify_volterra_hierarchy(
    j: int, even_energy: SSeries, order: int | None = None
) -> ResidualReport:
    """``ε ∂w/∂s_{2j}`` against the Λ⁻¹ part of ``[(L_e^{2j})_+, L_e]``."""
    order = _order(order)
    flow = volterra_flow(j)
    lattice = lattice_ring(4 * j + 2)
    w = even_solution(even_energy, order)
    subst = Specializer(lattice, w * 0, w, series_shift(order))
    tally = ResidualTally("volterra-hierarchy", j=j, order=order)
    tally.sseries(
        f"s{2 * j}-flow", w.derivative_s(2 * j) * EPS - subst(flow), indices=_even
    )
    return tally.report()


def verify_odd_vanishing(
    free_energy: SSeries, order: int | None = None
) -> ResidualReport:
    """``v^G`` vanishes once every odd coupling is set to zero."""
    order = _order(order)
    v = eps_difference(free_energy.derivative_s(1), order)
    tally = ResidualTally("odd-vanishing", order=order)
    tally.sseries("v|s_odd=0", v.restrict_even(), indices=_even)
    return tally.report()


def genus_part(f: SSeries, g: int) -> SSeries:
    """``[ε^{2g−2}] f`` as a coupling series with ε-free coefficients."""
    return f.map_eps(lambda c: EpsSeries.constant(genus_slice(c, g)))


def _genus_identity_residual(normalized: SSeries, h: int) -> SSeries:
    """LHS − RHS of the ε^{2h} part of the normalized product identity.

    LHS: ``Σ_{g+g'=h} c_g ∂^{2g+2} ∂_{s_2} F_{g'}``;
    RHS: ``Σ_{g1+g2+g1'+g2'=h} c_{g1} ∂^{2g1+1} ∂_{s_2} F_{g1'}
    · (δ_{g2,0} δ_{g2',0}/x + 2 ∂^{2g2+3} F_{g2'}/(2g2+2)!)``,
    with ``c_g = (2^{2g+3}−2) B_{2g+2}/(2g+2)!``.
    """
    slices = [genus_part(normalized, g) for g in range(h + 1)]
    ds2 = [f.derivative_s(2) for f in slices]
    inverse_x = EpsSeries.constant(XLogPoly.monomial(-1))
    lhs = ds2[0].scale(0)
    for g in range(h + 1):
        lhs = lhs + ds2[h - g].derivative_x(2 * g + 2).scale(tanh_coefficient(g))
    rhs = lhs.scale(0)
    for g1 in range(h + 1):
        for g1p in range(h + 1 - g1):
            left = ds2[g1p].derivative_x(2 * g1 + 1).scale(tanh_coefficient(g1))
            rest = h - g1 - g1p
            factor = slices[0].scale(0)
            if rest == 0:
                factor = factor + inverse_x
            for g2 in range(rest + 1):
                g2p = rest - g2
                weight = Fraction(2, math.factorial(2 * g2 + 2))
                factor = factor + slices[g2p].derivative_x(2 * g2 + 3).scale(weight)
            rhs = rhs + left * factor
    return lhs - rhs


def verify_feg_identities(
    even_energy: SSeries,
    order: int | None = None,
    *,
    h_max: int = 2,
    free_energy: SSeries | None = None,
) -> ResidualReport:
    """All product / exponential identities of the even free energy.

    ``w^eG`` is taken as ``w^G|_{s_odd=0}`` when the full ``free_energy`` is
    given, otherwise as ``exp(S F^eG)``.
    """
    order = _order(order)
    tally = ResidualTally("feg", order=order, h_max=h_max)
    t_ds2 = _tanh(even_energy.derivative_s(2), order)
    exp_s = even_solution(even_energy, order)
    if free_energy is not None:
        _, w_full = gue_solution(free_energy, order)
        w_even = w_full.restrict_even()
    else:
        w_even = exp_s
    tally.sseries("T(dF/ds2) = w", t_ds2 - w_even, indices=_even)
    tally.sseries("T(dF/ds2) = exp(S F)", t_ds2 - exp_s, indices=_even)

    s_dx = _second_difference(even_energy.derivative_x(), order)
    t_dx_ds2 = _tanh(even_energy.derivative_s(2).derivative_x(), order)
    tally.sseries("product identity", t_dx_ds2 - t_ds2 * s_dx, indices=_even)

    normalized = normalized_free_energy(even_energy)
    n_ds2 = _tanh(normalized.derivative_s(2), order)
    n_dx_ds2 = _tanh(normalized.derivative_s(2).derivative_x(), order)
    inverse_x = EpsSeries.constant(XLogPoly.monomial(-1))
    n_factor = _second_difference(normalized.derivative_x(), order) + inverse_x
    tally.sseries(
        "normalized product identity", n_dx_ds2 - n_ds2 * n_factor, indices=_even
    )
    head = second_difference(even_energy.s_free().derivative(), order)
    tally.eps("S(dF/dx)|s=0 = 1/x", "1", head - inverse_x)

    for h in range(h_max + 1):
        tally.sseries(
            f"genus {h} identity",
            _genus_identity_residual(normalized, h),
            indices=_even,
        )
    return tally.report()


def verify_feg_rederivation(
    even_energy: SSeries, order: int | None = None
) -> ResidualReport:
    """Differentiate the exponential identity and substitute it back.

    ``∂_x exp(S F) = exp(S F) · S(∂F/∂x)`` and
    ``∂_x T(∂F/∂s_2) = T(∂F/∂s_2) · S(∂F/∂x)``.
    """
    order = _order(order)
    tally = ResidualTally("feg-rederivation", order=order)
    exp_s = even_solution(even_energy, order)
    s_dx = _second_difference(even_energy.derivative_x(), order)
    tally.sseries("d/dx exp(S F)", exp_s.derivative_x() - exp_s * s_dx, indices=_even)
    t_ds2 = _tanh(even_energy.derivative_s(2), order)
    tally.sseries(
        "d/dx T(dF/ds2)", t_ds2.derivative_x() - t_ds2 * s_dx, indices=_even
    )
    return tally.report()
