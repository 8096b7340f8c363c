"""
flows.py
========
KdV flows from the Lax operator,

    ∂u/∂t_d = [(L^{(2d+1)/2})_+, L] / (2·(2d+1)!!),     L = ∂² + 2u,

(the factor 2 because ``∂L/∂t_d = 2 ∂u/∂t_d``), and their check on
``u = ∂²F/∂t_0²`` for the Witten free energy.
"""

import logging
from functools import lru_cache

from sympy.polys.domains import QQ

from app.core.config import settings
from app.core.errors import BoundExceeded, DepthExceeded, SupportViolation
from app.exact.rational import double_factorial, from_domain
from app.kdv.pdo import (
    DiffPoly,
    JetRing,
    PsiDO,
    jet_ring,
    lax_operator,
    lax_sqrt,
    pdo_compose,
)
from app.models import ResidualReport
from app.residuals import ResidualTally
from app.witten.free_energy import (
    TPoly,
    filter_weight,
    monomial_label,
    monomial_weight,
    truncate_degree,
    witten_free_energy,
)

logger = logging.getLogger(__name__)


def default_depth(d: int) -> int:
    return settings.PDO_DEPTH or 2 * d + 4


def flow_jets(d: int, depth: int) -> JetRing:
    return jet_ring(2 * depth + 4 * d + 8)


@lru_cache(maxsize=16)
def _flow(d: int, depth: int) -> tuple[JetRing, DiffPoly]:
    if depth < 2 * d:
        raise DepthExceeded(
            f"flow {d} needs the square root to ∂^-{2 * d}, got depth {depth}"
        )
    jets = flow_jets(d, depth)
    lax = lax_operator(jets)
    root = lax_sqrt(depth, jets)
    power = pdo_compose(lax.power(d), root).plus_part()
    commutator = pdo_compose(power, lax) - pdo_compose(lax, power)
    stray = [k for k in commutator.support() if k != 0]
    if stray:
        raise SupportViolation(
            f"[(L^{(2 * d + 1)}/2)_+, L] has terms at orders {stray}"
        )
    rhs = commutator.coefficient(0) * QQ(1, 2 * double_factorial(2 * d + 1))
    logger.debug("KdV flow %d: %d terms", d, len(rhs))
    return jets, rhs


def kdv_flow_rhs(d: int, depth: int | None = None) -> DiffPoly:
    """The right side of the ``t_d`` flow as a polynomial in ``u_0, u_1, …``."""
    if d < 1:
        raise ValueError(f"KdV flows start at d = 1, got {d}")
    if d > settings.KDV_FLOW_BOUND:
        raise BoundExceeded(
            f"KdV flow {d} exceeds the configured bound {settings.KDV_FLOW_BOUND}"
        )
    return _flow(d, depth if depth is not None else default_depth(d))[1]


def flow_operator(d: int, depth: int | None = None) -> PsiDO:
    """``(L^{(2d+1)/2})_+`` itself."""
    depth = depth if depth is not None else default_depth(d)
    jets = flow_jets(d, depth)
    root = lax_sqrt(depth, jets)
    return pdo_compose(lax_operator(jets).power(d), root).plus_part()


def _evaluate(rhs: DiffPoly, jets_values: list[TPoly], degree: int) -> TPoly:
    """Substitute ``u_k ↦ jets_values[k]`` keeping t-degrees ``≤ degree``."""
    ring = jets_values[0].ring
    total = ring.zero
    for monom, coeff in rhs.items():
        term = ring.one
        for k, e in enumerate(monom):
            for _ in range(e):
                term = truncate_degree(term * jets_values[k], degree)
        total += term * coeff
    return total


def verify_witten_kdv(d: int, degree: int, genus: int) -> ResidualReport:
    """``∂u/∂t_d = kdv_flow_rhs(d)`` for ``u = ∂²F/∂t_0²``.

    Coefficients of t-degree ``≤ degree`` whose weight puts them in genus
    ``≤ genus`` are checked; ``F`` is assembled to degree ``degree + 2d + 3``.
    """
    rhs = kdv_flow_rhs(d)
    free_energy = witten_free_energy(degree + 2 * d + 3, genus, min_times=d + 1)
    ring = free_energy.ring
    t0 = ring.gens[0]
    u = free_energy.derivative(0, 0)
    used = max(
        (k for monom in rhs.itermonoms() for k, e in enumerate(monom) if e), default=0
    )
    values = [u]
    for _ in range(used):
        values.append(values[-1].diff(t0))
    values = [truncate_degree(v, degree) for v in values]
    lhs = truncate_degree(u.diff(ring.gens[d]), degree)
    max_weight = 3 * genus - d
    residual = filter_weight(lhs - _evaluate(rhs, values, degree), max_weight)
    tally = ResidualTally("kdv", d=d, degree=degree, genus=genus)
    checked = {m for m in lhs.itermonoms() if monomial_weight(m) <= max_weight}
    checked |= set(residual.itermonoms())
    for monom in sorted(checked):
        tally.value(
            f"t{d}-flow",
            monomial_label(monom),
            from_domain(residual.get(monom, QQ.zero)),
        )
    return tally.report()
