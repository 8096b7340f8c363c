"""
free_energy.py
==============
The Witten free energy ``F(t) = Σ_g Σ_n Σ_d ⟨τ_{d_1}…τ_{d_n}⟩_g t_{d_1}…t_{d_n}/n!``
truncated to total t-degree ``D`` and genus ``≤ G``, and the bilinear
identity ``F_{10} = ½ F_{00}² + F_{0000}/12``.

A t-monomial ``∏ t_{d_a}`` carries the weight ``Σ (d_a − 1)``. For a
correlator term of genus ``g`` with ``k`` extra ``∂/∂t_0`` the weight is
``3g − 3 + k``, which is how residual coefficients are assigned a genus.
"""

from __future__ import annotations

import logging
import math
from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Any

from sympy.polys.domains import QQ
from sympy.polys.orderings import grlex
from sympy.polys.rings import PolyRing

from app.exact.rational import from_domain, rat_str, to_qq
from app.models import ResidualReport
from app.residuals import ResidualTally
from app.witten.correlators import dimension_keys, intersection_number
from app.witten.npoint import is_stable

logger = logging.getLogger(__name__)

TPoly = Any  # element of a time ring


@lru_cache(maxsize=8)
def time_ring(n_times: int) -> PolyRing:
    """``ℚ[t_0, …, t_{n_times−1}]``."""
    return PolyRing(tuple(f"t{k}" for k in range(n_times)), QQ, grlex)


def monomial_weight(monom: tuple[int, ...]) -> int:
    return sum(e * (k - 1) for k, e in enumerate(monom))


def truncate_degree(p: TPoly, degree: int) -> TPoly:
    return p.ring.from_dict({m: c for m, c in p.items() if sum(m) <= degree})


def filter_weight(p: TPoly, max_weight: int) -> TPoly:
    return p.ring.from_dict(
        {m: c for m, c in p.items() if monomial_weight(m) <= max_weight}
    )


def monomial_label(monom: tuple[int, ...]) -> str:
    parts = [
        f"t{k}" if e == 1 else f"t{k}^{e}" for k, e in enumerate(monom) if e
    ]
    return "*".join(parts) or "1"


@dataclass
class WittenFreeEnergy:
    """``F`` to degree ``degree`` in the times, genus ``≤ genus``."""

    ring: PolyRing
    degree: int
    genus: int
    slices: dict[int, TPoly] = field(default_factory=dict)

    @property
    def poly(self) -> TPoly:
        total = self.ring.zero
        for p in self.slices.values():
            total += p
        return total

    def t(self, k: int) -> TPoly:
        return self.ring.gens[k]

    def coefficient(self, d: tuple[int, ...]) -> Any:
        """Coefficient of ``t_{d_1} … t_{d_n}``."""
        exponents = [0] * self.ring.ngens
        for k in d:
            exponents[k] += 1
        return from_domain(self.poly.get(tuple(exponents), QQ.zero))

    def derivative(self, *indices: int) -> TPoly:
        p = self.poly
        for k in indices:
            p = p.diff(self.ring.gens[k])
        return p

    def to_json(self) -> dict[str, object]:
        return {
            "degree": self.degree,
            "genus": self.genus,
            "terms": {
                monomial_label(tuple(m)): rat_str(from_domain(c))
                for m, c in sorted(self.poly.items())
            },
        }


def witten_free_energy(
    degree: int, genus: int, *, min_times: int = 2
) -> WittenFreeEnergy:
    """Assemble ``F`` from intersection numbers, one genus slice at a time.

    The ring holds every time a correlator of the budget can reach, and at
    least ``t_0 … t_{min_times−1}``.
    """
    n_times = 3 * genus - 2 + degree
    ring = time_ring(max(n_times, min_times))
    logger.info("Assembling Witten free energy (degree %d, genus %d)", degree, genus)
    slices: dict[int, TPoly] = {}
    for g in range(genus + 1):
        terms: dict[tuple[int, ...], Any] = {}
        for n in range(1, degree + 1):
            if not is_stable(g, n):
                continue
            for key in dimension_keys(g, n):
                value = intersection_number(g, key)
                if not value:
                    continue
                counts = Counter(key)
                exponents = [0] * ring.ngens
                for k, m in counts.items():
                    exponents[k] = m
                symmetry = math.prod(math.factorial(m) for m in counts.values())
                terms[tuple(exponents)] = to_qq(value / symmetry)
        slices[g] = ring.from_dict(terms)
        logger.debug("genus %d slice: %d terms", g, len(terms))
    return WittenFreeEnergy(ring, degree, genus, slices)


def bilinear_residual(free_energy: WittenFreeEnergy) -> TPoly:
    """``F_{10} − ½ F_{00}² − F_{0000}/12`` cut to the reliable degrees and weights.

    ``F_{0000}`` loses four degrees, so only t-degrees ``≤ degree − 4`` are kept.
    """
    reliable = free_energy.degree - 4
    f00 = truncate_degree(free_energy.derivative(0, 0), reliable)
    residual = (
        free_energy.derivative(1, 0)
        - f00 * f00 * QQ(1, 2)
        - free_energy.derivative(0, 0, 0, 0) * QQ(1, 12)
    )
    residual = truncate_degree(residual, reliable)
    return filter_weight(residual, 3 * free_energy.genus - 2)


def verify_bilinear(degree: int, genus: int) -> ResidualReport:
    """The bilinear identity coefficientwise to t-degree ``degree − 2``."""
    free_energy = witten_free_energy(degree + 2, genus)
    tally = ResidualTally("bilinear", degree=degree, genus=genus)
    reliable = degree - 2
    max_weight = 3 * free_energy.genus - 2
    pieces = (
        free_energy.derivative(1, 0),
        free_energy.derivative(0, 0),
        free_energy.derivative(0, 0, 0, 0),
    )
    checked = {
        m
        for p in pieces
        for m in p.itermonoms()
        if sum(m) <= reliable and monomial_weight(m) <= max_weight
    }
    residual = bilinear_residual(free_energy)
    for monom in sorted(checked | set(residual.itermonoms())):
        value = from_domain(residual.get(monom, QQ.zero))
        tally.value("bilinear", monomial_label(monom), value)
    return tally.report()
