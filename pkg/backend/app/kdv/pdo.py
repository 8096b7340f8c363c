"""
pdo.py
======
Differential polynomials in the jets ``u_0 = u, u_1 = u′, …`` and
pseudodifferential operators ``Σ_k a_k ∂^k`` over them.

A ``PsiDO`` carries a ``depth``: its coefficients are exact for every order
``k ≥ −depth`` and nothing below is stored. ``None`` marks an operator that
is exact as written (a differential operator, or a single ``∂^{-1}``).
Composing loses precision when a factor has positive order, so the depth of
a product is tracked rather than fixed.
"""

from __future__ import annotations

import logging
from collections.abc import Mapping
from functools import lru_cache
from typing import Any

from sympy.polys.domains import QQ
from sympy.polys.orderings import grlex
from sympy.polys.rings import PolyRing

from app.core.errors import DepthExceeded, InconsistentSystem
from app.exact.rational import gen_binom, to_qq
from app.models import ResidualReport
from app.residuals import ResidualTally

logger = logging.getLogger(__name__)

DiffPoly = Any  # element of JetRing.ring


class JetRing:
    """``ℚ[u_0, …, u_{n−1}]`` with the total derivative ``D(u_k) = u_{k+1}``."""

    def __init__(self, n_jets: int) -> None:
        if n_jets < 1:
            raise ValueError(f"need at least one jet, got {n_jets}")
        self.n_jets = n_jets
        self.ring = PolyRing(tuple(f"u{k}" for k in range(n_jets)), QQ, grlex)

    def u(self, k: int = 0) -> DiffPoly:
        if not 0 <= k < self.n_jets:
            raise DepthExceeded(f"jet u{k} lies outside the ring of {self.n_jets} jets")
        return self.ring.gens[k]

    def d_x(self, p: DiffPoly, times: int = 1) -> DiffPoly:
        for _ in range(times):
            if not p:
                return p
            result = self.ring.zero
            for k, gen in enumerate(self.ring.gens):
                partial = p.diff(gen)
                if partial:
                    result += partial * self.u(k + 1)
            p = result
        return p

    def weights(self, p: DiffPoly) -> set[int]:
        """Weights of the monomials of ``p`` when ``u_k`` has weight ``k + 2``."""
        return {
            sum(e * (k + 2) for k, e in enumerate(monom)) for monom in p.itermonoms()
        }

    def to_json(self, p: DiffPoly) -> str:
        return str(p.as_expr())


@lru_cache(maxsize=8)
def jet_ring(n_jets: int) -> JetRing:
    return JetRing(n_jets)


def _min_depth(*depths: int | None) -> int | None:
    known = [d for d in depths if d is not None]
    return min(known) if known else None


class PsiDO:
    """``Σ_k a_k ∂^k`` with ``a_k`` in a ``JetRing``."""

    __slots__ = ("depth", "jets", "terms")

    def __init__(
        self,
        jets: JetRing,
        terms: Mapping[int, DiffPoly],
        depth: int | None = None,
    ) -> None:
        self.jets = jets
        self.depth = depth
        self.terms = {
            k: p for k, p in terms.items() if p and (depth is None or k >= -depth)
        }

    @classmethod
    def derivative(cls, jets: JetRing, k: int = 1) -> PsiDO:
        """``∂^k`` (any integer ``k``)."""
        return cls(jets, {k: jets.ring.one})

    @classmethod
    def multiplication(cls, jets: JetRing, a: DiffPoly) -> PsiDO:
        return cls(jets, {0: a})

    @property
    def top(self) -> int | None:
        return max(self.terms) if self.terms else None

    def support(self) -> list[int]:
        return sorted(self.terms)

    def coefficient(self, k: int) -> DiffPoly:
        if self.depth is not None and k < -self.depth:
            raise DepthExceeded(f"∂^{k} lies below the known depth {self.depth}")
        return self.terms.get(k, self.jets.ring.zero)

    def truncated(self, depth: int) -> PsiDO:
        return PsiDO(self.jets, self.terms, _min_depth(self.depth, depth))

    def __add__(self, other: PsiDO) -> PsiDO:
        terms = dict(self.terms)
        for k, p in other.terms.items():
            terms[k] = terms[k] + p if k in terms else p
        return PsiDO(self.jets, terms, _min_depth(self.depth, other.depth))

    def __neg__(self) -> PsiDO:
        return PsiDO(self.jets, {k: -p for k, p in self.terms.items()}, self.depth)

    def __sub__(self, other: PsiDO) -> PsiDO:
        return self + (-other)

    def scale(self, c: Any) -> PsiDO:
        factor = to_qq(c)
        return PsiDO(self.jets, {k: p * factor for k, p in self.terms.items()}, self.depth)

    def plus_part(self) -> PsiDO:
        """``P_+``; exact once the nonnegative orders are known."""
        if self.depth is not None and self.depth < 0:
            raise DepthExceeded("the differential part of the operator is not known")
        return PsiDO(self.jets, {k: p for k, p in self.terms.items() if k >= 0})

    def compose(self, other: PsiDO, depth: int | None = None) -> PsiDO:
        return pdo_compose(self, other, depth)

    def __matmul__(self, other: PsiDO) -> PsiDO:
        return pdo_compose(self, other)

    def power(self, k: int, depth: int | None = None) -> PsiDO:
        if k < 0:
            raise ValueError(f"power must be nonnegative, got {k}")
        result = PsiDO.derivative(self.jets, 0)
        for _ in range(k):
            result = pdo_compose(result, self, depth)
        return result

    def is_zero(self) -> bool:
        return not self.terms

    def to_json(self) -> dict[str, str]:
        return {str(k): self.jets.to_json(p) for k, p in sorted(self.terms.items())}

    def __repr__(self) -> str:
        body = " + ".join(
            f"({p.as_expr()})*d^{k}" for k, p in sorted(self.terms.items(), reverse=True)
        )
        return f"PsiDO({body or '0'}; depth={self.depth})"


def pdo_compose(p: PsiDO, q: PsiDO, depth: int | None = None) -> PsiDO:
    """``P ∘ Q`` from ``∂^k ∘ b = Σ_j C(k, j) D^j(b) ∂^{k−j}``.

    The result is exact for orders ``≥ −depth'`` where ``depth'`` is the
    smallest of ``depth``, ``P.depth − top(Q)`` and ``Q.depth − top(P)``.
    An infinite expansion with no depth to stop at raises ``DepthExceeded``.
    """
    jets = p.jets
    bounds: list[int | None] = [depth]
    if p.depth is not None and q.top is not None:
        bounds.append(p.depth - q.top)
    if q.depth is not None and p.top is not None:
        bounds.append(q.depth - p.top)
    target = _min_depth(*bounds)
    if target is None and any(k < 0 for k in p.terms) and q.terms:
        if any(jets.d_x(b) for b in q.terms.values()):
            raise DepthExceeded("composition with a negative power needs a depth")
    terms: dict[int, DiffPoly] = {}
    for l_order, b in q.terms.items():
        ladder = [b]
        for k, a in p.terms.items():
            j = 0
            while True:
                order = k + l_order - j
                if target is not None and order < -target:
                    break
                if k >= 0 and j > k:
                    break
                while len(ladder) <= j:
                    ladder.append(jets.d_x(ladder[-1]))
                derived = ladder[j]
                if not derived:
                    break
                piece = a * derived * to_qq(gen_binom(k, j))
                terms[order] = terms[order] + piece if order in terms else piece
                j += 1
    return PsiDO(jets, terms, target)


def lax_operator(jets: JetRing) -> PsiDO:
    """``L = ∂² + 2u``."""
    return PsiDO(jets, {2: jets.ring.one, 0: 2 * jets.u(0)})


def lax_sqrt(depth: int, jets: JetRing | None = None) -> PsiDO:
    """``S = ∂ + Σ_{k≤0} s_k ∂^k`` with ``S ∘ S = L``, known to ``∂^{−depth}``.

    The coefficient of ``∂^{k+1}`` in ``S ∘ S`` is ``2 s_k`` plus terms in the
    ``s_j`` with ``j > k``, so each ``s_k`` is solved in turn.
    """
    if depth < 1:
        raise ValueError(f"depth must be positive, got {depth}")
    jets = jets if jets is not None else jet_ring(2 * depth + 8)
    lax = lax_operator(jets)
    root = PsiDO(jets, {1: jets.ring.one}, depth)
    for k in range(0, -depth - 1, -1):
        square = pdo_compose(root, root)
        gap = lax.coefficient(k + 1) - square.coefficient(k + 1)
        terms = dict(root.terms)
        terms[k] = gap * QQ(1, 2)
        root = PsiDO(jets, terms, depth)
        logger.debug("square root: s_%d solved", k)
    residual = pdo_compose(root, root) - lax
    if not residual.is_zero():
        raise InconsistentSystem(f"S∘S − L does not vanish: {residual!r}")
    return root


def verify_lax_sqrt(root: PsiDO) -> ResidualReport:
    """``S∘S = L`` and ``[S, L] = 0`` down to the order ``root`` is known at."""
    jets = root.jets
    lax = lax_operator(jets)
    square = pdo_compose(root, root) - lax
    commutator = pdo_compose(root, lax) - pdo_compose(lax, root)
    tally = ResidualTally("lax-sqrt", depth=root.depth)
    for name, residual in (("square", square), ("commutator", commutator)):
        floor = -(residual.depth or 0)
        for k in range(floor, (residual.top or 0) + 1):
            tally.symbolic(name, f"d^{k}", residual.coefficient(k), jets.to_json)
    return tally.report()
