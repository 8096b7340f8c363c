"""
lattice.py
==========
The abstract Toda ring ``𝒜 = ℤ[v_m, w_m]`` on a finite window of lattice
sites, difference operators ``Σ_m P_m Λ^m`` over it, the Toda flows
``D_i(L) = [(L^i)_+, L]`` and the substitution of concrete series for the
symbols.

A ring on window ``W`` has the generators ``v_{-W} … v_W, w_{-W} … w_W``;
``Λ`` relabels them and any shift that leaves the window raises
``WindowExceeded``.
"""

from __future__ import annotations

import logging
from collections.abc import Callable, Iterator, Mapping
from functools import lru_cache
from typing import Any

from sympy.polys.domains import ZZ
from sympy.polys.orderings import lex
from sympy.polys.rings import PolyRing

from app.core.config import settings
from app.core.errors import BoundExceeded, SupportViolation, WindowExceeded
from app.models import ResidualReport
from app.residuals import ResidualTally

logger = logging.getLogger(__name__)

AbstractPoly = Any  # element of LatticeRing.ring


def _site_label(name: str, m: int) -> str:
    return f"{name}{m}" if m >= 0 else f"{name}m{-m}"


class LatticeRing:
    """``ℤ[v_m, w_m]`` for ``|m| ≤ window`` with the shift ``Λ``."""

    def __init__(self, window: int) -> None:
        if window < 0:
            raise ValueError(f"window must be nonnegative, got {window}")
        self.window = window
        sites = range(-window, window + 1)
        names = [_site_label("v", m) for m in sites] + [
            _site_label("w", m) for m in sites
        ]
        self.ring = PolyRing(tuple(names), ZZ, lex)
        self.size = 2 * window + 1

    def _index(self, block: int, m: int) -> int:
        if abs(m) > self.window:
            raise WindowExceeded(
                f"lattice site {m} lies outside the window ±{self.window}"
            )
        return block * self.size + m + self.window

    def v(self, m: int = 0) -> AbstractPoly:
        return self.ring.gens[self._index(0, m)]

    def w(self, m: int = 0) -> AbstractPoly:
        return self.ring.gens[self._index(1, m)]

    def sites(self, p: AbstractPoly) -> Iterator[tuple[str, int, AbstractPoly]]:
        """``(name, m, generator)`` for every generator occurring in ``p``."""
        used = [False] * (2 * self.size)
        for monom in p.itermonoms():
            for idx, e in enumerate(monom):
                if e:
                    used[idx] = True
        for idx, flag in enumerate(used):
            if flag:
                block, pos = divmod(idx, self.size)
                name = "v" if block == 0 else "w"
                yield name, pos - self.window, self.ring.gens[idx]

    def shift(self, p: AbstractPoly, k: int) -> AbstractPoly:
        """``Λ^k p``: every ``v_m, w_m`` becomes ``v_{m+k}, w_{m+k}``."""
        if k == 0 or not p:
            return p
        terms: dict[tuple[int, ...], Any] = {}
        for monom, coeff in p.items():
            shifted = [0] * len(monom)
            for idx, e in enumerate(monom):
                if not e:
                    continue
                block, pos = divmod(idx, self.size)
                m = pos - self.window + k
                shifted[self._index(block, m)] = e
            terms[tuple(shifted)] = coeff
        return self.ring.from_dict(terms)

    def derivation(
        self, p: AbstractPoly, dv: AbstractPoly, dw: AbstractPoly
    ) -> AbstractPoly:
        """The Λ-equivariant derivation with ``D(v_0) = dv``, ``D(w_0) = dw``."""
        result = self.ring.zero
        for name, m, gen in self.sites(p):
            image = self.shift(dv if name == "v" else dw, m)
            result += p.diff(gen) * image
        return result

    def to_json(self, p: AbstractPoly) -> str:
        return str(p.as_expr())


@lru_cache(maxsize=16)
def lattice_ring(window: int) -> LatticeRing:
    return LatticeRing(window)


# ---------------------------------------------------------------------------
# Difference operators
# ---------------------------------------------------------------------------


class LatticeOp:
    """Finite sum ``Σ_m P_m Λ^m`` with coefficients in a ``LatticeRing``."""

    __slots__ = ("lattice", "terms")

    def __init__(self, lattice: LatticeRing, terms: Mapping[int, AbstractPoly]) -> None:
        self.lattice = lattice
        self.terms = {m: p for m, p in terms.items() if p}

    def __add__(self, other: LatticeOp) -> LatticeOp:
        terms = dict(self.terms)
        for m, p in other.terms.items():
            terms[m] = terms[m] + p if m in terms else p
        return LatticeOp(self.lattice, terms)

    def __neg__(self) -> LatticeOp:
        return LatticeOp(self.lattice, {m: -p for m, p in self.terms.items()})

    def __sub__(self, other: LatticeOp) -> LatticeOp:
        return self + (-other)

    def __matmul__(self, other: LatticeOp) -> LatticeOp:
        """``(P Λ^a)(Q Λ^b) = P · Λ^a(Q) Λ^{a+b}``."""
        terms: dict[int, AbstractPoly] = {}
        for a, p in self.terms.items():
            for b, q in other.terms.items():
                piece = p * self.lattice.shift(q, a)
                terms[a + b] = terms[a + b] + piece if a + b in terms else piece
        return LatticeOp(self.lattice, terms)

    def power(self, k: int) -> LatticeOp:
        result = LatticeOp(self.lattice, {0: self.lattice.ring.one})
        for _ in range(k):
            result = result @ self
        return result

    def plus_part(self) -> LatticeOp:
        return LatticeOp(self.lattice, {m: p for m, p in self.terms.items() if m >= 0})

    def support(self) -> list[int]:
        return sorted(self.terms)

    def coefficient(self, m: int) -> AbstractPoly:
        return self.terms.get(m, self.lattice.ring.zero)


def lax_operator(lattice: LatticeRing) -> LatticeOp:
    """``L = Λ + v_0 + w_0 Λ⁻¹``."""
    return LatticeOp(
        lattice, {1: lattice.ring.one, 0: lattice.v(0), -1: lattice.w(0)}
    )


def flow_window(i: int) -> int:
    return 2 * i + 2


@lru_cache(maxsize=32)
def _toda_flow(i: int, window: int) -> tuple[AbstractPoly, AbstractPoly]:
    lattice = lattice_ring(window)
    lax = lax_operator(lattice)
    positive = lax.power(i).plus_part()
    commutator = positive @ lax - lax @ positive
    stray = [m for m in commutator.support() if m not in (0, -1)]
    if stray:
        raise SupportViolation(
            f"[(L^{i})_+, L] has terms at shift degrees {stray}"
        )
    logger.debug(
        "Toda flow %d: %d + %d terms",
        i,
        len(commutator.coefficient(0)),
        len(commutator.coefficient(-1)),
    )
    return commutator.coefficient(0), commutator.coefficient(-1)


def toda_flow(
    i: int, lattice: LatticeRing | None = None
) -> tuple[AbstractPoly, AbstractPoly]:
    """``(D_i(v_0), D_i(w_0))`` from the Λ⁰ and Λ⁻¹ parts of ``[(L^i)_+, L]``."""
    if i < 1:
        raise ValueError(f"flow index must be positive, got {i}")
    if i > settings.TODA_BOUND:
        raise BoundExceeded(
            f"Toda flow {i} exceeds the configured bound {settings.TODA_BOUND}"
        )
    window = lattice.window if lattice is not None else flow_window(i)
    return _toda_flow(i, window)


def check_flow_commutativity(i: int, j: int) -> ResidualReport:
    """``D_i D_j − D_j D_i`` on ``v_0`` and ``w_0``."""
    lattice = lattice_ring(flow_window(i) + flow_window(j))
    di = toda_flow(i, lattice)
    dj = toda_flow(j, lattice)
    tally = ResidualTally("toda-commutativity", i=i, j=j)
    for name, k in (("v", 0), ("w", 1)):
        residual = lattice.derivation(dj[k], *di) - lattice.derivation(di[k], *dj)
        tally.symbolic("commutator", f"{name}0", residual, lattice.to_json)
    return tally.report()


# ---------------------------------------------------------------------------
# Substitution
# ---------------------------------------------------------------------------


class Specializer:
    """Ring homomorphism ``v_m ↦ Λ^m v``, ``w_m ↦ Λ^m w`` into a series ring.

    ``shift`` realizes ``Λ^m`` on the target (a Taylor shift); sites beyond
    ``window`` raise ``WindowExceeded``.
    """

    def __init__(
        self,
        lattice: LatticeRing,
        v: Any,
        w: Any,
        shift: Callable[[Any, int], Any],
        window: int | None = None,
    ) -> None:
        self.lattice = lattice
        self.base = {"v": v, "w": w}
        self.shift = shift
        self.window = lattice.window if window is None else window
        self._sites: dict[tuple[str, int], Any] = {}
        self.zero = v * 0

    def site(self, name: str, m: int) -> Any:
        if abs(m) > self.window:
            raise WindowExceeded(
                f"{name}_{m} lies outside the substitution window ±{self.window}"
            )
        key = (name, m)
        if key not in self._sites:
            self._sites[key] = self.shift(self.base[name], m)
        return self._sites[key]

    def __call__(self, p: AbstractPoly) -> Any:
        lattice = self.lattice
        values: dict[int, Any] = {}
        for name, m, _ in lattice.sites(p):
            values[lattice._index(0 if name == "v" else 1, m)] = self.site(name, m)
        total = self.zero
        for monom, coeff in p.items():
            term: Any = None
            for idx, e in enumerate(monom):
                for _ in range(e):
                    term = values[idx] if term is None else term * values[idx]
            piece = (self.zero + 1) * int(coeff) if term is None else term * int(coeff)
            total = total + piece
        return total


def specialize(
    expr: AbstractPoly | LatticeOp,
    lattice: LatticeRing,
    v: Any,
    w: Any,
    shift: Callable[[Any, int], Any],
    window: int | None = None,
) -> Any:
    """Substitute ``(v, w)`` into a ring element or a difference operator."""
    subst = Specializer(lattice, v, w, shift, window)
    if isinstance(expr, LatticeOp):
        return {m: subst(p) for m, p in sorted(expr.terms.items())}
    return subst(expr)
