"""
resolvent.py
============
The matrix resolvent ``R(λ) = Σ_k R_k λ^{-k}`` of the Toda Lax operator:
the unique solution of ``Λ(R) U − U R = 0`` with ``R_0 = diag(1, 0)``,
``tr R = 1`` and ``det R = 0``, where

    U(λ) = [[v_0 − λ, w_0], [−1, 0]].

Writing ``R_k = [[a_k, b_k], [c_k, d_k]]`` the (2,2) entry gives
``b_k = −w_0 Λ(c_k)``, the trace gives ``d_k = δ_{k,0} − a_k``, the (2,1)
entry determines ``c_{k+1}`` and the determinant determines ``a_{k+1}``.
The remaining (1,1) and (1,2) entries are not used by the solve and are
re-checked at every order.

The recursion only needs ring operations and ``Λ``, so the same
``solve_entries`` runs over the abstract ring, over coupling series and
over the truncated ``(x, ε)`` polynomials of the initial data.
"""

from __future__ import annotations

import logging
from collections.abc import Callable
from dataclasses import dataclass
from typing import Any

from app.core.errors import InconsistentSystem
from app.models import ResidualReport
from app.residuals import ResidualTally
from app.toda.lattice import AbstractPoly, LatticeRing, Specializer, lattice_ring

logger = logging.getLogger(__name__)

ShiftFn = Callable[[Any, int], Any]


@dataclass
class ResolventEntries:
    """Coefficient lists of the four entries, ``R_k`` for ``k = 0 … depth``."""

    a: list[Any]
    b: list[Any]
    c: list[Any]
    d: list[Any]

    @property
    def depth(self) -> int:
        return len(self.a) - 1


def solve_entries(
    v: Any,
    w: Any,
    depth: int,
    shift: ShiftFn,
    *,
    trim: Callable[[Any], Any] | None = None,
) -> ResolventEntries:
    """Run the order-by-order solve to ``λ^{-depth}`` in whatever ring ``v, w`` live."""
    if depth < 0:
        raise ValueError(f"depth must be nonnegative, got {depth}")
    zero = v * 0
    one = zero + 1

    def tidy(value: Any) -> Any:
        return trim(value) if trim is not None else value

    v_prev = shift(v, -1)
    a, b, c, d = [one], [zero], [zero], [zero]
    shifted_c = [zero]
    for k in range(depth):
        c_next = v_prev * c[k] + a[k] + shift(a[k], -1)
        if k == 0:
            c_next = c_next - one
        c_next = tidy(c_next)
        c.append(c_next)
        shifted_c.append(shift(c_next, 1))
        a_next = zero
        for j in range(1, k + 1):
            a_next = a_next + w * (c[j] * shifted_c[k + 1 - j]) - a[j] * a[k + 1 - j]
        a_next = tidy(a_next)
        a.append(a_next)
        b.append(tidy(-(w * shifted_c[k + 1])))
        d.append(-a_next)
        logger.debug("resolvent order λ^-%d solved", k + 1)
    return ResolventEntries(a, b, c, d)


def entry_residuals(
    entries: ResolventEntries, v: Any, w: Any, shift: ShiftFn
) -> dict[str, list[Any]]:
    """Order-by-order residuals of the four entries of ``Λ(R)U − UR``, of
    ``tr R − 1`` and of ``det R``."""
    a, b, c, d = entries.a, entries.b, entries.c, entries.d
    depth = entries.depth
    zero = v * 0
    residuals: dict[str, list[Any]] = {
        "eq11": [], "eq12": [], "eq21": [], "eq22": [], "trace": [], "det": []
    }
    for k in range(depth):
        sa, sb, sc, sd = (shift(e[k], 1) for e in (a, b, c, d))
        residuals["eq11"].append(
            sa * v - sb - v * a[k] - w * c[k] - shift(a[k + 1], 1) + a[k + 1]
        )
        residuals["eq12"].append(sa * w - v * b[k] - w * d[k] + b[k + 1])
        residuals["eq21"].append(sc * v - sd + a[k] - shift(c[k + 1], 1))
        residuals["eq22"].append(sc * w + b[k])
    for k in range(depth + 1):
        trace = a[k] + d[k]
        residuals["trace"].append(trace - 1 if k == 0 else trace)
        det = zero
        for j in range(k + 1):
            det = det + a[j] * d[k - j] - b[j] * c[k - j]
        residuals["det"].append(det)
    return residuals


@dataclass
class MatRes:
    """The abstract resolvent to depth ``K`` over ``lattice``."""

    lattice: LatticeRing
    entries: ResolventEntries

    @property
    def depth(self) -> int:
        return self.entries.depth

    def entry(self, row: int, col: int, k: int) -> AbstractPoly:
        table = {
            (1, 1): self.entries.a,
            (1, 2): self.entries.b,
            (2, 1): self.entries.c,
            (2, 2): self.entries.d,
        }[(row, col)]
        return table[k]

    def to_json(self) -> dict[str, list[str]]:
        render = self.lattice.to_json
        return {
            "R11": [render(p) for p in self.entries.a],
            "R12": [render(p) for p in self.entries.b],
            "R21": [render(p) for p in self.entries.c],
            "R22": [render(p) for p in self.entries.d],
        }


def resolvent(depth: int) -> MatRes:
    """Solve the resolvent equation to ``λ^{-depth}`` in ``ℤ[v_m, w_m]``.

    Raises ``InconsistentSystem`` when an equation not used by the solve
    fails at some order.
    """
    lattice = lattice_ring(depth + 2)
    v, w = lattice.v(0), lattice.w(0)
    logger.info("Solving the abstract resolvent to depth %d", depth)
    entries = solve_entries(v, w, depth, lattice.shift)
    result = MatRes(lattice, entries)
    for name, values in entry_residuals(entries, v, w, lattice.shift).items():
        for k, value in enumerate(values):
            if value:
                raise InconsistentSystem(
                    f"resolvent {name} fails at λ^-{k}: {lattice.to_json(value)}"
                )
    return result


def resolvent_residuals(matres: MatRes) -> ResidualReport:
    lattice = matres.lattice
    v, w = lattice.v(0), lattice.w(0)
    tally = ResidualTally("resolvent", depth=matres.depth)
    for name, values in entry_residuals(matres.entries, v, w, lattice.shift).items():
        for k, value in enumerate(values):
            tally.symbolic(name, f"lambda^-{k}", value, lattice.to_json)
    return tally.report()


def specialize_resolvent(
    matres: MatRes, v: Any, w: Any, shift: ShiftFn
) -> ResolventEntries:
    """Push every entry of the abstract resolvent through ``v_m ↦ Λ^m v``, ``w_m ↦ Λ^m w``."""
    subst = Specializer(matres.lattice, v, w, shift)
    e = matres.entries
    return ResolventEntries(
        [subst(p) for p in e.a],
        [subst(p) for p in e.b],
        [subst(p) for p in e.c],
        [subst(p) for p in e.d],
    )


# ---------------------------------------------------------------------------
# Two-point generating function
# ---------------------------------------------------------------------------


def trace_antidiagonal(
    entries: ResolventEntries, total: int
) -> dict[tuple[int, int], Any]:
    """``p_{kl}`` with ``k + l = total`` in ``tr R(λ)R(μ) − 1 = Σ p_{kl} λ^{-k} μ^{-l}``."""
    a, b, c, d = entries.a, entries.b, entries.c, entries.d
    out: dict[tuple[int, int], Any] = {}
    for k in range(total + 1):
        m = total - k
        value = a[k] * a[m] + b[k] * c[m] + c[k] * b[m] + d[k] * d[m]
        out[(k, m)] = value - 1 if total == 0 else value
    return out


def divide_antidiagonal(
    p: dict[tuple[int, int], Any], total: int, zero: Any
) -> tuple[dict[tuple[int, int], Any], Any]:
    """Divide one antidiagonal by ``X − Y``; returns the quotient and the remainder.

    ``p_{k,l} = q_{k−1,l} − q_{k,l−1}`` determines ``q`` on ``k + l = total − 1``
    from ``k = 0`` upwards; the last equation ``p_{total,0} = q_{total−1,0}``
    is left over as the remainder.
    """
    q: dict[tuple[int, int], Any] = {}
    prev = zero
    for k in range(total):
        prev = prev - p[(k, total - k)]
        q[(k, total - 1 - k)] = prev
    return q, prev - p[(total, 0)]


def twopoint_antidiagonal(
    entries: ResolventEntries, total: int, zero: Any
) -> tuple[dict[tuple[int, int], Any], list[Any]]:
    """Coefficients of ``X^{i−1}Y^{j−1}`` with ``i + j = total`` in
    ``(tr R(λ)R(μ) − 1)/(X − Y)²``, plus both division remainders."""
    once, first = divide_antidiagonal(trace_antidiagonal(entries, total), total, zero)
    twice, second = divide_antidiagonal(once, total - 1, zero)
    return twice, [first, second]
