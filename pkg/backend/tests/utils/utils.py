import random
from fractions import Fraction

from sympy.polys.domains import QQ

from app.exact.xlog import XLogPoly
from app.kdv.pdo import DiffPoly, JetRing, PsiDO


def random_rat(rng: random.Random, bound: int = 9) -> Fraction:
    return Fraction(rng.randint(-bound, bound), rng.randint(1, bound))


def random_xlog_poly(
    rng: random.Random, terms: int = 3, with_log: bool = True
) -> XLogPoly:
    table: dict[tuple[int, int, int], Fraction] = {}
    for _ in range(terms):
        key = (rng.randint(-3, 3), rng.randint(0, 2) if with_log else 0, 0)
        table[key] = random_rat(rng)
    return XLogPoly(table)


def random_psido(rng: random.Random, jets: JetRing, top: int = 1, lowest: int = -2) -> PsiDO:
    """An exact operator with orders ``lowest … top`` and coefficients in ``u, u1, u2``."""
    terms: dict[int, DiffPoly] = {}
    for order in range(lowest, top + 1):
        coeff = jets.ring.zero
        for monom in (jets.ring.one, jets.u(0), jets.u(1), jets.u(0) * jets.u(2)):
            q = random_rat(rng, bound=4)
            coeff += monom * QQ(q.numerator, q.denominator)
        terms[order] = coeff
    return PsiDO(jets, terms)
