from fractions import Fraction

import pytest

from app.core.errors import TruncationMismatch
from app.exact.series import EpsSeries
from app.exact.xlog import XLogPoly
from app.toda.sseries import Box, SSeries, monomial_label

BOX = Box(max_weight=4, max_count=2)


def _series(*terms: tuple[tuple[int, ...], int]) -> SSeries:
    return SSeries({m: EpsSeries.constant(c) for m, c in terms}, BOX)


def test_box_monomials() -> None:
    assert Box(3, 2).monomials() == [(), (1,), (2,), (3,), (1, 1), (1, 2)]
    assert Box(4, 2).monomials(lambda i: i % 2 == 0) == [(), (2,), (4,), (2, 2)]


def test_box_after_operations() -> None:
    assert BOX.after_derivative(2) == Box(2, 1)
    assert BOX.after_coupling(1) == Box(5, 3)
    assert BOX.meet(Box(3, None)) == Box(3, 2)


def test_monomial_label() -> None:
    assert monomial_label(()) == "1"
    assert monomial_label((1, 2, 2)) == "s1*s2^2"


def test_product_respects_box() -> None:
    f = _series(((1,), 1), ((2,), 1))
    square = f * f
    assert square.coefficient((1, 1)).coefficient(0) == XLogPoly.constant(1)
    assert square.coefficient((1, 2)).coefficient(0) == XLogPoly.constant(2)
    with pytest.raises(TruncationMismatch):
        square.coefficient((1, 1, 1))


def test_derivative_shrinks_box() -> None:
    f = _series(((2, 2), 3))
    df = f.derivative_s(2)
    assert df.box == Box(2, 1)
    assert df.coefficient((2,)).coefficient(0) == XLogPoly.constant(6)


def test_times_coupling() -> None:
    f = _series(((), 1))
    assert f.times_coupling(3).coefficient((3,)).coefficient(0) == XLogPoly.constant(1)


def test_exp_of_single_coupling() -> None:
    f = _series(((1,), 1))
    e = f.exp()
    assert e.coefficient((1, 1)).coefficient(0) == XLogPoly.constant(Fraction(1, 2))
    assert e.s_free().coefficient(0) == XLogPoly.constant(1)


def test_restrict_even() -> None:
    f = _series(((1,), 1), ((2,), 1), ((1, 1), 1))
    assert f.restrict_even().monomials() == [(2,)]
