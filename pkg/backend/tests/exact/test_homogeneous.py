from fractions import Fraction

import pytest

from app.core.errors import NonExactDivision
from app.exact.homogeneous import HomogPoly, poly_exact_div


def _x(n: int, a: int) -> HomogPoly:
    return HomogPoly.variable(n, a)


def test_exact_division_two_variables() -> None:
    x1, x2 = _x(2, 0), _x(2, 1)
    num = x1**4 + 3 * x1**3 * x2 + 4 * x1**2 * x2**2 + 3 * x1 * x2**3 + x2**4
    den = x1**2 + 2 * x1 * x2 + x2**2
    quotient = poly_exact_div(num, den)
    assert quotient == x1**2 + x1 * x2 + x2**2
    assert quotient.degree == 2


def test_division_by_one_is_identity() -> None:
    p = 3 * _x(3, 0) * _x(3, 2) - _x(3, 1) ** 2
    assert poly_exact_div(p, HomogPoly.constant(3, 1)) == p


def test_inexact_division_raises() -> None:
    x1, x2 = _x(2, 0), _x(2, 1)
    with pytest.raises(NonExactDivision):
        poly_exact_div(x1 + x2, x1)


def test_division_by_zero_is_a_programming_error() -> None:
    with pytest.raises(ValueError):
        poly_exact_div(_x(1, 0), HomogPoly.zero(1))


def test_inhomogeneous_terms_are_rejected() -> None:
    with pytest.raises(ValueError):
        HomogPoly.from_terms(2, {(1, 0): 1, (1, 1): 1})


def test_coefficients_and_serialization() -> None:
    p = HomogPoly.from_terms(2, {(2, 0): Fraction(1, 24), (0, 2): Fraction(1, 24), (1, 1): Fraction(1, 24)})
    assert p.coefficient((1, 1)) == Fraction(1, 24)
    assert p.coefficient((3, 0)) == 0
    assert p.to_json() == {"0,2": "1/24", "1,1": "1/24", "2,0": "1/24"}
    assert p.is_symmetric()
    assert not (_x(2, 0) ** 2 + _x(2, 0) * _x(2, 1)).is_symmetric()


def test_embed_restrict_and_evaluate() -> None:
    p = _x(2, 0) ** 2 + 2 * _x(2, 0) * _x(2, 1)
    moved = p.embed(3, [2, 0])
    assert moved == _x(3, 2) ** 2 + 2 * _x(3, 2) * _x(3, 0)
    assert moved.restrict(2) == HomogPoly.zero(2)
    assert p.evaluate([Fraction(1, 2), 3]) == Fraction(1, 4) + 3
    assert HomogPoly.subset_sum(3, [0, 2]) == _x(3, 0) + _x(3, 2)
