from fractions import Fraction

import pytest

from app.core.config import settings
from app.core.errors import BudgetExceeded
from app.witten.npoint import (
    is_stable,
    lx_crosscheck,
    q_polynomial,
    splittings,
    verify_stringQ,
    weighted_q,
)


def test_stability() -> None:
    assert is_stable(0, 3)
    assert is_stable(1, 1)
    assert not is_stable(0, 2)


def test_splittings_are_ordered_and_nonempty() -> None:
    assert list(splittings(2)) == [([0], [1]), ([1], [0])]
    assert len(list(splittings(3))) == 6


def test_genus_zero_three_point() -> None:
    assert q_polynomial(0, 3).to_json() == {"0,0,0": "1"}


def test_genus_one() -> None:
    assert q_polynomial(1, 1).to_json() == {"1": "1/24"}
    assert q_polynomial(1, 2).to_json() == {"2,0": "1/24", "1,1": "1/24", "0,2": "1/24"}


def test_genus_two_one_point() -> None:
    assert q_polynomial(2, 1).coefficient((4,)) == Fraction(1, 1152)


def test_unstable_weighted_factors() -> None:
    one_point = weighted_q(0, [0], 1, 3)
    assert one_point is not None
    assert one_point.to_json() == {"1": "1"}
    assert weighted_q(-1, [0], 1, 2) is None


def test_unstable_q_polynomial() -> None:
    with pytest.raises(ValueError):
        q_polynomial(0, 2)


def test_budget(monkeypatch: pytest.MonkeyPatch) -> None:
    monkeypatch.setattr(settings, "G_MAX", 1)
    with pytest.raises(BudgetExceeded):
        q_polynomial(2, 1)


@pytest.mark.parametrize(
    ("g", "n"), [(0, 3), (0, 4), (1, 1), (1, 2), (1, 3), (2, 1), (2, 2)]
)
def test_liu_xu_recursion(g: int, n: int) -> None:
    assert not lx_crosscheck(g, n)


@pytest.mark.parametrize(
    ("g", "n", "s"), [(0, 1, 2), (0, 2, 1), (0, 2, 2), (1, 1, 1), (1, 1, 2), (1, 2, 1), (2, 1, 1)]
)
def test_string_property(g: int, n: int, s: int) -> None:
    assert not verify_stringQ(g, n, s)


def test_string_property_needs_stable_total() -> None:
    with pytest.raises(ValueError):
        verify_stringQ(0, 1, 1)
