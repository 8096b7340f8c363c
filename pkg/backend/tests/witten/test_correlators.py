from fractions import Fraction

import pytest

from app.witten.correlators import (
    canonical_key,
    dimension_keys,
    intersection_number,
    intersection_table,
    key_label,
    keys_with_sum,
    q_coefficient,
    verify_equivkdv0,
    verify_string_dilaton,
)


@pytest.mark.parametrize(
    ("g", "d", "expected"),
    [
        (0, (0, 0, 0), Fraction(1)),
        (0, (1, 0, 0, 0), Fraction(1)),
        (1, (1,), Fraction(1, 24)),
        (1, (0, 2), Fraction(1, 24)),
        (1, (1, 1), Fraction(1, 24)),
        (2, (4,), Fraction(1, 1152)),
        (2, (2, 3), Fraction(29, 5760)),
        (2, (1, 4), Fraction(1, 384)),
    ],
)
def test_intersection_numbers(g: int, d: tuple[int, ...], expected: Fraction) -> None:
    assert intersection_number(g, d) == expected


def test_off_dimension_is_zero() -> None:
    assert intersection_number(1, (2,)) == 0
    assert intersection_number(0, (0, 0)) == 0


def test_raw_coefficient_agrees_with_reduction() -> None:
    assert q_coefficient(1, (0, 2)) == intersection_number(1, (2, 0))


def test_keys() -> None:
    assert canonical_key([0, 2, 1]) == (2, 1, 0)
    assert key_label(1, (2, 0)) == "<t2t0>_1"
    assert set(keys_with_sum(2, 3)) == {(2, 0, 0), (1, 1, 0)}
    assert list(keys_with_sum(0, 0)) == [()]
    assert set(dimension_keys(1, 2)) == {(2, 0), (1, 1)}


def test_intersection_table() -> None:
    table = intersection_table(1, 3)
    assert table[(0, (0, 0, 0))] == 1
    assert table[(1, (1,))] == Fraction(1, 24)
    assert (1, (2, 0)) in table


def test_string_and_dilaton() -> None:
    report = verify_string_dilaton(2, 4)
    assert report.checked > 0
    assert report.ok, report.entries


def test_kdv_form_of_recursion() -> None:
    report = verify_equivkdv0(2, 2)
    assert report.checked > 0
    assert report.ok, report.entries
