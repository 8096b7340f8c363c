from fractions import Fraction

import pytest

from app.gue.wick import map_count
from app.limits.identities import (
    eq56_residual,
    eq56_sides,
    limit_of_identity_demo,
    limiting_sides,
    pre_identity_residual,
    pre_identity_sides,
)

GRID = [(), (1,), (2,), (3,), (1, 1), (1, 2), (2, 2), (1, 3), (2, 3), (3, 3)]


@pytest.mark.parametrize("h", range(4))
def test_pre_identity_without_insertions(h: int) -> None:
    assert pre_identity_residual(h, 0, ()) == 0


def test_pre_identity_lowest_case() -> None:
    assert pre_identity_sides(0, ()) == (Fraction(1), Fraction(1))


@pytest.mark.parametrize("h", range(2))
@pytest.mark.parametrize("j", GRID)
def test_pre_identity(h: int, j: tuple[int, ...]) -> None:
    assert pre_identity_residual(h, len(j), j) == 0


@pytest.mark.parametrize("h", range(2))
@pytest.mark.parametrize("j", [j for j in GRID if j])
def test_block_form(h: int, j: tuple[int, ...]) -> None:
    assert eq56_residual(h, len(j), j) == 0


def test_block_form_value() -> None:
    assert eq56_sides(0, (2, 1)) == (Fraction(24), Fraction(24))


def test_oracle_counts_agree() -> None:
    assert eq56_residual(1, 2, (1, 2), map_count) == 0


def test_insertion_count_mismatch() -> None:
    with pytest.raises(ValueError):
        pre_identity_residual(0, 2, (1,))
    with pytest.raises(ValueError):
        eq56_residual(0, 1, (1, 1))


def test_j_must_be_positive() -> None:
    with pytest.raises(ValueError):
        eq56_sides(0, (0, 1))


@pytest.mark.parametrize("x", [[Fraction(1), Fraction(1)], [Fraction(1, 2), Fraction(3)]])
def test_limiting_sides_genus_zero(x: list[Fraction]) -> None:
    lhs, rhs = limiting_sides(0, x)
    assert lhs == rhs == sum(x)


@pytest.mark.parametrize(("h", "n"), [(1, 1), (1, 2), (2, 1), (0, 3)])
def test_limiting_sides_agree(h: int, n: int) -> None:
    x = [Fraction(k + 1, 3) for k in range(n)]
    lhs, rhs = limiting_sides(h, x)
    assert lhs == rhs


def test_limit_demo() -> None:
    report = limit_of_identity_demo(0, [Fraction(1, 2), 1], [20, 40])
    assert report.lhs_limit == report.rhs_limit == "3/2"
    assert [row.j for row in report.rows] == [[5, 10], [10, 20]]
    assert list(report.to_frame().columns) == ["kappa", "j", "lhs_scaled", "rhs_scaled"]


def test_limit_demo_genus_one() -> None:
    report = limit_of_identity_demo(1, [1], [20, 40, 80])
    assert report.lhs_limit == report.rhs_limit == "1/24"
    lhs = [row.lhs_scaled for row in report.rows]
    assert lhs == sorted(lhs)
    assert lhs[-1] < 1 / 24
    for row in report.rows:
        assert row.lhs_scaled == pytest.approx(row.rhs_scaled)


def test_limit_demo_single_rung() -> None:
    report = limit_of_identity_demo(1, [1], [20])
    assert len(report.rows) == 1
    assert report.rows[0].j == [10]
    assert report.rows[0].lhs_scaled == pytest.approx(report.rows[0].rhs_scaled)
