from fractions import Fraction

from app.exact.xlog import XLogPoly
from app.gue.free_energy import (
    gue_partition_function,
    monomial_coefficient,
    normalized_free_energy,
    s_free_part,
    verify_gue_pdes,
)
from app.toda.sseries import SSeries


def test_s_free_part() -> None:
    head = s_free_part(2)
    assert head.coefficient(-2) == XLogPoly(
        {(2, 1, 0): Fraction(1, 2), (2, 0, 0): Fraction(-3, 4)}
    )
    assert head.coefficient(0) == XLogPoly({(0, 1, 0): Fraction(-1, 12), (0, 0, 1): 1})
    assert head.coefficient(2) == XLogPoly.monomial(-2, coeff=Fraction(-1, 240))
    assert head.order == 3


def test_one_point_coefficient_carries_two_genera() -> None:
    coeff = monomial_coefficient((4,))
    assert coeff.coefficient(-2) == XLogPoly.monomial(3, coeff=2)
    assert coeff.coefficient(0) == XLogPoly.monomial(1, coeff=1)
    assert coeff.powers() == [-2, 0]


def test_repeated_coupling_symmetry_factor() -> None:
    coeff = monomial_coefficient((2, 2))
    assert coeff.coefficient(-2) == XLogPoly.monomial(2, coeff=1)


def test_odd_monomial_vanishes() -> None:
    assert monomial_coefficient((1, 2)).is_zero()


def test_normalized_free_energy_drops_s_free(gue_free_energy: SSeries) -> None:
    assert normalized_free_energy(gue_free_energy).s_free().is_zero()


def test_gue_pdes(gue_free_energy: SSeries) -> None:
    report = verify_gue_pdes(gue_partition_function(gue_free_energy))
    assert report.checked > 0
    assert report.ok, report.entries


def test_even_free_energy_has_no_odd_couplings(gue_even_free_energy: SSeries) -> None:
    assert gue_even_free_energy.monomials()
    assert all(i % 2 == 0 for m in gue_even_free_energy.monomials() for i in m)
