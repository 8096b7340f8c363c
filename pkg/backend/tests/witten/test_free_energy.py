from fractions import Fraction

from app.witten.free_energy import (
    WittenFreeEnergy,
    bilinear_residual,
    monomial_label,
    monomial_weight,
    verify_bilinear,
    witten_free_energy,
)


def test_low_coefficients(witten_energy: WittenFreeEnergy) -> None:
    assert witten_energy.coefficient((0, 0, 0)) == Fraction(1, 6)
    assert witten_energy.coefficient((1,)) == Fraction(1, 24)
    assert witten_energy.coefficient((1, 0, 0, 0)) == Fraction(1, 6)


def test_genus_slices(witten_energy: WittenFreeEnergy) -> None:
    assert set(witten_energy.slices) == {0, 1}
    genus_one = witten_energy.slices[1]
    assert all(monomial_weight(m) == 3 * 1 - 3 for m in genus_one.itermonoms())


def test_monomial_helpers() -> None:
    assert monomial_weight((3, 0, 1)) == -2
    assert monomial_label((2, 1)) == "t0^2*t1"


def test_bilinear_identity(witten_energy: WittenFreeEnergy) -> None:
    assert not bilinear_residual(witten_energy)


def test_verify_bilinear() -> None:
    report = verify_bilinear(4, 1)
    assert report.checked > 0
    assert report.ok, report.entries


def test_to_json(witten_energy: WittenFreeEnergy) -> None:
    document = witten_free_energy(3, 0).to_json()
    assert document["terms"] == {"t0^3": "1/6"}
    assert witten_energy.to_json()["genus"] == 1
