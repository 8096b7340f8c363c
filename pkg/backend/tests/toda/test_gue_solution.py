import pytest

from app.exact.xlog import XLogPoly
from app.gue.free_energy import assemble_gue_free_energy
from app.toda.gue_solution import (
    gue_solution,
    verify_initial_data,
    verify_tau_identities,
    verify_toda_on_gue,
)
from app.toda.sseries import SSeries

ORDER = 4


def test_initial_data(gue_free_energy: SSeries) -> None:
    report = verify_initial_data(gue_free_energy, ORDER)
    assert report.ok, report.entries


@pytest.mark.slow
def test_initial_data_through_eps_ten() -> None:
    free_energy = assemble_gue_free_energy(6, 1, 2, 10)
    report = verify_initial_data(free_energy, 10)
    assert report.ok, report.entries
    assert not report.notes


def test_w_starts_at_x(gue_free_energy: SSeries) -> None:
    _, w = gue_solution(gue_free_energy, ORDER)
    head = w.s_free()
    assert head.coefficient(0) == XLogPoly.x()
    for power in range(1, ORDER + 1):
        assert head.coefficient(power).is_zero()


def test_toda_flows_on_gue(gue_free_energy: SSeries) -> None:
    report = verify_toda_on_gue(gue_free_energy, ORDER)
    assert report.checked > 0
    assert report.ok, report.entries


def test_tau_identities(gue_free_energy: SSeries) -> None:
    report = verify_tau_identities(gue_free_energy, ORDER, pair_max=3)
    assert report.checked > 0
    assert report.ok, report.entries
    assert any(note.startswith("R21 at lambda^-1") for note in report.notes)
