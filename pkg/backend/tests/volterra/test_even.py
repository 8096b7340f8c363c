import pytest

from app.toda.lattice import lattice_ring
from app.toda.sseries import SSeries
from app.volterra.even import (
    MAX_VOLTERRA_FLOW,
    even_solution,
    genus_part,
    verify_feg_identities,
    verify_feg_rederivation,
    verify_odd_vanishing,
    verify_volterra,
    verify_volterra_hierarchy,
    volterra_flow,
)

ORDER = 4


def test_first_volterra_flow() -> None:
    lattice = lattice_ring(6)
    assert volterra_flow(1) == lattice.w(0) * (lattice.w(1) - lattice.w(-1))


def test_volterra_flow_range() -> None:
    with pytest.raises(ValueError):
        volterra_flow(MAX_VOLTERRA_FLOW + 1)
    with pytest.raises(ValueError):
        volterra_flow(0)


def test_volterra_equation(gue_even_free_energy: SSeries) -> None:
    report = verify_volterra(gue_even_free_energy, ORDER)
    assert report.checked > 0
    assert report.ok, report.entries


@pytest.mark.parametrize("j", range(1, MAX_VOLTERRA_FLOW + 1))
def test_volterra_hierarchy(gue_even_free_energy: SSeries, j: int) -> None:
    report = verify_volterra_hierarchy(j, gue_even_free_energy, ORDER)
    assert report.ok, report.entries


def test_even_solution_starts_at_x(gue_even_free_energy: SSeries) -> None:
    w = even_solution(gue_even_free_energy, ORDER)
    assert w.s_free().coefficient(0).coefficient(1) == 1


def test_odd_couplings_off_kill_v(gue_free_energy: SSeries) -> None:
    assert verify_odd_vanishing(gue_free_energy, ORDER).ok


def test_feg_identities(
    gue_even_free_energy: SSeries, gue_free_energy: SSeries
) -> None:
    report = verify_feg_identities(
        gue_even_free_energy, ORDER, h_max=1, free_energy=gue_free_energy
    )
    assert report.checked > 0
    assert report.ok, report.entries


def test_feg_identities_without_full_energy(gue_even_free_energy: SSeries) -> None:
    assert verify_feg_identities(gue_even_free_energy, ORDER, h_max=0).ok


def test_feg_rederivation(gue_even_free_energy: SSeries) -> None:
    assert verify_feg_rederivation(gue_even_free_energy, ORDER).ok


def test_genus_part_is_eps_free(gue_even_free_energy: SSeries) -> None:
    genus_one = genus_part(gue_even_free_energy, 1)
    for _, coeff in genus_one.items():
        assert coeff.powers() in ([], [0])
