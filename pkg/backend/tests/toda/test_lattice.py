import pytest

from app.core.config import settings
from app.core.errors import BoundExceeded, WindowExceeded
from app.toda.lattice import (
    LatticeOp,
    check_flow_commutativity,
    lattice_ring,
    toda_flow,
)


def test_shift_moves_sites() -> None:
    lattice = lattice_ring(3)
    p = lattice.v(0) * lattice.w(-1)
    assert lattice.shift(p, 2) == lattice.v(2) * lattice.w(1)


def test_shift_beyond_window() -> None:
    lattice = lattice_ring(1)
    with pytest.raises(WindowExceeded):
        lattice.shift(lattice.v(1), 1)


def test_operator_product_shifts_right_factor() -> None:
    lattice = lattice_ring(3)
    shift = LatticeOp(lattice, {1: lattice.ring.one})
    mult = LatticeOp(lattice, {0: lattice.w(0)})
    assert (shift @ mult).terms == {1: lattice.w(1)}


def test_first_flow() -> None:
    lattice = lattice_ring(4)
    dv, dw = toda_flow(1, lattice)
    assert dv == lattice.w(1) - lattice.w(0)
    assert dw == lattice.w(0) * (lattice.v(0) - lattice.v(-1))


def test_flow_index_must_be_positive() -> None:
    with pytest.raises(ValueError):
        toda_flow(0)


def test_flow_bound(monkeypatch: pytest.MonkeyPatch) -> None:
    monkeypatch.setattr(settings, "TODA_BOUND", 2)
    with pytest.raises(BoundExceeded):
        toda_flow(3)


def test_flows_commute() -> None:
    report = check_flow_commutativity(1, 2)
    assert report.checked == 2
    assert report.ok, report.entries
