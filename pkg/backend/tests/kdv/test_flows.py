import pytest
from sympy.polys.domains import QQ

from app.core.config import settings
from app.core.errors import BoundExceeded, DepthExceeded
from app.kdv.flows import default_depth, flow_operator, kdv_flow_rhs, verify_witten_kdv


def test_kdv_equation() -> None:
    rhs = kdv_flow_rhs(1)
    u = rhs.ring.gens
    assert rhs == u[0] * u[1] + u[3] * QQ(1, 12)


def test_second_flow() -> None:
    rhs = kdv_flow_rhs(2)
    u = rhs.ring.gens
    expected = (
        u[0] ** 2 * u[1] * QQ(1, 2)
        + u[0] * u[3] * QQ(1, 12)
        + u[1] * u[2] * QQ(1, 6)
        + u[5] * QQ(1, 240)
    )
    assert rhs == expected


def test_flow_is_homogeneous() -> None:
    # u_k has weight k + 2, so the t_d flow has weight 2d + 3
    rhs = kdv_flow_rhs(2)
    weights = {
        sum(e * (k + 2) for k, e in enumerate(monom)) for monom in rhs.itermonoms()
    }
    assert weights == {7}


def test_flow_index_checks(monkeypatch: pytest.MonkeyPatch) -> None:
    with pytest.raises(ValueError):
        kdv_flow_rhs(0)
    monkeypatch.setattr(settings, "KDV_FLOW_BOUND", 1)
    with pytest.raises(BoundExceeded):
        kdv_flow_rhs(2)


def test_shallow_depth() -> None:
    with pytest.raises(DepthExceeded):
        kdv_flow_rhs(2, depth=3)


def test_default_depth(monkeypatch: pytest.MonkeyPatch) -> None:
    assert default_depth(2) == 8
    monkeypatch.setattr(settings, "PDO_DEPTH", 11)
    assert default_depth(2) == 11


def test_flow_operator_is_differential() -> None:
    op = flow_operator(1)
    assert op.top == 3
    assert min(op.support()) >= 0


@pytest.mark.slow
@pytest.mark.parametrize(("d", "degree"), [(1, 6), (2, 6), (3, 3)])
def test_witten_free_energy_solves_kdv(d: int, degree: int) -> None:
    report = verify_witten_kdv(d, degree, 1)
    assert report.checked > 0
    assert report.ok, report.entries
