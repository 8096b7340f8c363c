import io
import json

from app.cli.output import emit, render, to_frame
from app.models import ConvergenceReport, ConvergenceRow, ResidualReport


def test_json_is_sorted() -> None:
    text = render({"value": "1/24", "g": 1})
    assert text.index('"g"') < text.index('"value"')
    assert json.loads(text) == {"g": 1, "value": "1/24"}


def test_residual_report_table() -> None:
    report = ResidualReport(suite="liu-xu", checked=5)
    frame = to_frame(report)
    assert frame is not None
    assert frame.to_dict("records") == [{"suite": "liu-xu", "checked": 5, "failures": 0}]


def test_convergence_report_csv() -> None:
    report = ConvergenceReport(
        g=0,
        x=["1"],
        limit_exact="1",
        rows=[ConvergenceRow(kappa=10, indices=[10], scaled_value=1.1, limit=1.0, rel_error=0.1)],
    )
    assert render(report, "csv").splitlines() == [
        "kappa,indices,scaled_value,limit,rel_error",
        "10,10,1.1,1.0,0.1",
    ]


def test_nested_document_falls_back_to_json() -> None:
    document = {"polynomial": {"2": "1"}}
    assert json.loads(render(document, "table")) == document


def test_emit_writes_to_stream() -> None:
    stream = io.StringIO()
    emit({"value": "1"}, stream=stream)
    assert json.loads(stream.getvalue()) == {"value": "1"}
