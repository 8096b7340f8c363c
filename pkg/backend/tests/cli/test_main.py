import json
from pathlib import Path

import pytest

from app.cache import save_cache
from app.cli.main import build_parser, run
from app.models import CacheEntry, MapCache
from tests.utils.cli import invoke


def test_map(capsys: pytest.CaptureFixture[str]) -> None:
    code, document = invoke(capsys, "map", "--g", "1", "--i", "4")
    assert code == 0
    assert document["value"] == "1"
    assert document["backend"] == "resolvent"


def test_map_with_oracle_backend(capsys: pytest.CaptureFixture[str]) -> None:
    code, document = invoke(capsys, "map", "--g", "0", "--i", "2,2,2", "--backend", "oracle")
    assert code == 0
    assert document == {"g": 0, "indices": [2, 2, 2], "value": "8", "backend": "oracle"}


def test_correlator(capsys: pytest.CaptureFixture[str]) -> None:
    code, document = invoke(capsys, "correlator", "--i", "4")
    assert code == 0
    assert document["polynomial"] == {"1": "1", "3": "2"}
    _, connected = invoke(capsys, "correlator", "--i", "2,2", "--connected")
    assert connected["polynomial"] == {"2": "2"}


def test_witten(capsys: pytest.CaptureFixture[str]) -> None:
    code, document = invoke(capsys, "witten", "--g", "1", "--d", "1")
    assert code == 0
    assert document["value"] == "1/24"


def test_qpoly(capsys: pytest.CaptureFixture[str]) -> None:
    code, document = invoke(capsys, "qpoly", "--g", "0", "--n", "4")
    assert code == 0
    assert document["polynomial"] == {"1,0,0,0": "1", "0,1,0,0": "1", "0,0,1,0": "1", "0,0,0,1": "1"}


def test_verify_eq56(capsys: pytest.CaptureFixture[str]) -> None:
    code, document = invoke(capsys, "verify", "eq56", "--h", "1", "--n", "1", "--jmax", "3")
    assert code == 0
    assert document["suite"] == "eq56"
    assert document["failures"] == 0
    assert document["checked"] == 6


@pytest.mark.parametrize(
    "argv",
    [
        ["verify", "closed-forms", "--jmax", "3"],
        ["verify", "dilation", "--weight", "8"],
        ["verify", "resolvent", "--depth", "6", "--weight", "6", "--genus", "1"],
        ["verify", "string-dilaton", "--genus", "2"],
        ["verify", "stringq", "--genus", "1"],
        ["verify", "liu-xu", "--genus", "2"],
        ["verify", "equivkdv0", "--genus", "1", "--n", "2"],
        ["verify", "preidentity", "--h", "1", "--n", "1", "--jmax", "2"],
        ["verify", "kdv", "--d", "1", "--degree", "5", "--genus", "1"],
        ["verify", "bilinear", "--degree", "4", "--genus", "1"],
    ],
)
def test_verify_suites_pass(capsys: pytest.CaptureFixture[str], argv: list[str]) -> None:
    code, document = invoke(capsys, *argv)
    assert code == 0, document
    assert document["checked"] > 0
    assert document["failures"] == 0


def test_verify_gue_suites_pass(capsys: pytest.CaptureFixture[str]) -> None:
    for suite in ("gue-pdes", "initial-data", "volterra"):
        code, document = invoke(
            capsys, "verify", suite, "--weight", "4", "--count", "2", "--order", "2", "--genus", "2"
        )
        assert code == 0, document
        assert document["failures"] == 0


def test_limit_csv(capsys: pytest.CaptureFixture[str]) -> None:
    code, out = invoke(
        capsys, "limit", "--g", "0", "--x", "1", "--kappa-list", "10,20", "--format", "csv"
    )
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "kappa,indices,scaled_value,limit,rel_error"
    assert len(lines) == 3


def test_limit_demo(capsys: pytest.CaptureFixture[str]) -> None:
    code, document = invoke(
        capsys, "verify", "limit-demo", "--h", "0", "--x", "1/2,1", "--kappa-list", "20"
    )
    assert code == 0
    assert document["lhs_limit"] == document["rhs_limit"] == "3/2"


def test_table_format_before_subcommand(capsys: pytest.CaptureFixture[str]) -> None:
    code, out = invoke(capsys, "--format", "table", "witten", "--g", "1", "--d", "1")
    assert code == 0
    assert "1/24" in out
    assert "<t1>_1" in out


def test_usage_error(capsys: pytest.CaptureFixture[str]) -> None:
    code, _ = invoke(capsys, "map", "--g", "x", "--i", "4")
    assert code == 2


def test_unknown_suite(capsys: pytest.CaptureFixture[str]) -> None:
    code, _ = invoke(capsys, "verify", "nonsense")
    assert code == 2


def test_invalid_setting(capsys: pytest.CaptureFixture[str], tmp_path: Path) -> None:
    config = tmp_path / "run.env"
    config.write_text("WICK_BOUND=15\n")
    code, _ = invoke(capsys, "--config", str(config), "witten", "--g", "1", "--d", "1")
    assert code == 2


def test_nonpositive_workers(capsys: pytest.CaptureFixture[str]) -> None:
    code, _ = invoke(capsys, "--workers", "0", "witten", "--g", "1", "--d", "1")
    assert code == 2


def test_budget_exceeded(capsys: pytest.CaptureFixture[str]) -> None:
    code, document = invoke(capsys, "witten", "--g", "5", "--d", "13")
    assert code == 1
    assert document["error"] == "BudgetExceeded"


def test_map_persists_cache(capsys: pytest.CaptureFixture[str], cache_path: Path) -> None:
    code, _ = invoke(capsys, "map", "--g", "1", "--i", "2,4", "--cache", str(cache_path))
    assert code == 0
    entries = json.loads(cache_path.read_text())["entries"]
    assert entries["0;2,4"]["producer"] == "resolvent"
    assert "1;2,4" in entries


def test_cache_merge_and_show(capsys: pytest.CaptureFixture[str], tmp_path: Path) -> None:
    a, b, out = tmp_path / "a.json", tmp_path / "b.json", tmp_path / "out.json"
    save_cache(MapCache(entries={"0;4": CacheEntry(value="2", producer="oracle")}), a)
    save_cache(MapCache(entries={"1;4": CacheEntry(value="1", producer="resolvent")}), b)
    code, document = invoke(capsys, "cache", "merge", str(a), str(b), "--cache", str(out))
    assert code == 0
    assert document["entries"] == 2
    code, shown = invoke(capsys, "cache", "show", "--cache", str(out))
    assert code == 0
    assert set(shown["entries"]) == {"0;4", "1;4"}


def test_cache_merge_conflict(capsys: pytest.CaptureFixture[str], tmp_path: Path) -> None:
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    save_cache(MapCache(entries={"0;4": CacheEntry(value="2", producer="oracle")}), a)
    save_cache(MapCache(entries={"0;4": CacheEntry(value="3", producer="oracle")}), b)
    code, document = invoke(capsys, "cache", "merge", str(a), str(b))
    assert code == 1
    assert document["error"] == "CacheConflict"
    assert document["values"] == ["2", "3"]


def test_cache_show_needs_path(capsys: pytest.CaptureFixture[str]) -> None:
    code, _ = invoke(capsys, "cache", "show")
    assert code == 2


@pytest.mark.parametrize(
    "argv",
    [
        ["map", "--g", "1", "--i", "4,4,2", "--backend", "oracle"],
        ["verify", "eq56", "--h", "1", "--n", "1", "--jmax", "3"],
        ["verify", "toda", "--weight", "4", "--count", "2", "--order", "2", "--genus", "2"],
        ["verify", "liu-xu", "--genus", "1"],
    ],
)
def test_output_does_not_depend_on_workers(
    capsys: pytest.CaptureFixture[str], argv: list[str]
) -> None:
    outputs = []
    for workers in ("1", "2"):
        code = run(["--workers", workers, *argv])
        assert code == 0
        outputs.append(capsys.readouterr().out)
    assert outputs[0] == outputs[1]


def test_parser_lists_every_command() -> None:
    parser = build_parser()
    help_text = parser.format_help()
    for command in ("map", "correlator", "witten", "qpoly", "limit", "verify", "cache"):
        assert command in help_text
