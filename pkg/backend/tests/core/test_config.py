from pathlib import Path

import pytest
from pydantic import ValidationError

from app.core.config import Settings, load_settings


def test_defaults() -> None:
    defaults = Settings(_env_file=None)  # type: ignore[call-arg]
    assert defaults.WICK_BOUND == 16
    assert defaults.OUTPUT_FORMAT == "json"
    assert defaults.mp_dps == defaults.FLOAT_DIGITS + 10


def test_config_file_keys_are_case_insensitive(tmp_path: Path) -> None:
    config = tmp_path / "run.env"
    config.write_text("wick_bound=14\nG_MAX=2\n")
    loaded = load_settings(config)
    assert loaded.WICK_BOUND == 14
    assert loaded.G_MAX == 2


def test_overrides_beat_config_file(tmp_path: Path) -> None:
    config = tmp_path / "run.env"
    config.write_text("WORKERS=2\n")
    assert load_settings(config, WORKERS=4).WORKERS == 4


def test_missing_config_file(tmp_path: Path) -> None:
    with pytest.raises(FileNotFoundError):
        load_settings(tmp_path / "absent.env")


@pytest.mark.parametrize(
    "overrides",
    [{"WICK_BOUND": 15}, {"WICK_BOUND": 22}, {"G_MAX": 0}, {"OUTPUT_FORMAT": "xml"}],
)
def test_invalid_values(overrides: dict[str, object]) -> None:
    with pytest.raises(ValidationError):
        load_settings(**overrides)


def test_log_level_is_normalized() -> None:
    assert load_settings(LOG_LEVEL="debug").LOG_LEVEL == "DEBUG"
    with pytest.raises(ValidationError):
        load_settings(LOG_LEVEL="chatty")


def test_environment_variables(monkeypatch: pytest.MonkeyPatch) -> None:
    monkeypatch.setenv("EPS_ORDER", "6")
    assert load_settings().EPS_ORDER == 6
