from pathlib import Path
from typing import Annotated, Any, Literal

from pydantic import BeforeValidator, Field, computed_field, model_validator
from pydantic_settings import BaseSettings, SettingsConfigDict
from typing_extensions import Self

WICK_HARD_CAP = 20
_LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL")


def parse_log_level(v: Any) -> str:
    if isinstance(v, str):
        level = v.strip().upper()
        if level in _LOG_LEVELS:
            return level
    raise ValueError(f"Unknown log level: {v!r}")


class Settings(BaseSettings):
    model_config = SettingsConfigDict(
        # Use top level .env file (one level above ./backend/)
        env_file="../.env",
        env_ignore_empty=True,
        extra="ignore",
    )

    # Genus / insertion budgets for intersection numbers and GUE series
    G_MAX: int = Field(default=3, ge=1)
    N_MAX: int = Field(default=4, ge=1)
    # Total weight |i| of coupling monomials kept in SSeries
    I_MAX: int = Field(default=8, ge=1)
    EPS_ORDER: int = Field(default=10, ge=0)

    KDV_DEGREE: int = Field(default=6, ge=1)
    KDV_FLOW_BOUND: int = Field(default=3, ge=1)
    # 0 selects the per-flow default 2d + 4
    PDO_DEPTH: int = Field(default=0, ge=0)

    WICK_BOUND: int = Field(default=16, ge=2, le=WICK_HARD_CAP)
    TODA_BOUND: int = Field(default=4, ge=1)

    CACHE_PATH: Path | None = None
    OUTPUT_FORMAT: Literal["json", "csv", "table"] = "json"
    FLOAT_DIGITS: int = Field(default=30, ge=15)
    WORKERS: int = Field(default=1, ge=1)
    LOG_LEVEL: Annotated[str, BeforeValidator(parse_log_level)] = "INFO"

    @computed_field  # type: ignore[prop-decorator]
    @property
    def mp_dps(self) -> int:
        # guard digits on top of the reported precision
        return self.FLOAT_DIGITS + 10

    @model_validator(mode="after")
    def _check_even_wick_bound(self) -> Self:
        if self.WICK_BOUND % 2:
            raise ValueError(
                f"WICK_BOUND must be even (got {self.WICK_BOUND}); "
                "odd total degrees never contribute."
            )
        return self


def load_settings(config_path: Path | None = None, **overrides: Any) -> Settings:
    """Build settings from the environment, an optional key=value file and overrides.

    The config file uses dotenv syntax, so ``WICK_BOUND=14`` and
    ``wick_bound=14`` are both accepted.
    """
    if config_path is not None:
        if not config_path.exists():
            raise FileNotFoundError(f"Config file not found: {config_path}")
        return Settings(_env_file=config_path, **overrides)  # type: ignore[call-arg]
    return Settings(**overrides)


settings = Settings()
