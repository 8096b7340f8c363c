from typing import Any, Literal

import numpy as np
import pandas as pd
from pydantic import BaseModel, ConfigDict, Field

MAP_CACHE_VERSION = 1

Producer = Literal["oracle", "resolvent"]


# Shared properties
class ResidualEntry(BaseModel):
    check: str
    key: str
    value: str


# One verification suite, as printed by ``verify``
class ResidualReport(BaseModel):
    suite: str
    checked: int = 0
    failures: int = 0
    entries: list[ResidualEntry] = Field(default_factory=list)
    notes: list[str] = Field(default_factory=list)
    params: dict[str, Any] = Field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.failures == 0

    def absorb(self, other: "ResidualReport") -> None:
        self.checked += other.checked
        self.failures += other.failures
        self.entries.extend(other.entries)
        self.notes.extend(other.notes)


class ConvergenceRow(BaseModel):
    kappa: int
    indices: list[int]
    scaled_value: float
    limit: float
    rel_error: float


class ConvergenceReport(BaseModel):
    g: int
    x: list[str]
    parity: Literal["even", "odd"] = "even"
    limit_exact: str
    backend: str = ""
    rows: list[ConvergenceRow] = Field(default_factory=list)

    def rel_errors(self) -> np.ndarray:
        return np.array([row.rel_error for row in self.rows], dtype=float)

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame(
            [
                {
                    "kappa": row.kappa,
                    "indices": ",".join(str(i) for i in row.indices),
                    "scaled_value": row.scaled_value,
                    "limit": row.limit,
                    "rel_error": row.rel_error,
                }
                for row in self.rows
            ],
            columns=["kappa", "indices", "scaled_value", "limit", "rel_error"],
        )


class LimitDemoRow(BaseModel):
    kappa: int
    j: list[int]
    lhs_scaled: float
    rhs_scaled: float


class LimitDemoReport(BaseModel):
    h: int
    x: list[str]
    lhs_limit: str
    rhs_limit: str
    rows: list[LimitDemoRow] = Field(default_factory=list)

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame(
            [
                {
                    "kappa": row.kappa,
                    "j": ",".join(str(v) for v in row.j),
                    "lhs_scaled": row.lhs_scaled,
                    "rhs_scaled": row.rhs_scaled,
                }
                for row in self.rows
            ],
            columns=["kappa", "j", "lhs_scaled", "rhs_scaled"],
        )


# Persisted map counts, keyed by "g;i1,i2,..." with sorted indices
class CacheEntry(BaseModel):
    model_config = ConfigDict(frozen=True)

    value: str = Field(pattern=r"^[0-9]+$")
    producer: Producer


class MapCache(BaseModel):
    version: int = MAP_CACHE_VERSION
    entries: dict[str, CacheEntry] = Field(default_factory=dict)


def cache_key(g: int, indices: tuple[int, ...] | list[int]) -> str:
    return f"{g};{','.join(str(i) for i in sorted(indices))}"
