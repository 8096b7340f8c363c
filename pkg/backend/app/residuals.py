"""Collects residual coefficients of an identity into a ``ResidualReport``."""

import logging
from collections.abc import Callable
from fractions import Fraction
from typing import Any

from app.exact.rational import rat_str
from app.exact.series import EpsSeries
from app.exact.xlog import XLogPoly
from app.models import ResidualEntry, ResidualReport
from app.toda.sseries import SSeries, monomial_label

logger = logging.getLogger(__name__)

# Reports keep the first failures only; the count stays exact.
MAX_ENTRIES = 50


class ResidualTally:
    def __init__(self, suite: str, **params: Any) -> None:
        self.suite = suite
        self.params = {k: v for k, v in params.items() if v is not None}
        self.checked = 0
        self.failures = 0
        self.entries: list[ResidualEntry] = []
        self.notes: list[str] = []

    def _fail(self, check: str, key: str, value: str) -> None:
        self.failures += 1
        if len(self.entries) < MAX_ENTRIES:
            self.entries.append(ResidualEntry(check=check, key=key, value=value))

    def note(self, text: str) -> None:
        self.notes.append(text)

    def value(self, check: str, key: str, residual: Fraction | int) -> None:
        self.checked += 1
        if residual:
            self._fail(check, key, rat_str(residual))

    def symbolic(
        self,
        check: str,
        key: str,
        residual: Any,
        render: Callable[[Any], str] = str,
    ) -> None:
        """Any residual with a truth value, e.g. a sympy ring element."""
        self.checked += 1
        if residual:
            self._fail(check, key, render(residual))

    def xlog(self, check: str, key: str, residual: XLogPoly) -> None:
        self.checked += 1
        if residual:
            self._fail(check, key, repr(residual))

    def eps(self, check: str, key: str, residual: EpsSeries) -> None:
        """One check per ε power known exactly."""
        self.checked += 1
        for power, coeff in residual.items():
            self._fail(check, f"{key};eps^{power}", repr(coeff))

    def sseries(
        self,
        check: str,
        residual: SSeries,
        *,
        indices: Callable[[int], bool] | None = None,
    ) -> None:
        """One check per coupling monomial of the residual's truncation box."""
        if residual.box.max_weight is None:
            monomials = residual.monomials()
        else:
            monomials = residual.box.monomials(indices)
        for monom in monomials:
            self.eps(check, monomial_label(monom), residual.coefficient(monom))

    def report(self) -> ResidualReport:
        if self.failures:
            logger.warning(
                "%s: %d of %d residual checks failed",
                self.suite,
                self.failures,
                self.checked,
            )
        else:
            logger.info("%s: %d residual checks vanish", self.suite, self.checked)
        return ResidualReport(
            suite=self.suite,
            checked=self.checked,
            failures=self.failures,
            entries=list(self.entries),
            notes=list(self.notes),
            params=dict(self.params),
        )
