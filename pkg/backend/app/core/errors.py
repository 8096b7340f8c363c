from collections.abc import Sequence


class ComputationError(Exception):
    """Base class for every failure raised by the computational modules."""


class NonExactDivision(ComputationError):
    pass


class BoundExceeded(ComputationError):
    pass


class BudgetExceeded(ComputationError):
    pass


class InconsistentSystem(ComputationError):
    pass


class SupportViolation(ComputationError):
    pass


class WindowExceeded(ComputationError):
    pass


class DepthExceeded(ComputationError):
    pass


class TruncationMismatch(ComputationError):
    pass


class CacheConflict(ComputationError):
    """Two cache sources disagree on the value stored under one key."""

    def __init__(self, key: str, values: Sequence[str], sources: Sequence[str]):
        self.key = key
        self.values = list(values)
        self.sources = list(sources)
        detail = "; ".join(
            f"{source} -> {value}" for source, value in zip(sources, values)
        )
        super().__init__(f"Conflicting map counts for key {key!r}: {detail}")
