from __future__ import annotations

import enum
import time
from dataclasses import dataclass
from typing import Generic, Optional, TypeVar

T = TypeVar("T")


class Answer(str, enum.Enum):
    YES = "Yes"
    NO = "No"
    UNKNOWN = "Unknown"


@dataclass(frozen=True)
class Verdict(Generic[T]):
    """Tri-state search outcome; ``witness`` is set only for Yes."""

    answer: Answer
    witness: Optional[T] = None
    nodes: int = 0

    @property
    def yes(self) -> bool:
        return self.answer is Answer.YES

    @property
    def no(self) -> bool:
        return self.answer is Answer.NO

    @property
    def unknown(self) -> bool:
        return self.answer is Answer.UNKNOWN


class BudgetExhausted(Exception):
    pass


@dataclass(frozen=True)
class SolveBudget:
    time_limit: Optional[float] = None  # wall seconds
    node_limit: Optional[int] = None

    def __post_init__(self) -> None:
        if self.time_limit is not None and self.time_limit <= 0:
            raise ValueError("time limit must be positive")
        if self.node_limit is not None and self.node_limit <= 0:
            raise ValueError("node limit must be positive")

    def start(self) -> "BudgetClock":
        return BudgetClock(self)


UNLIMITED = SolveBudget()


class BudgetClock:
    """Running counter for one solver call.  ``tick`` raises on exhaustion."""

    __slots__ = ("deadline", "node_limit", "nodes")

    def __init__(self, budget: Optional[SolveBudget]):
        budget = budget or UNLIMITED
        self.deadline = None if budget.time_limit is None else time.monotonic() + budget.time_limit
        self.node_limit = budget.node_limit
        self.nodes = 0

    def tick(self, n: int = 1) -> None:
        self.nodes += n
        if self.node_limit is not None and self.nodes > self.node_limit:
            raise BudgetExhausted
        if self.deadline is not None and (self.nodes & 255) == 0 and time.monotonic() > self.deadline:
            raise BudgetExhausted

    def remaining(self) -> SolveBudget:
        """A budget covering what is left, for nested calls."""
        t = None if self.deadline is None else max(1e-3, self.deadline - time.monotonic())
        nl = None if self.node_limit is None else max(1, self.node_limit - self.nodes)
        return SolveBudget(t, nl)
