"""Planner outcomes."""

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import List, Optional, Tuple

from src.geometry.space import State
from src.planning.wavefront import Wavefront


class PlanStatus(str, Enum):
    SUCCESS = "success"
    FAILURE_OPEN_EMPTY = "failure-open-empty"
    INFEASIBLE_INPUT = "infeasible-input"

    def __str__(self) -> str:
        return self.value


@dataclass
class PlanStats:
    """Per-run counters.

    Attributes:
        group_sizes: Size of every expanded group (1 per expansion for FMT*)
        nodes_added: Samples added to the tree per expansion
        collision_checks: Motion collision checks performed
        candidate_considerations: Unexplored samples considered for connection, summed over
            expansions
        final_threshold_index: Value of the group threshold counter at termination
    """

    group_sizes: List[int] = field(default_factory=list)
    nodes_added: List[int] = field(default_factory=list)
    collision_checks: int = 0
    candidate_considerations: int = 0
    final_threshold_index: int = 0


@dataclass
class PlanResult:
    """Status, path and cost of one planner run."""

    status: PlanStatus
    algorithm: str
    path: Tuple[State, ...] = ()
    path_indices: Tuple[int, ...] = ()
    cost: float = math.inf
    iterations: int = 0
    stats: PlanStats = field(default_factory=PlanStats)
    tree: Optional[Wavefront] = None
    message: str = ""

    @property
    def succeeded(self) -> bool:
        return self.status == PlanStatus.SUCCESS

    def summary(self) -> str:
        return f"status={self.status} cost={self.cost:.6f} iters={self.iterations}"

    @classmethod
    def infeasible(cls, algorithm: str, message: str) -> "PlanResult":
        return cls(status=PlanStatus.INFEASIBLE_INPUT, algorithm=algorithm, message=message)
