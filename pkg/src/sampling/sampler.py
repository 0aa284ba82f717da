"""Free-space sample sets with the goal-membership guarantee."""

import math
from dataclasses import dataclass, field
from typing import Iterator, List, Literal, Optional, Sequence, Tuple

import numpy as np

from src.geometry.space import GoalRegion, ObstacleSet, State, point_free
from src.sampling.halton import halton_point
from src.utils.errors import GoalBlockedError, InfeasibleSamplingError, InvalidInputError
from src.utils.logging_utils import get_logger

logger = get_logger("sampling")

CANDIDATE_BUDGET_FACTOR = 1000
_UNIFORM_BATCH = 256


@dataclass(frozen=True)
class SampleSource:
    """Where candidates come from.

    Attributes:
        kind: "halton" (deterministic) or "uniform" (seeded PCG64 generator)
        seed: Generator seed for uniform sampling
        start_index: First Halton index (>= 1)
    """

    kind: Literal["halton", "uniform"] = "halton"
    seed: int = 0
    start_index: int = 1

    def __post_init__(self):
        if self.kind not in ("halton", "uniform"):
            raise InvalidInputError(f"Unknown sample source kind: {self.kind}")
        if self.start_index < 1:
            raise InvalidInputError(f"Halton start_index must be >= 1, got {self.start_index}")

    @classmethod
    def uniform(cls, seed: int) -> "SampleSource":
        return cls(kind="uniform", seed=int(seed))

    @classmethod
    def halton(cls, start_index: int = 1) -> "SampleSource":
        return cls(kind="halton", start_index=int(start_index))


@dataclass(frozen=True)
class SampleSet:
    """Free samples, the indices of those inside the goal, and their provenance."""

    states: Tuple[State, ...]
    goal_indices: Tuple[int, ...]
    source: Optional[SampleSource] = None
    _positions: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "states", tuple(self.states))
        object.__setattr__(self, "goal_indices", tuple(sorted(self.goal_indices)))
        positions = np.array([s.coords for s in self.states], dtype=np.float64)
        positions.setflags(write=False)
        object.__setattr__(self, "_positions", positions)

    def __len__(self) -> int:
        return len(self.states)

    def __getitem__(self, index: int) -> State:
        return self.states[index]

    @property
    def positions(self) -> np.ndarray:
        """(n, d) array of sample coordinates."""
        return self._positions

    @property
    def dimension(self) -> int:
        return self.states[0].dimension

    def with_planted(self, planted: Sequence[State], goal: GoalRegion) -> "SampleSet":
        """Put ``planted`` states first (index 0 onward) and recompute goal membership.

        Existing samples equal to a planted state are dropped so states stay distinct.
        The initial state is added to a problem this way, as index 0.
        """
        seen = set()
        states: List[State] = []
        for s in list(planted) + list(self.states):
            if s in seen:
                continue
            seen.add(s)
            states.append(s)
        goal_indices = tuple(k for k, s in enumerate(states) if goal.contains(s))
        return SampleSet(tuple(states), goal_indices, self.source)


def _halton_candidates(
    start_index: int, d: int, with_heading: bool
) -> Iterator[State]:
    index = start_index
    while True:
        yield halton_point(index, d, with_heading)
        index += 1


def _uniform_candidates(seed: int, d: int, with_heading: bool) -> Iterator[State]:
    rng = np.random.Generator(np.random.PCG64(seed))
    width = d + (1 if with_heading else 0)
    while True:
        block = rng.random((_UNIFORM_BATCH, width))
        for row in block:
            heading = 2.0 * math.pi * float(row[d]) if with_heading else None
            yield State(tuple(row[:d]), heading)


def _goal_substitute(
    goal: GoalRegion, obs: ObstacleSet, taken: set, with_heading: bool, budget: int
) -> State:
    center = State(goal.box.center, 0.0 if with_heading else None)
    if point_free(center, obs) and center not in taken:
        return center
    lo = np.asarray(goal.box.lo)
    extent = np.asarray(goal.box.hi) - lo
    d = goal.dimension
    for index in range(1, budget + 1):
        h = halton_point(index, d, with_heading)
        candidate = State(tuple(lo + extent * h.as_array()), h.heading)
        if point_free(candidate, obs) and candidate not in taken:
            return candidate
    raise GoalBlockedError(
        f"No free goal state found among {budget} rescaled Halton candidates in {goal.box}"
    )


def sample_free(
    n: int,
    obs: ObstacleSet,
    goal: GoalRegion,
    source: SampleSource,
    with_heading: bool = False,
) -> SampleSet:
    """Draw ``n`` distinct free samples, at least one of them inside the goal region.

    Candidates come from the Halton sequence (indices ascending from
    ``source.start_index``) or a PCG64 generator seeded with ``source.seed``;
    colliding candidates are rejected. If no accepted sample lies in the goal,
    the last one is replaced by the goal center when free, otherwise by the
    first free Halton point rescaled into the goal box.

    Args:
        n: Number of samples (>= 1)
        obs: Obstacles
        goal: Goal region
        source: Candidate source
        with_heading: Draw a heading for each sample (Dubins problems)

    Returns:
        The sample set

    Raises:
        InfeasibleSamplingError: more than 1000*n candidates were needed
        GoalBlockedError: no free goal state could be substituted
    """
    if n < 1:
        raise InvalidInputError(f"Sample count must be >= 1, got {n}")
    if goal.dimension != obs.dimension:
        raise InvalidInputError(
            f"Goal dimension {goal.dimension} does not match obstacle dimension {obs.dimension}"
        )
    d = obs.dimension
    budget = CANDIDATE_BUDGET_FACTOR * n
    if source.kind == "halton":
        candidates = _halton_candidates(source.start_index, d, with_heading)
    else:
        candidates = _uniform_candidates(source.seed, d, with_heading)

    states: List[State] = []
    taken = set()
    drawn = 0
    for candidate in candidates:
        if len(states) == n:
            break
        if drawn >= budget:
            raise InfeasibleSamplingError(
                f"Collected {len(states)} of {n} free samples within {budget} candidates"
            )
        drawn += 1
        if candidate in taken or not point_free(candidate, obs):
            continue
        states.append(candidate)
        taken.add(candidate)

    goal_indices = [k for k, s in enumerate(states) if goal.contains(s)]
    if not goal_indices:
        taken.discard(states[-1])
        states[-1] = _goal_substitute(goal, obs, taken, with_heading, budget)
        goal_indices = [n - 1]
        logger.debug("No sample landed in the goal; substituted %s", states[-1].coords)

    logger.debug(
        "Sampled %d free states from %d %s candidates (%d in goal)",
        n, drawn, source.kind, len(goal_indices),
    )
    return SampleSet(tuple(states), tuple(goal_indices), source)
