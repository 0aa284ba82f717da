"""Group Marching Tree planner.

Each iteration expands, as one group, every open node whose cost-to-arrive is
at most ``i * delta``. Unexplored out-neighbors of the group pick their
locally optimal open parent and check only that one connection. The
per-neighbor decisions only read the state at the start of the iteration, so
they run as a parallel map whose result does not depend on the worker count.
"""

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

from src.geometry.space import GoalRegion, ObstacleSet
from src.graph.neighbors import NeighborGraph
from src.planning.callbacks import PlannerCallback
from src.planning.common import (
    EdgeChecker,
    best_open_parent,
    check_inputs,
    failure_result,
    goal_flags,
    success_result,
)
from src.planning.result import PlanResult, PlanStats
from src.planning.wavefront import Label, Wavefront
from src.sampling.sampler import SampleSet
from src.utils.errors import InvalidInputError
from src.utils.logging_utils import get_logger

logger = get_logger("planning.gmt")

ALGORITHM = "gmt"

# (candidate, parent, cost through parent, connection free)
Decision = Tuple[int, int, float, bool]


@dataclass(frozen=True)
class GmtParams:
    """Group threshold factor and connection radius.

    Attributes:
        lambda_: Group cost threshold factor in (0, 1]
        r: Connection radius the graph was built with
    """

    lambda_: float
    r: float

    def __post_init__(self):
        if not 0.0 < self.lambda_ <= 1.0:
            raise InvalidInputError(f"lambda must lie in (0, 1], got {self.lambda_}")
        if not self.r > 0.0:
            raise InvalidInputError(f"Connection radius must be > 0, got {self.r}")

    @property
    def delta(self) -> float:
        return self.lambda_ * self.r


def _decide(
    candidates: Sequence[int], graph: NeighborGraph, wf: Wavefront, checker: EdgeChecker
) -> List[Decision]:
    decisions = []
    for x in candidates:
        y, through = best_open_parent(x, graph, wf)
        # x is an out-neighbor of an open group member, so y always exists
        decisions.append((x, y, through, checker.free(y, x)))
    return decisions


def _decide_all(
    candidates: List[int],
    graph: NeighborGraph,
    wf: Wavefront,
    checker: EdgeChecker,
    pool: Optional[ThreadPoolExecutor],
    workers: int,
) -> List[Decision]:
    if pool is None or len(candidates) < 2 * workers:
        return _decide(candidates, graph, wf, checker)
    chunk = (len(candidates) + workers - 1) // workers
    parts = [candidates[s : s + chunk] for s in range(0, len(candidates), chunk)]
    results = pool.map(lambda part: _decide(part, graph, wf, checker), parts)
    return [d for part in results for d in part]


def _next_threshold_index(i: int, min_open_cost: float, delta: float) -> int:
    """Smallest index j > i with j * delta >= min_open_cost."""
    j = max(i + 1, math.ceil(min_open_cost / delta))
    while j * delta < min_open_cost:
        j += 1
    return j


def gmt_plan(
    samples: SampleSet,
    graph: NeighborGraph,
    obs: ObstacleSet,
    goal: GoalRegion,
    init_index: int,
    params: GmtParams,
    workers: int = 1,
    callbacks: Sequence[PlannerCallback] = (),
) -> PlanResult:
    """Run GMT from ``init_index`` over a precomputed neighbor graph.

    Args:
        samples: Sample set the graph was built over
        graph: Neighbor graph with radius ``params.r``
        obs: Obstacle set used for lazy collision checks
        goal: Goal region
        init_index: Sample index of the initial state
        params: Threshold factor and radius
        workers: Threads for the per-iteration neighbor map
        callbacks: Planner callbacks notified after every iteration

    Returns:
        PlanResult; ``iterations`` counts expanded groups
    """
    reason = check_inputs(samples, graph, obs, goal, init_index)
    if reason is not None:
        logger.info(f"GMT rejected the problem: {reason}")
        return PlanResult.infeasible(ALGORITHM, reason)

    wf = Wavefront.initial(len(samples), init_index)
    in_goal = goal_flags(samples, goal)
    checker = EdgeChecker(samples, graph, obs)
    stats = PlanStats()
    delta = params.delta
    cost = wf.cost_to_arrive
    label = wf.label
    open_set = {init_index}
    i = 0
    iterations = 0

    for cb in callbacks:
        cb.on_plan_begin({"algorithm": ALGORITHM, "n": len(samples), "delta": delta})

    pool = ThreadPoolExecutor(max_workers=workers) if workers > 1 else None
    try:
        while True:
            if not open_set:
                stats.final_threshold_index = i
                result = failure_result(ALGORITHM, wf, iterations, stats)
                break

            threshold = i * delta
            group = sorted(x for x in open_set if cost[x] <= threshold)
            if not group:
                i = _next_threshold_index(i, min(cost[x] for x in open_set), delta)
                continue

            goal_members = [x for x in group if in_goal[x]]
            if goal_members:
                best = min(goal_members, key=lambda x: (cost[x], x))
                stats.final_threshold_index = i
                result = success_result(ALGORITHM, samples, wf, best, iterations, stats)
                break

            candidates = sorted(
                {
                    x
                    for y in group
                    for x, _ in graph.out_neighbors[y]
                    if label[x] == Label.UNEXPLORED
                }
            )
            decisions = _decide_all(candidates, graph, wf, checker, pool, workers)

            # Barrier: apply decisions in candidate order, then retire the group
            added = 0
            for x, y, through, free in decisions:
                if free:
                    wf.add(x, y, through, i)
                    open_set.add(x)
                    added += 1
            for y in group:
                wf.close(y)
            open_set.difference_update(group)

            stats.group_sizes.append(len(group))
            stats.nodes_added.append(added)
            stats.collision_checks += len(decisions)
            stats.candidate_considerations += len(candidates)
            iterations += 1

            logs = {
                "threshold_index": i,
                "group_size": len(group),
                "candidates": len(candidates),
                "added": added,
            }
            logger.debug(
                "GMT iteration %d: i=%d group=%d candidates=%d added=%d",
                iterations, i, len(group), len(candidates), added,
            )
            for cb in callbacks:
                cb.on_iteration_end(iterations, wf, logs)
            i += 1
    finally:
        if pool is not None:
            pool.shutdown()

    for cb in callbacks:
        cb.on_plan_end({"status": str(result.status), "cost": result.cost, "iterations": iterations})
    logger.info(f"GMT finished: {result.summary()} checks={stats.collision_checks}")
    return result
