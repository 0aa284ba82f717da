"""FMT* baseline: expand only the minimum-cost open node per step."""

import heapq
from typing import List, Sequence, Tuple

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
from src.utils.logging_utils import get_logger

logger = get_logger("planning.fmt")

ALGORITHM = "fmt"


def fmt_plan(
    samples: SampleSet,
    graph: NeighborGraph,
    obs: ObstacleSet,
    goal: GoalRegion,
    init_index: int,
    callbacks: Sequence[PlannerCallback] = (),
) -> PlanResult:
    """Run FMT* over a precomputed neighbor graph.

    Ties in the open-set argmin go to the smallest sample index. Connections of
    one expansion are decided before any of them is applied, so a node added by
    the current expansion never serves as a parent within it.
    """
    reason = check_inputs(samples, graph, obs, goal, init_index)
    if reason is not None:
        logger.info(f"FMT* rejected the problem: {reason}")
        return PlanResult.infeasible(ALGORITHM, reason)

    wf = Wavefront.initial(len(samples), init_index)
    in_goal = goal_flags(samples, goal)
    checker = EdgeChecker(samples, graph, obs)
    stats = PlanStats()
    label = wf.label
    heap: List[Tuple[float, int]] = [(0.0, init_index)]
    iterations = 0

    for cb in callbacks:
        cb.on_plan_begin({"algorithm": ALGORITHM, "n": len(samples)})

    while True:
        if not heap:
            result = failure_result(ALGORITHM, wf, iterations, stats)
            break
        _, z = heapq.heappop(heap)
        if in_goal[z]:
            result = success_result(ALGORITHM, samples, wf, z, iterations, stats)
            break

        candidates = [x for x, _ in graph.out_neighbors[z] if label[x] == Label.UNEXPLORED]
        decisions = []
        for x in candidates:
            y, through = best_open_parent(x, graph, wf)
            decisions.append((x, y, through, checker.free(y, x)))

        added = 0
        for x, y, through, free in decisions:
            if free:
                wf.add(x, y, through, iterations + 1)
                heapq.heappush(heap, (through, x))
                added += 1
        wf.close(z)

        iterations += 1
        stats.group_sizes.append(1)
        stats.nodes_added.append(added)
        stats.collision_checks += len(decisions)
        stats.candidate_considerations += len(candidates)
        for cb in callbacks:
            cb.on_iteration_end(
                iterations, wf, {"expanded": z, "candidates": len(candidates), "added": added}
            )

    for cb in callbacks:
        cb.on_plan_end({"status": str(result.status), "cost": result.cost, "iterations": iterations})
    logger.info(f"FMT* finished: {result.summary()} checks={stats.collision_checks}")
    return result
