"""Exact shortest path on the fully collision-checked disk graph."""

import heapq
from typing import List, Tuple

from src.geometry.space import GoalRegion, ObstacleSet
from src.graph.neighbors import NeighborGraph
from src.planning.common import EdgeChecker, check_inputs, failure_result, goal_flags, success_result
from src.planning.result import PlanResult, PlanStats
from src.planning.wavefront import Label, Wavefront
from src.sampling.sampler import SampleSet
from src.utils.logging_utils import get_logger

logger = get_logger("planning.dijkstra")

ALGORITHM = "dijkstra"


def dijkstra_oracle(
    samples: SampleSet,
    graph: NeighborGraph,
    obs: ObstacleSet,
    goal: GoalRegion,
    init_index: int,
) -> PlanResult:
    """Check every edge, then run Dijkstra from the init sample.

    The first goal sample settled is returned, which gives the minimum cost
    over all goal samples. ``stats.collision_checks`` is the graph edge count.
    """
    reason = check_inputs(samples, graph, obs, goal, init_index)
    if reason is not None:
        return PlanResult.infeasible(ALGORITHM, reason)

    edges = [(i, j) for i, out in enumerate(graph.out_neighbors) for j, _ in out]
    free = EdgeChecker(samples, graph, obs).free_many(edges)
    adjacency: List[List[Tuple[int, float]]] = [[] for _ in range(graph.n)]
    for (i, j), ok in zip(edges, free.tolist()):
        if ok:
            adjacency[i].append((j, graph.edge_cost(i, j)))
    logger.debug("Dijkstra oracle: %d of %d edges free", int(free.sum()), len(edges))

    wf = Wavefront.initial(len(samples), init_index)
    in_goal = goal_flags(samples, goal)
    stats = PlanStats(collision_checks=len(edges))
    cost = wf.cost_to_arrive
    heap = [(0.0, init_index)]
    settled = 0

    while heap:
        d, z = heapq.heappop(heap)
        if wf.label[z] == Label.CLOSED or d > cost[z]:
            continue
        if in_goal[z]:
            result = success_result(ALGORITHM, samples, wf, z, settled, stats)
            break
        wf.close(z)
        settled += 1
        for x, c in adjacency[z]:
            if wf.label[x] == Label.CLOSED:
                continue
            through = d + c
            if through < cost[x]:
                wf.add(x, z, through, settled)
                heapq.heappush(heap, (through, x))
    else:
        result = failure_result(ALGORITHM, wf, settled, stats)

    logger.info(f"Dijkstra oracle finished: {result.summary()}")
    return result
