"""Pieces shared by the GMT, FMT* and Dijkstra planners."""

import math
from typing import List, Optional, Sequence, Tuple

import numpy as np

from src.geometry.space import GoalRegion, ObstacleSet, point_free, polyline_free, segments_free
from src.graph.neighbors import NeighborGraph
from src.planning.result import PlanResult, PlanStats, PlanStatus
from src.planning.wavefront import Label, Wavefront
from src.sampling.sampler import SampleSet


def check_inputs(
    samples: SampleSet,
    graph: NeighborGraph,
    obs: ObstacleSet,
    goal: GoalRegion,
    init_index: int,
) -> Optional[str]:
    """Reason the problem cannot be planned, or None when it can."""
    if graph.n != len(samples):
        return f"graph has {graph.n} samples, sample set has {len(samples)}"
    if not 0 <= init_index < len(samples):
        return f"init index {init_index} outside 0..{len(samples) - 1}"
    if not point_free(samples[init_index], obs):
        return "initial state is in collision"
    if not samples.goal_indices:
        return "no sample lies in the goal region"
    if goal.dimension != obs.dimension:
        return "goal and obstacle dimensions differ"
    return None


def goal_flags(samples: SampleSet, goal: GoalRegion) -> List[bool]:
    return [goal.contains(s) for s in samples.states]


class EdgeChecker:
    """Motion collision checks for graph edges.

    Straight edges use the exact segment test; curved edges check their cached
    discretized path.
    """

    def __init__(self, samples: SampleSet, graph: NeighborGraph, obs: ObstacleSet):
        self.samples = samples
        self.graph = graph
        self.obs = obs

    def free(self, source: int, target: int) -> bool:
        if self.graph.exact:
            return bool(
                segments_free(
                    self.samples.positions[source], self.samples.positions[target], self.obs
                )[0]
            )
        return polyline_free(self.graph.edge_paths[(source, target)], self.obs)

    def free_many(self, edges: Sequence[Tuple[int, int]]) -> np.ndarray:
        """Eager check of many edges at once (batched for straight edges)."""
        if not edges:
            return np.zeros(0, dtype=bool)
        if self.graph.exact:
            index = np.asarray(edges, dtype=np.int64)
            positions = self.samples.positions
            return segments_free(positions[index[:, 0]], positions[index[:, 1]], self.obs)
        return np.array([self.free(i, j) for i, j in edges], dtype=bool)


def best_open_parent(x: int, graph: NeighborGraph, wf: Wavefront) -> Tuple[int, float]:
    """Open in-neighbor y minimizing cost(y) + c(y, x); smallest index wins ties."""
    best_y, best_cost = -1, math.inf
    label = wf.label
    cost = wf.cost_to_arrive
    for y, c in graph.in_neighbors[x]:
        if label[y] == Label.OPEN:
            total = cost[y] + c
            if total < best_cost:
                best_y, best_cost = y, total
    return best_y, best_cost


def success_result(
    algorithm: str,
    samples: SampleSet,
    wf: Wavefront,
    goal_index: int,
    iterations: int,
    stats: PlanStats,
) -> PlanResult:
    indices = tuple(wf.path_to(goal_index))
    return PlanResult(
        status=PlanStatus.SUCCESS,
        algorithm=algorithm,
        path=tuple(samples[k] for k in indices),
        path_indices=indices,
        cost=wf.cost_to_arrive[goal_index],
        iterations=iterations,
        stats=stats,
        tree=wf,
    )


def failure_result(
    algorithm: str, wf: Wavefront, iterations: int, stats: PlanStats
) -> PlanResult:
    return PlanResult(
        status=PlanStatus.FAILURE_OPEN_EMPTY,
        algorithm=algorithm,
        iterations=iterations,
        stats=stats,
        tree=wf,
        message="open set exhausted before reaching the goal",
    )
