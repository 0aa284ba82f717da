"""Disk-graph neighbor precomputation over a sample set.

Edges (i, j) exist wherever the directed connection cost from sample i to
sample j is at most the connection radius. Costs are cached, and so are the
discretized paths of curved (Dubins) connections.
"""

import itertools
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from src.geometry.space import State
from src.sampling.sampler import SampleSet
from src.steering.models import Connection, SteeringModel, connect, lower_bound, within_radius
from src.utils.errors import InvalidInputError
from src.utils.logging_utils import get_logger

logger = get_logger("graph")

Neighbor = Tuple[int, float]
EdgePaths = Dict[Tuple[int, int], Tuple[State, ...]]
# (target, cost, discretized path or None for exact straight edges)
OutEdge = Tuple[int, float, Optional[Tuple[State, ...]]]

# Slack on cell size and the vectorized prefilter so float rounding never drops a true edge
_SLACK = 1e-9


@dataclass
class NeighborGraph:
    """Directed neighbor lists under a connection radius.

    Attributes:
        n: Sample count
        radius: Connection radius used
        out_neighbors: Per sample, (target, cost) sorted by target index
        in_neighbors: Per sample, (source, cost) sorted by source index
        edge_paths: Discretized paths of non-exact connections, keyed by (source, target)
        exact: True when edges are straight lines checked exactly
    """

    n: int
    radius: float
    out_neighbors: Tuple[Tuple[Neighbor, ...], ...]
    in_neighbors: Tuple[Tuple[Neighbor, ...], ...]
    edge_paths: EdgePaths = field(default_factory=dict)
    exact: bool = True
    _costs: Optional[Dict[Tuple[int, int], float]] = field(default=None, repr=False, compare=False)

    @property
    def edge_count(self) -> int:
        return sum(len(out) for out in self.out_neighbors)

    def edge_cost(self, source: int, target: int) -> float:
        if self._costs is None:
            self._costs = {
                (i, j): c for i, out in enumerate(self.out_neighbors) for j, c in out
            }
        return self._costs[(source, target)]

    def average_out_degree(self) -> float:
        return self.edge_count / self.n if self.n else 0.0

    def same_edges(self, other: "NeighborGraph") -> bool:
        return (
            self.out_neighbors == other.out_neighbors
            and self.in_neighbors == other.in_neighbors
        )


def _connection_within(
    model: SteeringModel, a: State, b: State, r: float
) -> Optional[Connection]:
    if lower_bound(model, a, b) > r:
        return None
    conn = connect(model, a, b)
    return conn if conn.cost <= r else None


def _out_edge(j: int, conn: Connection) -> OutEdge:
    return (j, conn.cost, None if conn.exact else conn.path)


def _assemble(
    n: int,
    r: float,
    model: SteeringModel,
    out_lists: Sequence[List[OutEdge]],
) -> NeighborGraph:
    out_neighbors = []
    in_lists: List[List[Neighbor]] = [[] for _ in range(n)]
    edge_paths: EdgePaths = {}
    for i, out in enumerate(out_lists):
        out_neighbors.append(tuple((j, cost) for j, cost, _ in out))
        for j, cost, path in out:
            in_lists[j].append((i, cost))
            if path is not None:
                edge_paths[(i, j)] = path
    return NeighborGraph(
        n=n,
        radius=r,
        out_neighbors=tuple(out_neighbors),
        in_neighbors=tuple(tuple(lst) for lst in in_lists),
        edge_paths=edge_paths,
        exact=not model.is_dubins,
    )


def build_neighbor_graph_brute_force(
    samples: SampleSet, model: SteeringModel, r: float
) -> NeighborGraph:
    """Reference O(n^2) construction over every ordered pair."""
    if r <= 0.0:
        raise InvalidInputError(f"Radius must be > 0, got {r}")
    states = samples.states
    out_lists = []
    for i, a in enumerate(states):
        out = []
        for j, b in enumerate(states):
            if i != j and within_radius(model, a, b, r):
                out.append(_out_edge(j, connect(model, a, b)))
        out_lists.append(out)
    return _assemble(len(states), r, model, out_lists)


class GridIndex:
    """Uniform grid of cell size ~r over sample positions."""

    def __init__(self, positions: np.ndarray, cell: float):
        self.positions = positions
        self.cell = cell
        keys = np.floor(positions / cell).astype(np.int64)
        self.keys = keys
        buckets: Dict[Tuple[int, ...], List[int]] = {}
        for index, key in enumerate(map(tuple, keys)):
            buckets.setdefault(key, []).append(index)
        self.buckets = {k: np.asarray(v, dtype=np.int64) for k, v in buckets.items()}
        self._cell_keys = list(self.buckets)
        self._cell_array = np.array(self._cell_keys, dtype=np.int64).reshape(
            len(self._cell_keys), positions.shape[1]
        )
        self._adjacent: Dict[Tuple[int, ...], np.ndarray] = {}

    def _adjacent_cells(self, key: Tuple[int, ...]) -> List[Tuple[int, ...]]:
        d = len(key)
        if 3**d <= len(self.buckets):
            cells = []
            for offset in itertools.product((-1, 0, 1), repeat=d):
                neighbor = tuple(k + o for k, o in zip(key, offset))
                if neighbor in self.buckets:
                    cells.append(neighbor)
            return cells
        # High dimension: scan the occupied cells instead of all 3^d offsets
        near = np.all(np.abs(self._cell_array - np.asarray(key)) <= 1, axis=1)
        return [self._cell_keys[k] for k in np.flatnonzero(near)]

    def candidates(self, index: int) -> np.ndarray:
        """Indices in the 3^d block of cells around sample ``index``, sorted."""
        key = tuple(self.keys[index])
        if key not in self._adjacent:
            cells = self._adjacent_cells(key)
            self._adjacent[key] = np.sort(np.concatenate([self.buckets[c] for c in cells]))
        return self._adjacent[key]


def _out_list(
    i: int,
    states: Sequence[State],
    grid: GridIndex,
    model: SteeringModel,
    r: float,
) -> List[OutEdge]:
    candidates = grid.candidates(i)
    delta = grid.positions[candidates] - grid.positions[i]
    close = candidates[(delta * delta).sum(axis=1) <= (r * (1.0 + _SLACK)) ** 2]
    out: List[OutEdge] = []
    a = states[i]
    if not model.is_dubins:
        # Straight edges: the cost is the distance itself, no Connection needed.
        # math.dist on the coordinate tuples keeps costs bit-identical to connect().
        coords = a.coords
        for j in close.tolist():
            if j == i:
                continue
            cost = math.dist(coords, states[j].coords)
            if cost <= r:
                out.append((j, cost, None))
        return out
    for j in close.tolist():
        if j == i:
            continue
        conn = _connection_within(model, a, states[j], r)
        if conn is not None:
            out.append(_out_edge(j, conn))
    return out


def build_neighbor_graph(
    samples: SampleSet, model: SteeringModel, r: float, workers: int = 1
) -> NeighborGraph:
    """Grid-accelerated disk-graph construction.

    Produces the same neighbor lists as ``build_neighbor_graph_brute_force``:
    the grid only narrows the candidate set, and every surviving pair goes
    through the same cost computation.

    Args:
        samples: Sample set
        model: Steering model
        r: Connection radius (> 0)
        workers: Threads building out-lists in parallel; in-lists are merged afterwards

    Returns:
        The neighbor graph
    """
    if r <= 0.0:
        raise InvalidInputError(f"Radius must be > 0, got {r}")
    states = samples.states
    n = len(states)
    positions = samples.positions
    if model.is_dubins and model.planar_cost:
        positions = positions[:, :2]
    grid = GridIndex(np.ascontiguousarray(positions), r * (1.0 + _SLACK))
    # Warm the cell cache sequentially so worker threads only read it
    for i in range(n):
        grid.candidates(i)

    if workers > 1 and n > 1:
        chunk = (n + workers - 1) // workers
        ranges = [range(s, min(s + chunk, n)) for s in range(0, n, chunk)]
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(
                pool.map(lambda idx: [_out_list(i, states, grid, model, r) for i in idx], ranges)
            )
        out_lists = [out for part in parts for out in part]
    else:
        out_lists = [_out_list(i, states, grid, model, r) for i in range(n)]

    graph = _assemble(n, r, model, out_lists)
    logger.debug(
        "Built neighbor graph: n=%d r=%.5f edges=%d avg out-degree=%.2f",
        n, r, graph.edge_count, graph.average_out_degree(),
    )
    return graph
