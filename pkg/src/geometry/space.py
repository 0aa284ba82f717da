"""State-space geometry: states, box obstacles, goal regions and collision predicates.

The state space is the unit cube [0, 1]^d. Obstacles are closed axis-aligned
boxes, so touching a box face counts as a collision, while the faces of the
unit cube itself are free.
"""

from dataclasses import dataclass, field
from typing import Iterable, List, Optional, Sequence, Tuple

import numpy as np

from src.utils.errors import InvalidInputError

# Upper bound on segment-box pairs evaluated in one vectorized block
_BLOCK_PAIRS = 1 << 21


@dataclass(frozen=True)
class State:
    """A point in the planning state space.

    Attributes:
        coords: Position coordinates, each expected in [0, 1]
        heading: Heading angle in [0, 2*pi) for Dubins states, None otherwise
    """

    coords: Tuple[float, ...]
    heading: Optional[float] = None

    def __post_init__(self):
        object.__setattr__(self, "coords", tuple(float(c) for c in self.coords))
        if len(self.coords) < 1:
            raise InvalidInputError("State needs at least one coordinate")
        if self.heading is not None:
            object.__setattr__(self, "heading", float(self.heading))

    @property
    def dimension(self) -> int:
        return len(self.coords)

    @property
    def has_heading(self) -> bool:
        return self.heading is not None

    def as_array(self) -> np.ndarray:
        return np.asarray(self.coords, dtype=np.float64)


@dataclass(frozen=True)
class Aabb:
    """Closed axis-aligned box ``[lo, hi]``; zero-thickness boxes are allowed."""

    lo: Tuple[float, ...]
    hi: Tuple[float, ...]

    def __post_init__(self):
        object.__setattr__(self, "lo", tuple(float(v) for v in self.lo))
        object.__setattr__(self, "hi", tuple(float(v) for v in self.hi))
        if len(self.lo) != len(self.hi):
            raise InvalidInputError(
                f"Box corners differ in dimension: {len(self.lo)} vs {len(self.hi)}"
            )
        for axis, (lo, hi) in enumerate(zip(self.lo, self.hi)):
            if lo > hi:
                raise InvalidInputError(f"Box has lo > hi on axis {axis}: {lo} > {hi}")

    @property
    def dimension(self) -> int:
        return len(self.lo)

    @property
    def center(self) -> Tuple[float, ...]:
        return tuple(0.5 * (lo + hi) for lo, hi in zip(self.lo, self.hi))

    @property
    def volume(self) -> float:
        return float(np.prod([hi - lo for lo, hi in zip(self.lo, self.hi)]))

    def contains(self, coords: Sequence[float]) -> bool:
        return all(lo <= c <= hi for c, lo, hi in zip(coords, self.lo, self.hi))

    def distance_to(self, coords: Sequence[float]) -> float:
        """Euclidean distance from a point to the box (0 inside)."""
        p = np.asarray(coords, dtype=np.float64)
        excess = np.maximum(np.maximum(np.asarray(self.lo) - p, p - np.asarray(self.hi)), 0.0)
        return float(np.linalg.norm(excess))

    def split(self, pieces: int) -> List["Aabb"]:
        """Split the box along its longest axis into equal slabs covering the same set."""
        if pieces < 1:
            raise InvalidInputError(f"pieces must be >= 1, got {pieces}")
        if pieces == 1:
            return [self]
        extents = [hi - lo for lo, hi in zip(self.lo, self.hi)]
        axis = int(np.argmax(extents))
        lo_axis, hi_axis = self.lo[axis], self.hi[axis]
        cuts = [lo_axis + (hi_axis - lo_axis) * k / pieces for k in range(pieces)] + [hi_axis]
        boxes = []
        for k in range(pieces):
            lo = list(self.lo)
            hi = list(self.hi)
            lo[axis], hi[axis] = cuts[k], cuts[k + 1]
            boxes.append(Aabb(tuple(lo), tuple(hi)))
        return boxes


@dataclass(frozen=True)
class ObstacleSet:
    """Union of closed boxes; boxes may overlap and may leave the unit cube."""

    boxes: Tuple[Aabb, ...]
    dimension: int
    _lo: np.ndarray = field(init=False, repr=False, compare=False)
    _hi: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        boxes = tuple(self.boxes)
        object.__setattr__(self, "boxes", boxes)
        if self.dimension < 1:
            raise InvalidInputError(f"Obstacle set dimension must be >= 1, got {self.dimension}")
        for k, box in enumerate(boxes):
            if box.dimension != self.dimension:
                raise InvalidInputError(
                    f"Box {k} has dimension {box.dimension}, expected {self.dimension}"
                )
        shape = (len(boxes), self.dimension)
        lo = np.array([b.lo for b in boxes], dtype=np.float64).reshape(shape)
        hi = np.array([b.hi for b in boxes], dtype=np.float64).reshape(shape)
        lo.setflags(write=False)
        hi.setflags(write=False)
        object.__setattr__(self, "_lo", lo)
        object.__setattr__(self, "_hi", hi)

    @classmethod
    def empty(cls, dimension: int) -> "ObstacleSet":
        return cls((), dimension)

    @classmethod
    def from_bounds(
        cls, bounds: Iterable[Tuple[Sequence[float], Sequence[float]]], dimension: int
    ) -> "ObstacleSet":
        return cls(tuple(Aabb(tuple(lo), tuple(hi)) for lo, hi in bounds), dimension)

    def __len__(self) -> int:
        return len(self.boxes)

    @property
    def lo(self) -> np.ndarray:
        return self._lo

    @property
    def hi(self) -> np.ndarray:
        return self._hi

    def with_boxes(self, extra: Iterable[Aabb]) -> "ObstacleSet":
        return ObstacleSet(self.boxes + tuple(extra), self.dimension)

    def subdivide(self, factor: int) -> "ObstacleSet":
        """Refine the representation: every box becomes ``factor`` slabs, same union."""
        refined: List[Aabb] = []
        for box in self.boxes:
            refined.extend(box.split(factor))
        return ObstacleSet(tuple(refined), self.dimension)


@dataclass(frozen=True)
class GoalRegion:
    """Goal box. Non-emptiness of its free part is checked when sampling."""

    box: Aabb

    @property
    def dimension(self) -> int:
        return self.box.dimension

    def contains(self, state: State) -> bool:
        return self.box.contains(state.coords)


def _check_dimension(state: State, obs: ObstacleSet) -> None:
    if state.dimension != obs.dimension:
        raise InvalidInputError(
            f"State dimension {state.dimension} does not match obstacle dimension {obs.dimension}"
        )


def in_unit_cube(coords: Sequence[float]) -> bool:
    return all(0.0 <= c <= 1.0 for c in coords)


def point_free(s: State, obs: ObstacleSet) -> bool:
    """True iff ``s`` lies in the unit cube and inside no obstacle box. Heading is ignored."""
    _check_dimension(s, obs)
    if not in_unit_cube(s.coords):
        return False
    if len(obs) == 0:
        return True
    p = s.as_array()
    inside = np.all((obs.lo <= p) & (p <= obs.hi), axis=1)
    return not bool(inside.any())


def _segments_hit_boxes(
    starts: np.ndarray, ends: np.ndarray, lo: np.ndarray, hi: np.ndarray
) -> np.ndarray:
    """Slab test of k closed segments against m closed boxes; True where a segment hits any box."""
    a = starts[:, None, :]
    direction = (ends - starts)[:, None, :]
    parallel = direction == 0.0
    inside_slab = (a >= lo[None, :, :]) & (a <= hi[None, :, :])
    with np.errstate(divide="ignore", invalid="ignore"):
        t_lo = (lo[None, :, :] - a) / direction
        t_hi = (hi[None, :, :] - a) / direction
    t_near = np.minimum(t_lo, t_hi)
    t_far = np.maximum(t_lo, t_hi)
    t_near = np.where(parallel, np.where(inside_slab, -np.inf, np.inf), t_near)
    t_far = np.where(parallel, np.where(inside_slab, np.inf, -np.inf), t_far)
    enter = np.maximum(t_near.max(axis=2), 0.0)
    leave = np.minimum(t_far.min(axis=2), 1.0)
    return (enter <= leave).any(axis=1)


def segments_free(starts: np.ndarray, ends: np.ndarray, obs: ObstacleSet) -> np.ndarray:
    """Batched exact segment test.

    Args:
        starts: (k, d) segment start coordinates
        ends: (k, d) segment end coordinates
        obs: Obstacle set of dimension d

    Returns:
        Boolean array of length k, True where the closed segment stays in free space
    """
    starts = np.atleast_2d(np.asarray(starts, dtype=np.float64))
    ends = np.atleast_2d(np.asarray(ends, dtype=np.float64))
    if starts.shape != ends.shape or starts.shape[1] != obs.dimension:
        raise InvalidInputError(
            f"Segment arrays {starts.shape}/{ends.shape} do not match dimension {obs.dimension}"
        )
    # The cube is convex: a segment stays inside iff both endpoints do
    free = np.all((starts >= 0.0) & (starts <= 1.0) & (ends >= 0.0) & (ends <= 1.0), axis=1)
    if len(obs) == 0 or len(starts) == 0:
        return free
    block = max(1, _BLOCK_PAIRS // (len(obs) * obs.dimension))
    for begin in range(0, len(starts), block):
        stop = begin + block
        hits = _segments_hit_boxes(starts[begin:stop], ends[begin:stop], obs.lo, obs.hi)
        free[begin:stop] &= ~hits
    return free


def segment_free(a: State, b: State, obs: ObstacleSet) -> bool:
    """Exact test of the closed straight segment [a, b]; zero-length reduces to point_free."""
    _check_dimension(a, obs)
    _check_dimension(b, obs)
    return bool(segments_free(a.as_array()[None, :], b.as_array()[None, :], obs)[0])


def polyline_free(path: Sequence[State], obs: ObstacleSet) -> bool:
    """True iff every consecutive pair of the path passes ``segment_free``."""
    if len(path) == 0:
        raise InvalidInputError("polyline_free needs a nonempty path")
    for s in path:
        _check_dimension(s, obs)
    if len(path) == 1:
        return point_free(path[0], obs)
    points = np.array([s.coords for s in path], dtype=np.float64)
    return bool(segments_free(points[:-1], points[1:], obs).all())


def free_measure_upper_bound(obs: ObstacleSet) -> float:
    """Upper bound on the Lebesgue measure of free space: the measure of the unit cube.

    Overestimating only enlarges the connection radius.
    """
    return 1.0


def clearance(coords: Sequence[float], obs: ObstacleSet) -> float:
    """Distance from a point to the nearest obstacle box or to the cube boundary."""
    to_cube = min(min(c, 1.0 - c) for c in coords)
    if len(obs) == 0:
        return to_cube
    p = np.asarray(coords, dtype=np.float64)
    excess = np.maximum(np.maximum(obs.lo - p, p - obs.hi), 0.0)
    to_boxes = float(np.sqrt((excess * excess).sum(axis=1)).min())
    return min(to_cube, to_boxes)
