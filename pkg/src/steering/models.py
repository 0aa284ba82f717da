"""Connection models: local connection cost and discretized path between two states."""

import math
from dataclasses import dataclass
from typing import Literal, Optional, Tuple

from src.geometry.space import State
from src.steering.dubins import TWO_PI, shortest_path
from src.utils.errors import InvalidInputError

DEGENERATE_TOL = 1e-12


@dataclass(frozen=True)
class Connection:
    """Local connection from a source state to a target state.

    Attributes:
        cost: Arc length of the connection
        path: States from source to target, both included
        exact: True for straight lines (checked exactly), False for discretized curves
    """

    cost: float
    path: Tuple[State, ...]
    exact: bool


@dataclass(frozen=True)
class SteeringModel:
    """Dynamics used to connect samples.

    Attributes:
        kind: "euclidean" or "dubins_airplane"
        rho: Minimum turning radius (Dubins only)
        discretization_step: Max arc length between consecutive path states;
            defaults to rho / 10
        planar_cost: Use the planar Dubins length as cost, ignoring altitude
    """

    kind: Literal["euclidean", "dubins_airplane"] = "euclidean"
    rho: float = 0.1
    discretization_step: Optional[float] = None
    planar_cost: bool = False

    def __post_init__(self):
        if self.kind not in ("euclidean", "dubins_airplane"):
            raise InvalidInputError(f"Unknown steering model: {self.kind}")
        if self.rho <= 0.0:
            raise InvalidInputError(f"rho must be > 0, got {self.rho}")
        if self.discretization_step is None:
            object.__setattr__(self, "discretization_step", self.rho / 10.0)
        if self.discretization_step <= 0.0:
            raise InvalidInputError(
                f"discretization_step must be > 0, got {self.discretization_step}"
            )

    @classmethod
    def euclidean(cls) -> "SteeringModel":
        return cls(kind="euclidean")

    @classmethod
    def dubins_airplane(
        cls, rho: float, discretization_step: Optional[float] = None, planar_cost: bool = False
    ) -> "SteeringModel":
        return cls("dubins_airplane", rho, discretization_step, planar_cost)

    @property
    def is_dubins(self) -> bool:
        return self.kind == "dubins_airplane"

    @property
    def symmetric(self) -> bool:
        return not self.is_dubins


def _check_compatible(model: SteeringModel, s: State) -> None:
    if model.is_dubins:
        if not s.has_heading:
            raise InvalidInputError("Dubins steering needs states with a heading")
        if s.dimension not in (2, 3):
            raise InvalidInputError(
                f"Dubins steering supports dimension 2 or 3 (x, y[, z]), got {s.dimension}"
            )
    elif s.has_heading:
        raise InvalidInputError("Euclidean steering takes states without a heading")


def _wrap_heading(theta: float) -> float:
    wrapped = theta % TWO_PI
    return 0.0 if wrapped >= TWO_PI else wrapped


def lower_bound(model: SteeringModel, a: State, b: State) -> float:
    """Cheap lower bound on ``connect(model, a, b).cost``."""
    if model.is_dubins and model.planar_cost:
        return math.dist(a.coords[:2], b.coords[:2])
    return math.dist(a.coords, b.coords)


def _connect_dubins(model: SteeringModel, a: State, b: State) -> Connection:
    planar = math.dist(a.coords[:2], b.coords[:2])
    turn = abs(math.remainder(b.heading - a.heading, TWO_PI))
    dz = b.coords[2] - a.coords[2] if a.dimension == 3 else 0.0

    if planar < DEGENERATE_TOL and turn < DEGENERATE_TOL:
        if abs(dz) < DEGENERATE_TOL:
            return Connection(0.0, (a,), False)
        cost = 0.0 if model.planar_cost else abs(dz)
        return Connection(cost, (a, b), False)

    path = shortest_path((a.coords[0], a.coords[1], a.heading),
                         (b.coords[0], b.coords[1], b.heading), model.rho)
    planar_length = path.length
    cost = planar_length if model.planar_cost else math.hypot(planar_length, dz)

    states = []
    for (x, y, th), s in path.sample(model.discretization_step)[:-1]:
        if a.dimension == 3:
            z = a.coords[2] + dz * (s / planar_length)
            states.append(State((x, y, z), _wrap_heading(th)))
        else:
            states.append(State((x, y), _wrap_heading(th)))
    states.append(b)
    return Connection(cost, tuple(states), False)


def connect(model: SteeringModel, a: State, b: State) -> Connection:
    """Locally optimal connection from ``a`` to ``b``.

    Euclidean: straight segment, cost = Euclidean distance.
    Dubins airplane: shortest planar Dubins path with altitude interpolated
    linearly in planar arc length; cost = sqrt(planar_length**2 + dz**2)
    (planar length only when ``planar_cost`` is set). Directed.
    """
    _check_compatible(model, a)
    _check_compatible(model, b)
    if a.dimension != b.dimension:
        raise InvalidInputError(f"State dimensions differ: {a.dimension} vs {b.dimension}")
    if model.is_dubins:
        return _connect_dubins(model, a, b)
    return Connection(math.dist(a.coords, b.coords), (a, b), True)


def within_radius(model: SteeringModel, a: State, b: State, r: float) -> bool:
    """True iff the connection cost from ``a`` to ``b`` is at most ``r`` (inclusive).

    Pairs whose lower bound already exceeds ``r`` are rejected without a Dubins solve.
    """
    if r <= 0.0:
        raise InvalidInputError(f"Radius must be > 0, got {r}")
    _check_compatible(model, a)
    _check_compatible(model, b)
    if lower_bound(model, a, b) > r:
        return False
    return connect(model, a, b).cost <= r
