"""Executable suboptimality bound for GMT along a clear waypoint corridor.

Given waypoints y_0..y_M with y_0 the initial state, y_M in the goal,
consecutive gaps at most r, and every ball B(y_m, r) inside free space, a GMT
solution over samples containing the waypoints costs at most
``(1 + 2 * lambda) * sum ||y_k - y_{k-1}||``.
"""

import math
from typing import Sequence

from src.geometry.space import GoalRegion, ObstacleSet, State, clearance
from src.planning.result import PlanResult
from src.utils.errors import InvalidInputError

FLOAT_SLACK = 1e-9

CLAUSE_NONEMPTY = "nonempty"
CLAUSE_INIT = "starts-at-init"
CLAUSE_GOAL = "ends-in-goal"
CLAUSE_SPACING = "spacing"
CLAUSE_CLEARANCE = "clearance"


def corridor_length(waypoints: Sequence[State]) -> float:
    return sum(math.dist(a.coords, b.coords) for a, b in zip(waypoints, waypoints[1:]))


def check_corridor(
    waypoints: Sequence[State],
    r: float,
    init: State,
    goal: GoalRegion,
    obs: ObstacleSet,
) -> None:
    """Raise InvalidInputError naming the first hypothesis the waypoints violate."""
    if not waypoints:
        raise InvalidInputError("Corridor has no waypoints", clause=CLAUSE_NONEMPTY)
    if waypoints[0].coords != init.coords:
        raise InvalidInputError(
            f"First waypoint {waypoints[0].coords} is not the initial state {init.coords}",
            clause=CLAUSE_INIT,
        )
    if not goal.contains(waypoints[-1]):
        raise InvalidInputError(
            f"Last waypoint {waypoints[-1].coords} is outside the goal region", clause=CLAUSE_GOAL
        )
    for k in range(1, len(waypoints)):
        gap = math.dist(waypoints[k - 1].coords, waypoints[k].coords)
        if gap > r:
            raise InvalidInputError(
                f"Gap {gap:.6g} between waypoints {k - 1} and {k} exceeds r={r:.6g}",
                clause=CLAUSE_SPACING,
            )
    for k, y in enumerate(waypoints):
        room = clearance(y.coords, obs)
        if room < r:
            raise InvalidInputError(
                f"Waypoint {k} has clearance {room:.9g} < r={r:.6g}", clause=CLAUSE_CLEARANCE
            )


def corridor_bound_check(
    waypoints: Sequence[State],
    r: float,
    lambda_: float,
    result: PlanResult,
    init: State,
    goal: GoalRegion,
    obs: ObstacleSet,
) -> bool:
    """Whether ``result.cost`` respects the corridor bound.

    Args:
        waypoints: Corridor y_0..y_M (planted into the sample set before planning)
        r: Connection radius
        lambda_: Group cost threshold factor used for the run
        result: GMT result to check
        init: Initial state
        goal: Goal region
        obs: Obstacle set

    Returns:
        True iff cost <= (1 + 2 * lambda) * corridor length + 1e-9

    Raises:
        InvalidInputError: A hypothesis on the waypoints does not hold; ``clause``
            names which one
    """
    check_corridor(waypoints, r, init, goal, obs)
    return result.cost <= (1.0 + 2.0 * lambda_) * corridor_length(waypoints) + FLOAT_SLACK
