"""Tests for the corridor suboptimality bound."""

import math
from dataclasses import replace

import numpy as np
import pytest

from conftest import make_problem
from src.data.problem import PlanningInstance
from src.geometry.space import ObstacleSet, State, clearance
from src.planning.bounds import (
    CLAUSE_CLEARANCE,
    CLAUSE_GOAL,
    CLAUSE_INIT,
    CLAUSE_NONEMPTY,
    CLAUSE_SPACING,
    corridor_bound_check,
    corridor_length,
)
from src.sampling.sampler import SampleSource
from src.utils.errors import InvalidInputError

R = 0.15


def _leg(a, b, max_gap):
    """Points from a (exclusive) to b (inclusive) spaced at most max_gap apart."""
    a, b = np.asarray(a), np.asarray(b)
    pieces = max(1, math.ceil(float(np.linalg.norm(b - a)) / max_gap))
    return [tuple(a + (b - a) * k / pieces) for k in range(1, pieces + 1)]


def _plan_with_corridor(problem, waypoints, lam):
    samples = problem.sample_set().with_planted(waypoints, problem.goal)
    inst = PlanningInstance(problem, samples, problem.build_graph(samples))
    assert inst.radius == R
    return inst.run("gmt", lambda_=lam)


def _check(problem, waypoints, lam, result):
    return corridor_bound_check(
        waypoints, R, lam, result, problem.init, problem.goal, problem.obstacles
    )


@pytest.mark.parametrize("lam", [0.2, 0.5, 1.0])
def test_straight_corridor(lam):
    problem = make_problem(init=(0.2, 0.2), goal=((0.75, 0.75), (0.85, 0.85)), n=400,
                           radius_override=R)
    waypoints = [State((0.2, 0.2))] + [State(p) for p in _leg((0.2, 0.2), (0.8, 0.8), R / 2)]
    result = _plan_with_corridor(problem, waypoints, lam)
    assert result.succeeded
    assert _check(problem, waypoints, lam, result)
    assert corridor_length(waypoints) == pytest.approx(0.6 * math.sqrt(2.0))


def _random_corridor(rng):
    start = tuple(rng.uniform(0.2, 0.3, 2))
    bend = tuple(rng.uniform(0.2, 0.8, 2))
    end = tuple(rng.uniform(0.7, 0.8, 2))
    gap = R * float(rng.uniform(0.4, 1.0))
    points = [start] + _leg(start, bend, gap) + _leg(bend, end, gap)

    boxes = []
    for _ in range(int(rng.integers(0, 4))):
        lo = rng.uniform(0.1, 0.8, 2)
        box = (tuple(lo), tuple(lo + rng.uniform(0.05, 0.2, 2)))
        single = ObstacleSet.from_bounds([box], 2)
        if all(clearance(p, single) >= R for p in points):
            boxes.append(box)

    goal = (tuple(np.asarray(end) - 0.05), tuple(np.asarray(end) + 0.05))
    problem = make_problem(boxes=boxes, init=start, goal=goal, n=300, radius_override=R,
                           sampling=SampleSource.uniform(int(rng.integers(1 << 31))))
    return problem, [State(p) for p in points]


def test_bound_holds_on_random_corridors():
    rng = np.random.default_rng(2015)
    for _ in range(100):
        problem, waypoints = _random_corridor(rng)
        for lam in (0.2, 0.5, 1.0):
            result = _plan_with_corridor(problem, waypoints, lam)
            assert result.succeeded
            assert _check(problem, waypoints, lam, result)


def test_cost_just_above_bound_is_rejected():
    problem = make_problem(init=(0.2, 0.2), goal=((0.75, 0.75), (0.85, 0.85)), n=300,
                           radius_override=R)
    waypoints = [State((0.2, 0.2))] + [State(p) for p in _leg((0.2, 0.2), (0.8, 0.8), R)]
    result = _plan_with_corridor(problem, waypoints, 1.0)
    length = corridor_length(waypoints)
    assert not _check(problem, waypoints, 1.0, replace(result, cost=3.01 * length))
    assert _check(problem, waypoints, 1.0, replace(result, cost=2.99 * length))


def _clause(problem, waypoints):
    result = problem.plan("gmt")
    with pytest.raises(InvalidInputError) as excinfo:
        _check(problem, waypoints, 0.5, result)
    return excinfo.value.clause


def test_hypothesis_violations_name_their_clause():
    problem = make_problem(init=(0.2, 0.5), goal=((0.25, 0.45), (0.35, 0.55)), n=50,
                           radius_override=R)
    init, inside = State((0.2, 0.5)), State((0.3, 0.5))
    assert _clause(problem, []) == CLAUSE_NONEMPTY
    assert _clause(problem, [State((0.21, 0.5)), inside]) == CLAUSE_INIT
    assert _clause(problem, [init, State((0.3, 0.3))]) == CLAUSE_GOAL
    far = make_problem(init=(0.2, 0.5), goal=((0.45, 0.45), (0.55, 0.55)), n=50,
                       radius_override=R)
    assert _clause(far, [init, State((0.5, 0.5))]) == CLAUSE_SPACING


def test_clearance_just_below_radius():
    box = ((0.3 + R - 1e-6, 0.0), (0.6, 1.0))
    problem = make_problem(boxes=[box], init=(0.2, 0.5), goal=((0.25, 0.45), (0.35, 0.55)),
                           n=50, radius_override=R)
    waypoints = [State((0.2, 0.5)), State((0.3, 0.5))]
    assert clearance((0.3, 0.5), problem.obstacles) < R
    assert _clause(problem, waypoints) == CLAUSE_CLEARANCE
