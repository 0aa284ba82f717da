"""Tests for the Halton sequence and free-space sample sets."""

import math

import numpy as np
import pytest
from scipy.stats import qmc

from src.geometry.space import Aabb, GoalRegion, ObstacleSet, State, point_free
from src.sampling.halton import first_primes, halton, halton_point
from src.sampling.sampler import SampleSource, sample_free
from src.utils.errors import GoalBlockedError, InvalidInputError


def test_halton_values():
    assert halton(1, 2) == 0.5
    assert halton(3, 2) == 0.75
    assert halton(2, 3) == pytest.approx(2.0 / 3.0)
    with pytest.raises(InvalidInputError):
        halton(0, 2)


def test_halton_points():
    assert halton_point(1, 2).coords == pytest.approx((0.5, 1.0 / 3.0))
    assert halton_point(2, 2).coords == pytest.approx((0.25, 2.0 / 3.0))
    assert halton_point(1, 3).coords == pytest.approx((0.5, 1.0 / 3.0, 0.2))


def test_halton_heading_uses_next_prime():
    p = halton_point(1, 2, with_heading=True)
    assert p.heading == pytest.approx(2.0 * math.pi * 0.2)
    assert first_primes(6) == [2, 3, 5, 7, 11, 13]


def test_everything_in_goal():
    goal = GoalRegion(Aabb((0.0, 0.0), (1.0, 1.0)))
    samples = sample_free(10, ObstacleSet.empty(2), goal, SampleSource.halton())
    assert len(samples) == 10
    assert samples.goal_indices == tuple(range(10))
    assert samples[0] == halton_point(1, 2)


def test_rejects_obstacle_and_keeps_goal():
    obs = ObstacleSet.from_bounds([((0.4, 0.4), (0.6, 0.6))], 2)
    goal = GoalRegion(Aabb((0.8, 0.8), (0.9, 0.9)))
    samples = sample_free(100, obs, goal, SampleSource.halton())
    assert len(samples) == 100
    assert all(point_free(x, obs) for x in samples.states)
    assert samples.goal_indices
    assert all(goal.contains(samples[k]) for k in samples.goal_indices)
    assert len(set(samples.states)) == 100


def test_goal_substitution_uses_center():
    goal = GoalRegion(Aabb((0.9, 0.9), (0.91, 0.91)))
    samples = sample_free(5, ObstacleSet.empty(2), goal, SampleSource.halton())
    assert samples.goal_indices == (4,)
    assert samples[4].coords == pytest.approx(goal.box.center)


def test_goal_blocked():
    goal = GoalRegion(Aabb((0.8, 0.8), (0.9, 0.9)))
    obs = ObstacleSet.from_bounds([((0.75, 0.75), (0.95, 0.95))], 2)
    with pytest.raises(GoalBlockedError):
        sample_free(10, obs, goal, SampleSource.halton())


def test_reproducible():
    obs = ObstacleSet.from_bounds([((0.3, 0.3, 0.3), (0.7, 0.7, 0.7))], 3)
    goal = GoalRegion(Aabb((0.8, 0.8, 0.8), (1.0, 1.0, 1.0)))
    for source in (SampleSource.halton(5), SampleSource.uniform(42)):
        first = sample_free(200, obs, goal, source)
        second = sample_free(200, obs, goal, source)
        assert first.states == second.states
        assert np.array_equal(first.positions, second.positions)
    other = sample_free(200, obs, goal, SampleSource.uniform(43))
    assert other.states != sample_free(200, obs, goal, SampleSource.uniform(42)).states


def test_dubins_samples_carry_heading():
    goal = GoalRegion(Aabb((0.8, 0.8), (0.9, 0.9)))
    samples = sample_free(20, ObstacleSet.empty(2), goal, SampleSource.uniform(1), True)
    assert all(x.has_heading and 0.0 <= x.heading < 2.0 * math.pi for x in samples.states)


def test_with_planted_puts_init_first():
    goal = GoalRegion(Aabb((0.8, 0.8), (0.9, 0.9)))
    samples = sample_free(50, ObstacleSet.empty(2), goal, SampleSource.halton())
    init = State((0.05, 0.05))
    planted = samples.with_planted([init, samples[3]], goal)
    assert planted[0] == init
    assert planted[1] == samples[3]
    assert len(planted) == 51
    assert all(goal.contains(planted[k]) for k in planted.goal_indices)


def test_source_validation():
    with pytest.raises(InvalidInputError):
        SampleSource(kind="sobol")
    with pytest.raises(InvalidInputError):
        SampleSource.halton(0)


def test_halton_discrepancy_decreases():
    goal = GoalRegion(Aabb((0.0, 0.0), (1.0, 1.0)))
    values = []
    for n in (100, 1000, 10000):
        samples = sample_free(n, ObstacleSet.empty(2), goal, SampleSource.halton())
        values.append(qmc.discrepancy(samples.positions, method="L2-star"))
    assert values[0] > values[1] > values[2]
