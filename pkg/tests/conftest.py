"""Shared fixtures: bundled scenes, small problems and planning instances."""

from pathlib import Path

import numpy as np
import pytest

from src.data.problem import Problem
from src.geometry.space import Aabb, GoalRegion, ObstacleSet, State
from src.sampling.sampler import SampleSource
from src.steering.models import SteeringModel

REPO_ROOT = Path(__file__).resolve().parent.parent
SCENES = REPO_ROOT / "scenes"


def make_problem(
    boxes=(),
    init=(0.1, 0.1),
    goal=((0.8, 0.8), (0.95, 0.95)),
    n=300,
    lambda_=0.5,
    sampling=None,
    steering=None,
    heading=None,
    radius_override=None,
) -> Problem:
    """Problem in the unit cube from plain tuples."""
    d = len(init)
    return Problem(
        steering=steering or SteeringModel.euclidean(),
        obstacles=ObstacleSet.from_bounds(boxes, d),
        init=State(init, heading),
        goal=GoalRegion(Aabb(*goal)),
        n=n,
        lambda_=lambda_,
        radius_override=radius_override,
        sampling=sampling or SampleSource.halton(),
    )


def random_problem(rng: np.random.Generator, d: int = 2, n: int = 200, dubins: bool = False):
    """Random boxes, an init state outside them and a goal box, seeded by ``rng``."""
    boxes = []
    for _ in range(int(rng.integers(0, 5))):
        lo = rng.uniform(0.2, 0.7, d)
        boxes.append((tuple(lo), tuple(lo + rng.uniform(0.05, 0.2, d))))
    steering = SteeringModel.dubins_airplane(0.05) if dubins else None
    return make_problem(
        boxes=boxes,
        init=(0.05,) * d,
        goal=((0.85,) * d, (0.98,) * d),
        n=n,
        sampling=SampleSource.uniform(int(rng.integers(1 << 31))),
        steering=steering,
        heading=float(rng.uniform(0.0, 2.0 * np.pi)) if dubins else None,
    )


@pytest.fixture
def scenes_dir() -> Path:
    return SCENES


@pytest.fixture
def empty_problem() -> Problem:
    return make_problem()


@pytest.fixture
def wall_problem() -> Problem:
    """A vertical wall with passages above and below."""
    return make_problem(boxes=[((0.45, 0.2), (0.55, 0.8))], init=(0.1, 0.5),
                        goal=((0.85, 0.45), (0.95, 0.55)), n=500)


@pytest.fixture
def sealed_problem() -> Problem:
    """Goal enclosed by four walls: sampling succeeds, planning cannot."""
    walls = [
        ((0.7, 0.7), (1.0, 0.72)),
        ((0.7, 0.7), (0.72, 1.0)),
        ((0.7, 0.98), (1.0, 1.0)),
        ((0.98, 0.7), (1.0, 1.0)),
    ]
    return make_problem(boxes=walls, goal=((0.8, 0.8), (0.9, 0.9)), n=300)
