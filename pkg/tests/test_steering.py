"""Tests for the Euclidean and Dubins airplane connection models."""

import math

import numpy as np
import pytest

from src.geometry.space import State
from src.steering import models
from src.steering.dubins import mod2pi, shortest_path
from src.steering.models import SteeringModel, connect, lower_bound, within_radius
from src.utils.errors import InvalidInputError

EUCLID = SteeringModel.euclidean()
DUBINS = SteeringModel.dubins_airplane(0.1)


def pose(x, y, theta, z=None):
    coords = (x, y) if z is None else (x, y, z)
    return State(coords, theta)


def test_euclidean_connect():
    conn = connect(EUCLID, State((0.0, 0.0)), State((0.6, 0.8)))
    assert conn.cost == pytest.approx(1.0)
    assert len(conn.path) == 2
    assert conn.exact


def test_dubins_straight_word():
    conn = connect(DUBINS, pose(0.0, 0.0, 0.0), pose(0.5, 0.0, 0.0))
    assert conn.cost == pytest.approx(0.5)
    assert not conn.exact


def test_dubins_pure_climb():
    a, b = pose(0.0, 0.0, 0.0, z=0.0), pose(0.0, 0.0, 0.0, z=0.3)
    conn = connect(DUBINS, a, b)
    assert conn.cost == pytest.approx(0.3)
    assert conn.path == (a, b)


def test_dubins_degenerate_pair():
    a = pose(0.3, 0.3, 1.0)
    conn = connect(DUBINS, a, a)
    assert conn.cost == 0.0
    assert conn.path == (a,)


def test_dubins_sidestep_cost():
    # Lateral offset of 2 rho with the same heading: a quarter turn, 2 rho straight, three
    # quarter turn (or the mirrored right-turn word) beats every CCC word
    conn = connect(DUBINS, pose(0.0, 0.0, 0.0), pose(0.0, 0.2, 0.0))
    assert conn.cost == pytest.approx(0.2 + 0.2 * math.pi, abs=1e-3)


def test_dubins_path_endpoints_and_spacing():
    a, b = pose(0.2, 0.2, 0.0, z=0.1), pose(0.6, 0.5, 2.0, z=0.3)
    conn = connect(DUBINS, a, b)
    assert conn.path[0].coords == pytest.approx(a.coords)
    assert conn.path[-1] == b
    pts = np.array([p.coords for p in conn.path])
    planar_steps = np.linalg.norm(np.diff(pts[:, :2], axis=0), axis=1)
    assert planar_steps.max() <= DUBINS.discretization_step + 1e-9
    assert conn.cost >= math.dist(a.coords, b.coords) - 1e-12


def test_half_step_halves_spacing():
    a, b = pose(0.2, 0.2, 0.0), pose(0.5, 0.6, 3.0)
    coarse = connect(SteeringModel.dubins_airplane(0.1, 0.01), a, b)
    fine = connect(SteeringModel.dubins_airplane(0.1, 0.005), a, b)
    assert len(fine.path) > len(coarse.path)
    assert fine.cost == pytest.approx(coarse.cost)


def test_dubins_is_directed():
    a, b = pose(0.2, 0.2, 0.0), pose(0.3, 0.2, 0.0)
    assert connect(DUBINS, a, b).cost == pytest.approx(0.1)
    assert connect(DUBINS, b, a).cost > 0.5


def test_planar_cost_ignores_altitude():
    model = SteeringModel.dubins_airplane(0.1, planar_cost=True)
    a, b = pose(0.1, 0.1, 0.0, z=0.0), pose(0.4, 0.1, 0.0, z=0.4)
    assert connect(model, a, b).cost == pytest.approx(0.3)
    assert lower_bound(model, a, b) == pytest.approx(0.3)


def test_within_radius():
    assert within_radius(EUCLID, State((0.0, 0.0)), State((0.1, 0.0)), 0.1)
    assert not within_radius(EUCLID, State((0.0, 0.0)), State((0.2, 0.0)), 0.1)
    with pytest.raises(InvalidInputError):
        within_radius(EUCLID, State((0.0, 0.0)), State((0.2, 0.0)), 0.0)


def test_within_radius_prunes_without_solving(monkeypatch):
    def fail(*args, **kwargs):
        raise AssertionError("Dubins path solved for a pruned pair")

    monkeypatch.setattr(models, "shortest_path", fail)
    assert not within_radius(DUBINS, pose(0.0, 0.0, 0.0), pose(0.5, 0.0, 1.0), 0.3)


def test_incompatible_states():
    with pytest.raises(InvalidInputError):
        connect(DUBINS, State((0.0, 0.0)), State((0.1, 0.0)))
    with pytest.raises(InvalidInputError):
        connect(EUCLID, pose(0.0, 0.0, 0.0), pose(0.1, 0.0, 0.0))


def test_euclidean_symmetric():
    rng = np.random.default_rng(1)
    for _ in range(50):
        a, b = State(tuple(rng.random(3))), State(tuple(rng.random(3)))
        assert connect(EUCLID, a, b).cost == connect(EUCLID, b, a).cost


def test_dubins_lower_bound_and_rigid_invariance():
    rng = np.random.default_rng(2)
    for _ in range(100):
        a = pose(*rng.random(2), rng.uniform(0, 2 * math.pi), z=rng.random())
        b = pose(*rng.random(2), rng.uniform(0, 2 * math.pi), z=rng.random())
        cost = connect(DUBINS, a, b).cost
        assert cost >= lower_bound(DUBINS, a, b) - 1e-12

        phi, shift = rng.uniform(0, 2 * math.pi), rng.random(2)
        c, s = math.cos(phi), math.sin(phi)

        def move(p):
            x, y = p.coords[0], p.coords[1]
            return ((c * x - s * y + shift[0], s * x + c * y + shift[1]), mod2pi(p.heading + phi))

        (pa, ta), (pb, tb) = move(a), move(b)
        moved = shortest_path((*pa, ta), (*pb, tb), 0.1).length
        planar = shortest_path((*a.coords[:2], a.heading), (*b.coords[:2], b.heading), 0.1).length
        assert moved == pytest.approx(planar, abs=1e-9)


def _bang_bang_oracle(start, end, rho, steps=1000):
    """Best turn-straight-turn control over a grid of first-turn angles.

    For each turn direction pair and first-turn angle the straight leg and the
    final turn follow in closed form; a candidate counts when the straight leg
    lines up within the grid resolution.
    """
    best = math.inf
    x0, y0, t0 = start
    x1, y1, t1 = end
    for first_dir in (1.0, -1.0):
        for k in range(steps):
            phi = 2.0 * math.pi * k / steps
            cx = x0 - first_dir * rho * math.sin(t0)
            cy = y0 + first_dir * rho * math.cos(t0)
            heading = t0 + first_dir * phi
            px = cx + first_dir * rho * math.sin(heading)
            py = cy - first_dir * rho * math.cos(heading)
            for second_dir in (1.0, -1.0):
                ex = x1 - second_dir * rho * math.sin(t1)
                ey = y1 + second_dir * rho * math.cos(t1)
                qx = ex + second_dir * rho * math.sin(heading)
                qy = ey - second_dir * rho * math.cos(heading)
                dx, dy = qx - px, qy - py
                along = dx * math.cos(heading) + dy * math.sin(heading)
                across = -dx * math.sin(heading) + dy * math.cos(heading)
                if along < -1e-9 or abs(across) > 2e-3:
                    continue
                turn2 = mod2pi(second_dir * (t1 - heading))
                best = min(best, rho * phi + max(along, 0.0) + rho * turn2)
    return best


def test_sidestep_matches_enumeration_oracle():
    oracle = _bang_bang_oracle((0.0, 0.0, 0.0), (0.0, 0.2, 0.0), 0.1)
    conn = connect(DUBINS, pose(0.0, 0.0, 0.0), pose(0.0, 0.2, 0.0))
    assert conn.cost == pytest.approx(oracle, abs=1e-3)
