"""Tests for GMT, the FMT* baseline and the Dijkstra oracle."""

import json
import math

import numpy as np
import pytest

from conftest import SCENES, make_problem, random_problem
from src.data.problem import INIT_INDEX, Problem
from src.geometry.space import Aabb, GoalRegion, ObstacleSet, State
from src.graph.neighbors import build_neighbor_graph
from src.planning.callbacks import (
    IterationMetricsLogger,
    RecordingCallback,
    WavefrontInvariantChecker,
)
from src.planning.dijkstra import dijkstra_oracle
from src.planning.fmt import fmt_plan
from src.planning.gmt import GmtParams, gmt_plan
from src.planning.result import PlanStatus
from src.planning.wavefront import Label
from src.sampling.sampler import SampleSet, SampleSource
from src.steering.models import SteeringModel
from src.utils.errors import GoalBlockedError, InvalidInputError

ALGORITHMS = ("gmt", "fmt", "dijkstra")


def _path_cost(graph, indices):
    return sum(graph.edge_cost(a, b) for a, b in zip(indices, indices[1:]))


def test_params_validation():
    assert GmtParams(0.5, 0.2).delta == 0.5 * 0.2
    for bad in (0.0, -0.1, 1.5):
        with pytest.raises(InvalidInputError):
            GmtParams(bad, 0.2)
    with pytest.raises(InvalidInputError):
        GmtParams(0.5, 0.0)


def test_open_diagonal():
    problem = make_problem(goal=((0.9, 0.9), (0.9, 0.9)), n=2000, lambda_=1.0)
    inst = problem.instantiate()
    result = inst.run("gmt")
    oracle = inst.run("dijkstra")
    assert result.succeeded
    assert result.path[-1].coords == pytest.approx((0.9, 0.9))
    assert 1.1313 <= result.cost <= 1.31
    assert result.cost <= 3.0 * oracle.cost


def test_init_in_goal_finishes_immediately():
    problem = make_problem(init=(0.85, 0.85), n=1)
    inst = problem.instantiate()
    for algo in ALGORITHMS:
        result = inst.run(algo)
        assert result.succeeded
        assert result.cost == 0.0
        assert result.iterations == 0
        assert result.path == (problem.init,)
        assert result.path_indices == (INIT_INDEX,)


def test_goal_inside_obstacle_fails_at_sampling():
    problem = make_problem(boxes=[((0.7, 0.7), (1.0, 1.0))], goal=((0.8, 0.8), (0.9, 0.9)))
    with pytest.raises(GoalBlockedError):
        problem.instantiate()


def test_sealed_goal_exhausts_open_set(sealed_problem):
    inst = sealed_problem.instantiate()
    for algo in ALGORITHMS:
        result = inst.run(algo)
        assert result.status == PlanStatus.FAILURE_OPEN_EMPTY
        assert result.cost == math.inf
        assert result.path == ()


def test_init_in_collision_is_rejected():
    problem = make_problem(boxes=[((0.05, 0.05), (0.2, 0.2))], init=(0.1, 0.1))
    inst = problem.instantiate()
    for algo in ALGORITHMS:
        result = inst.run(algo)
        assert result.status == PlanStatus.INFEASIBLE_INPUT
        assert "collision" in result.message


def test_unknown_algorithm(empty_problem):
    with pytest.raises(InvalidInputError):
        empty_problem.instantiate().run("rrt")


def test_two_sample_line():
    samples = SampleSet((State((0.5, 0.5)), State((0.6, 0.5))), (1,))
    graph = build_neighbor_graph(samples, SteeringModel.euclidean(), 0.15)
    obs = ObstacleSet.empty(2)
    goal = GoalRegion(Aabb((0.55, 0.45), (0.65, 0.55)))
    result = dijkstra_oracle(samples, graph, obs, goal, 0)
    assert result.cost == pytest.approx(0.1)
    assert result.path_indices == (0, 1)
    assert fmt_plan(samples, graph, obs, goal, 0).cost == result.cost
    assert gmt_plan(samples, graph, obs, goal, 0, GmtParams(0.5, 0.15)).cost == result.cost


def test_path_matches_edge_costs(wall_problem):
    inst = wall_problem.instantiate()
    for algo in ALGORITHMS:
        result = inst.run(algo)
        assert result.succeeded
        assert result.path_indices[0] == INIT_INDEX
        assert result.path_indices[-1] in inst.samples.goal_indices
        assert result.path == tuple(inst.samples[k] for k in result.path_indices)
        assert abs(_path_cost(inst.graph, result.path_indices) - result.cost) <= 1e-9


def test_path_goes_around_wall(wall_problem):
    result = wall_problem.plan("gmt")
    assert result.succeeded
    # Any collision-free route must pass above or below the wall
    assert any(abs(s.coords[1] - 0.5) > 0.3 for s in result.path)


def test_tiny_lambda_reproduces_fmt():
    rng = np.random.default_rng(5)
    problems = [make_problem(boxes=[((0.45, 0.2), (0.55, 0.8))], init=(0.1, 0.5),
                             goal=((0.85, 0.45), (0.95, 0.55)), n=400,
                             sampling=SampleSource.uniform(3))]
    for k in range(24):
        dubins = k % 5 == 0
        n = int(rng.integers(40, 120)) if dubins else int(rng.integers(100, 501))
        problems.append(random_problem(rng, d=2 + k % 2, n=n, dubins=dubins))
    assert len(problems) == 25
    for problem in problems:
        inst = problem.instantiate()
        gmt = inst.run("gmt", lambda_=1e-9)
        fmt = inst.run("fmt")
        assert gmt.status == fmt.status
        assert set(gmt.stats.group_sizes) <= {1}
        assert gmt.iterations == fmt.iterations
        assert gmt.tree.parent == fmt.tree.parent
        assert gmt.tree.cost_to_arrive == fmt.tree.cost_to_arrive
        assert gmt.path_indices == fmt.path_indices
        assert gmt.cost == fmt.cost


def test_fmt_equals_oracle_without_obstacles():
    for seed in range(4):
        for d in (2, 3):
            problem = make_problem(init=(0.1,) * d, goal=((0.8,) * d, (0.95,) * d), n=400,
                                   sampling=SampleSource.uniform(seed))
            inst = problem.instantiate()
            fmt = inst.run("fmt")
            oracle = inst.run("dijkstra")
            assert fmt.succeeded and oracle.succeeded
            assert fmt.cost == pytest.approx(oracle.cost, rel=1e-12)


def test_oracle_lower_bounds_both_planners():
    rng = np.random.default_rng(11)
    checked = 0
    for k in range(30):
        inst = random_problem(rng, d=2 + k % 2, n=300).instantiate()
        oracle = inst.run("dijkstra")
        for algo in ("gmt", "fmt"):
            result = inst.run(algo)
            if result.succeeded:
                assert oracle.succeeded
                assert oracle.cost <= result.cost + 1e-12
                checked += 1
    assert checked > 0


def _same_run(a, b):
    assert a.status == b.status
    assert a.cost == b.cost
    assert a.path_indices == b.path_indices
    assert a.iterations == b.iterations
    assert a.tree.parent == b.tree.parent
    assert a.tree.cost_to_arrive == b.tree.cost_to_arrive
    assert a.tree.iteration_added == b.tree.iteration_added
    assert a.stats.group_sizes == b.stats.group_sizes


def test_worker_count_does_not_change_result():
    rng = np.random.default_rng(99)
    for k in range(50):
        dubins = k % 10 == 0
        problem = random_problem(rng, d=2 + k % 2, n=80 if dubins else 250, dubins=dubins)
        inst = problem.instantiate()
        lam = float(rng.choice([0.2, 0.5, 1.0]))
        base = inst.run("gmt", workers=1, lambda_=lam)
        for workers in (2, 8):
            _same_run(base, inst.run("gmt", workers=workers, lambda_=lam))


@pytest.mark.parametrize("lam", [0.25, 0.5])
def test_nodes_enter_ahead_of_threshold_without_obstacles(lam):
    for seed in range(5):
        for d in (2, 3):
            problem = make_problem(init=(0.1,) * d, goal=((0.85,) * d, (0.95,) * d), n=500,
                                   sampling=SampleSource.uniform(seed))
            inst = problem.instantiate()
            result = inst.run("gmt", lambda_=lam)
            delta = lam * inst.radius
            tree = result.tree
            for x in tree.tree_nodes():
                if x == INIT_INDEX:
                    continue
                assert tree.cost_to_arrive[x] > (tree.iteration_added[x] - 1) * delta


def test_invariant_checker_runs_every_iteration(wall_problem):
    inst = wall_problem.instantiate()
    for algo in ("gmt", "fmt"):
        checker, recorder = WavefrontInvariantChecker(), RecordingCallback()
        result = inst.run(algo, callbacks=[checker, recorder])
        assert result.succeeded
        assert checker.checked_iterations == result.iterations
        assert len(recorder.iterations) == result.iterations
        assert recorder.final["status"] == "success"
        assert recorder.final["cost"] == result.cost


def test_recorded_group_sizes(wall_problem):
    recorder = RecordingCallback()
    result = wall_problem.instantiate().run("gmt", callbacks=[recorder])
    assert [it["group_size"] for it in recorder.iterations] == result.stats.group_sizes
    assert [it["added"] for it in recorder.iterations] == result.stats.nodes_added
    indices = [it["threshold_index"] for it in recorder.iterations]
    assert indices == sorted(set(indices))


def test_final_tree_partition(wall_problem):
    result = wall_problem.plan("gmt")
    tree = result.tree
    assert tree.violations() == []
    assert tree.label[INIT_INDEX] == Label.CLOSED


def test_iteration_metrics_logger(tmp_path, wall_problem):
    logger_cb = IterationMetricsLogger(str(tmp_path / "logs"))
    result = wall_problem.instantiate().run("gmt", callbacks=[logger_cb])
    lines = (tmp_path / "logs" / "iterations.jsonl").read_text().splitlines()
    events = [json.loads(line) for line in lines]
    assert events[0]["event"] == "plan_begin"
    assert events[0]["data"]["algorithm"] == "gmt"
    assert events[-1]["event"] == "plan_end"
    assert "plan_duration_seconds" in events[-1]["data"]
    iteration_events = [e for e in events if e["event"] == "iteration_end"]
    assert len(iteration_events) == result.iterations
    assert all("open" in e["data"] and "closed" in e["data"] for e in iteration_events)


def test_lazy_checks_fewer_than_eager(wall_problem):
    inst = wall_problem.instantiate()
    oracle = inst.run("dijkstra")
    assert oracle.stats.collision_checks == inst.graph.edge_count
    for algo in ("gmt", "fmt"):
        stats = inst.run(algo).stats
        assert stats.collision_checks <= stats.candidate_considerations
        assert stats.collision_checks < oracle.stats.collision_checks


def test_larger_lambda_means_fewer_groups(wall_problem):
    inst = wall_problem.instantiate()
    small = inst.run("gmt", lambda_=0.2)
    large = inst.run("gmt", lambda_=1.0)
    assert large.iterations < small.iterations
    assert max(large.stats.group_sizes) > 1


def _single_wall_optimum(problem):
    wall = problem.obstacles.boxes[0]
    start = problem.init.coords
    best = math.inf
    for y in (wall.lo[1], wall.hi[1]):
        near, far = (wall.lo[0], y), (wall.hi[0], y)
        route = math.dist(start, near) + math.dist(near, far) + problem.goal.box.distance_to(far)
        best = min(best, route)
    return best


@pytest.mark.slow
def test_converges_on_single_wall():
    problem = Problem.load(SCENES / "single_wall_2d.json")
    optimum = _single_wall_optimum(problem)
    assert optimum == pytest.approx(0.9515, abs=1e-3)

    means = []
    for n in (500, 1000, 2000, 4000):
        costs = []
        for seed in range(20):
            run = problem.with_overrides(n=n, sampling=SampleSource.uniform(seed), lambda_=0.5)
            result = run.plan("gmt")
            assert result.succeeded
            costs.append(result.cost)
        means.append(float(np.mean(costs)))

    assert all(m >= optimum - 1e-9 for m in means)
    assert means[-1] <= 1.05 * optimum
    assert all(b <= 1.01 * a for a, b in zip(means, means[1:]))
