"""Command-line entry points: exit codes and emitted files."""

import json

import pandas as pd
import pytest
import yaml

from conftest import REPO_ROOT, SCENES, make_problem
from scripts import bench_suboptimality, compare_planners, plan, scaling, simulate, validate_scenes

BENCH_CONFIG = str(REPO_ROOT / "configs" / "benchmark_config.yaml")


@pytest.fixture(autouse=True)
def _work_in_tmp(tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)


def test_plan_success_writes_files(tmp_path, capsys):
    path_file, tree_file = tmp_path / "path.txt", tmp_path / "tree.txt"
    code = plan.main([
        str(SCENES / "rectangles_2d.json"), "--n", "1000", "--repetitions", "1",
        "--check-invariants", "--emit-path", str(path_file), "--emit-tree", str(tree_file),
    ])
    out = capsys.readouterr().out
    assert code == plan.EXIT_OK
    assert "status=success cost=" in out
    assert path_file.exists() and tree_file.exists()


def test_plan_with_run_config_and_flags(tmp_path):
    metrics = tmp_path / "metrics"
    code = plan.main([
        str(SCENES / "single_wall_2d.json"), "--config",
        str(REPO_ROOT / "configs" / "planner_config.yaml"), "--algo", "fmt", "--n", "500",
        "--seed", "3", "--workers", "1", "--repetitions", "1", "--metrics-dir", str(metrics),
    ])
    assert code == plan.EXIT_OK
    assert (metrics / "iterations.jsonl").exists()


def test_plan_rejects_inverted_box(tmp_path, capsys):
    doc = make_problem(boxes=[((0.4, 0.4), (0.5, 0.5))]).to_dict()
    doc["obstacles"].append({"lo": [0.6, 0.6], "hi": [0.5, 0.7]})
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps(doc))
    assert plan.main([str(bad), "--repetitions", "1"]) == plan.EXIT_INPUT
    assert "obstacles[1]" in capsys.readouterr().out


def test_plan_sealed_goal_fails(tmp_path, capsys, sealed_problem):
    sealed = tmp_path / "sealed.json"
    sealed_problem.save(sealed)
    assert plan.main([str(sealed), "--repetitions", "1"]) == plan.EXIT_FAILURE
    assert "failure-open-empty" in capsys.readouterr().out


def test_plan_input_errors(tmp_path):
    assert plan.main([str(tmp_path / "missing.json")]) == plan.EXIT_INPUT
    blocked = tmp_path / "blocked.json"
    make_problem(boxes=[((0.7, 0.7), (1.0, 1.0))], goal=((0.8, 0.8), (0.9, 0.9))).save(blocked)
    assert plan.main([str(blocked), "--repetitions", "1"]) == plan.EXIT_INPUT
    config = tmp_path / "run.yaml"
    config.write_text("planner:\n  algo: rrt\n")
    scene = str(SCENES / "single_wall_2d.json")
    assert plan.main([scene, "--config", str(config)]) == plan.EXIT_INPUT


def test_validate_scenes(tmp_path):
    assert validate_scenes.main([]) == 0
    bad = tmp_path / "bad.json"
    bad.write_text("{}")
    assert validate_scenes.main([str(SCENES / "maze_3d.json"), str(bad)]) == 2


def _campaign(tmp_path, boxes=(), **changes):
    scene = tmp_path / "scene.json"
    problem = make_problem(boxes=boxes, init=(0.1, 0.1), goal=((0.8, 0.8), (0.95, 0.95)), n=150)
    problem.save(scene)
    doc = {
        "base_problem": "scene.json",
        "replan_latency": 0.2,
        "time_limit": 5.0,
        "trials": 2,
        "workers": 1,
        "latencies": [0.3],
        "rates": [0.0],
        "sigmas": [0.0],
    }
    doc.update(changes)
    path = tmp_path / "campaign.yaml"
    path.write_text(yaml.safe_dump(doc))
    return str(path)


def test_simulate_writes_campaign_csv(tmp_path):
    output = tmp_path / "out" / "campaign.csv"
    code = simulate.main([_campaign(tmp_path), "--seed", "4", "--output", str(output)])
    assert code == 0
    table = pd.read_csv(output)
    assert table["success_rate"].tolist() == [1.0]
    assert table["trials"].tolist() == [2]


def test_simulate_input_errors(tmp_path):
    assert simulate.main([str(tmp_path / "missing.yaml")]) == 2
    assert simulate.main([_campaign(tmp_path, planner="rrt")]) == 2


def test_simulate_rejects_covered_goal(tmp_path, capsys):
    output = tmp_path / "campaign.csv"
    campaign = _campaign(tmp_path, boxes=[((0.7, 0.7), (1.0, 1.0))])
    assert simulate.main([campaign, "--output", str(output)]) == 2
    assert "Invalid base problem" in capsys.readouterr().out
    assert not output.exists()


def test_bench_suboptimality(tmp_path):
    code = bench_suboptimality.main([
        "--config", BENCH_CONFIG, "--scenes", str(SCENES / "rectangles_2d.json"),
        "--lambdas", "0.5", "1.0", "--n", "400", "--seeds", "2", "--workers", "1",
        "--output-dir", str(tmp_path / "bench"),
    ])
    assert code == 0
    table = pd.read_csv(tmp_path / "bench" / "suboptimality.csv")
    assert table["lambda"].tolist() == [0.5, 1.0]
    assert (tmp_path / "bench" / "suboptimality.dat").exists()


def test_bench_missing_scene(tmp_path):
    code = bench_suboptimality.main([
        "--config", BENCH_CONFIG, "--scenes", str(tmp_path / "nope.json"),
        "--output-dir", str(tmp_path / "bench"),
    ])
    assert code == 2


def test_scaling(tmp_path):
    code = scaling.main([
        "--config", BENCH_CONFIG, "--scene", str(SCENES / "rectangles_2d.json"),
        "--n-list", "1000", "--factors", "1", "2", "--repetitions", "1", "--workers", "1",
        "--output-dir", str(tmp_path / "scaling"),
    ])
    assert code == 0
    table = pd.read_csv(tmp_path / "scaling" / "scaling.csv")
    assert table["obstacles"].tolist() == [4, 8]


def test_compare_planners(tmp_path):
    output = tmp_path / "compare.csv"
    code = compare_planners.main([
        str(SCENES / "rectangles_2d.json"), "--n", "400", "--seeds", "1", "--repetitions", "1",
        "--output", str(output),
    ])
    assert code == 0
    assert pd.read_csv(output)["algorithm"].tolist() == ["gmt", "fmt", "dijkstra"]
