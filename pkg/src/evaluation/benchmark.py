"""Benchmark harness: GMT suboptimality, scaling and planner comparison."""

import math
from pathlib import Path
from typing import Dict, List, Optional, Sequence

import pandas as pd
from tqdm import tqdm

from src.data.problem import PlanningInstance, Problem
from src.evaluation.metrics import PlanningMetrics
from src.sampling.sampler import SampleSource
from src.utils.logging_utils import get_logger

# Fraction of failed runs in a cell above which a warning is logged
FAILURE_WARN_FRACTION = 0.10


class PlannerBenchmark:
    """Runs planners over bundled scenes and tabulates costs and times."""

    def __init__(self, workers: int = 1, repetitions: int = 5, progress: bool = True):
        """Initialize the benchmark.

        Args:
            workers: Threads for graph construction and the GMT neighbor map
            repetitions: Timed repetitions per measurement (median is reported)
            progress: Show tqdm progress bars
        """
        self.workers = workers
        self.repetitions = repetitions
        self.progress = progress
        self.logger = get_logger("evaluation")
        self.metrics = PlanningMetrics()

    def _instance(self, problem: Problem, n: int, seed: Optional[int]) -> PlanningInstance:
        source = SampleSource.uniform(seed) if seed is not None else problem.sampling
        return problem.with_overrides(n=n, sampling=source).instantiate(self.workers)

    def _warn_failures(self, label: str, failures: int, runs: int) -> None:
        if runs and failures / runs > FAILURE_WARN_FRACTION:
            self.logger.warning(
                f"{label}: {failures} of {runs} runs failed on a scene designed feasible"
            )

    def suboptimality(
        self,
        scenes: Sequence[Path],
        lambdas: Sequence[float],
        n: int,
        seeds: Sequence[int],
    ) -> pd.DataFrame:
        """Mean GMT cost error relative to FMT* per (scene, lambda) cell.

        GMT and FMT* run on identical sample sets: one uniform draw per seed,
        shared by every lambda.

        Args:
            scenes: Problem files
            lambdas: Threshold factors to sweep
            n: Samples per run
            seeds: Uniform sampling seeds

        Returns:
            DataFrame with columns scene, dimension, lambda, runs, failures,
            mean_error, std_error
        """
        rows = []
        for scene_path in scenes:
            problem = Problem.load(scene_path)
            errors: Dict[float, List[float]] = {lam: [] for lam in lambdas}
            failures: Dict[float, int] = {lam: 0 for lam in lambdas}
            name = Path(scene_path).stem

            for seed in tqdm(seeds, desc=f"Suboptimality {name}", disable=not self.progress):
                instance = self._instance(problem, n, seed)
                reference = instance.run("fmt")
                for lam in lambdas:
                    result = instance.run("gmt", self.workers, lambda_=lam)
                    if not (reference.succeeded and result.succeeded):
                        failures[lam] += 1
                        self.logger.info(
                            f"{name} seed={seed} lambda={lam}: excluded "
                            f"(fmt {reference.status}, gmt {result.status})"
                        )
                        continue
                    errors[lam].append(self.metrics.cost_error(result.cost, reference.cost))

            for lam in lambdas:
                self._warn_failures(f"{name} lambda={lam}", failures[lam], len(seeds))
                mean, std = self.metrics.mean_and_std(errors[lam])
                rows.append(
                    {
                        "scene": name,
                        "dimension": problem.dimension,
                        "lambda": lam,
                        "runs": len(errors[lam]),
                        "failures": failures[lam],
                        "mean_error": mean,
                        "std_error": std,
                    }
                )
        return pd.DataFrame(rows)

    def scaling(
        self,
        scene: Path,
        sample_counts: Sequence[int],
        refinement_factors: Sequence[int],
    ) -> pd.DataFrame:
        """GMT time and cost over sample counts and obstacle refinements.

        Refinement splits every box into ``factor`` slabs, so the blocked region
        is unchanged while the obstacle count grows. Sampling follows the
        scene's own source, so repeated runs give identical costs.

        Returns:
            DataFrame with columns n, factor, obstacles, radius, edges,
            graph_time_s, plan_time_s, cost, status
        """
        base = Problem.load(scene)
        rows = []
        cells = [(n, f) for n in sample_counts for f in refinement_factors]
        for n, factor in tqdm(cells, desc=f"Scaling {Path(scene).stem}", disable=not self.progress):
            problem = base.with_overrides(n=n, obstacles=base.obstacles.subdivide(factor))
            graph_time, instance = self.metrics.median_time(
                lambda: problem.instantiate(self.workers), 1
            )
            plan_time, result = self.metrics.median_time(
                lambda: instance.run("gmt", self.workers), self.repetitions
            )
            rows.append(
                {
                    "n": n,
                    "factor": factor,
                    "obstacles": len(problem.obstacles),
                    "radius": instance.radius,
                    "edges": instance.graph.edge_count,
                    "graph_time_s": graph_time,
                    "plan_time_s": plan_time,
                    "cost": result.cost,
                    "status": str(result.status),
                }
            )
            self.logger.info(
                f"n={n} obstacles={len(problem.obstacles)}: {result.summary()} "
                f"time={plan_time:.4f}s"
            )
        return pd.DataFrame(rows)

    def compare_planners(
        self,
        scene: Path,
        n: int,
        seeds: Sequence[int],
        algorithms: Sequence[str] = ("gmt", "fmt", "dijkstra"),
    ) -> pd.DataFrame:
        """Cost and time of each planner relative to GMT on one scene.

        The eager Dijkstra oracle stands in for a fully checked disk-graph
        planner. Only seeds where every planner succeeds enter the ratios.

        Returns:
            DataFrame with columns algorithm, runs, mean_cost, time_s (mean of
            per-seed medians), cost_ratio, time_ratio
        """
        problem = Problem.load(scene)
        costs: Dict[str, List[float]] = {a: [] for a in algorithms}
        times: Dict[str, List[float]] = {a: [] for a in algorithms}
        failures = 0
        for seed in tqdm(seeds, desc=f"Compare {Path(scene).stem}", disable=not self.progress):
            instance = self._instance(problem, n, seed)
            outcome = {}
            for algo in algorithms:
                outcome[algo] = self.metrics.median_time(
                    lambda: instance.run(algo, self.workers), self.repetitions
                )
            if not all(result.succeeded for _, result in outcome.values()):
                failures += 1
                continue
            for algo, (elapsed, result) in outcome.items():
                costs[algo].append(result.cost)
                times[algo].append(elapsed)
        self._warn_failures(f"compare {Path(scene).stem}", failures, len(seeds))

        def mean(values: List[float]) -> float:
            return sum(values) / len(values) if values else math.nan

        base_cost = mean(costs.get("gmt", []))
        base_time = mean(times.get("gmt", []))
        rows = []
        for algo in algorithms:
            c, t = mean(costs[algo]), mean(times[algo])
            rows.append(
                {
                    "algorithm": algo,
                    "runs": len(costs[algo]),
                    "mean_cost": c,
                    "time_s": t,
                    "cost_ratio": c / base_cost if base_cost else math.nan,
                    "time_ratio": t / base_time if base_time else math.nan,
                }
            )
        return pd.DataFrame(rows)
