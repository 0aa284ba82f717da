#!/usr/bin/env python3
"""Script to solve one planning problem with GMT, FMT* or the Dijkstra oracle."""

import argparse
from pathlib import Path
import sys

# Add src to path
sys.path.insert(0, str(Path(__file__).parent.parent))

from src.data.converter import write_groups, write_path, write_tree
from src.data.problem import Problem
from src.evaluation.metrics import PlanningMetrics
from src.planning.callbacks import IterationMetricsLogger, WavefrontInvariantChecker
from src.planning.config import ALGORITHMS, PlannerRunConfig
from src.planning.result import PlanStatus
from src.sampling.sampler import SampleSource
from src.utils.errors import PlanningInputError
from src.utils.logging_utils import setup_logging

EXIT_OK, EXIT_FAILURE, EXIT_INPUT = 0, 1, 2


def parse_args(argv=None) -> argparse.Namespace:
    parser = argparse.ArgumentParser(description="Solve a planning problem file")
    parser.add_argument("problem", type=str, help="Path to the JSON problem file")
    parser.add_argument(
        "--config",
        type=str,
        help="Run configuration YAML; its planner/sampling sections override the problem file",
    )
    parser.add_argument("--algo", choices=ALGORITHMS, help="Planner (default: gmt)")
    parser.add_argument("--lambda", dest="lambda_", type=float, help="Group cost threshold factor")
    parser.add_argument("--eta", type=float, help="Radius tuning parameter")
    parser.add_argument("--n", type=int, help="Number of samples")
    parser.add_argument("--seed", type=int, help="Switch to uniform sampling with this seed")
    parser.add_argument("--radius", type=float, help="Fixed connection radius")
    parser.add_argument("--workers", type=int, help="Worker threads")
    parser.add_argument(
        "--repetitions", type=int, default=5, help="Timed repetitions (median is reported)"
    )
    parser.add_argument("--emit-path", type=str, help="Write the solution path to FILE")
    parser.add_argument("--emit-tree", type=str, help="Write parent/cost per sample to FILE")
    parser.add_argument(
        "--emit-groups", type=str, help="Write tree members with their expansion group to FILE"
    )
    parser.add_argument("--graph-cache", type=str, help="Directory for cached neighbor graphs")
    parser.add_argument(
        "--check-invariants",
        action="store_true",
        help="Verify the wavefront invariants after every iteration",
    )
    parser.add_argument("--metrics-dir", type=str, help="Write per-iteration JSONL metrics here")
    parser.add_argument("--log-level", type=str, help="Console log level")
    return parser.parse_args(argv)


def resolve(args: argparse.Namespace, problem: Problem, config: PlannerRunConfig):
    """Problem file < run configuration < command-line flags."""
    if args.config:
        problem = problem.with_overrides(
            n=config.sampling.n,
            lambda_=config.planner.lambda_,
            eta=config.planner.eta,
            radius_override=config.planner.radius_override,
            sampling=SampleSource(
                config.sampling.kind, config.sampling.seed, config.sampling.start_index
            ),
        )
    problem = problem.with_overrides(
        n=args.n,
        lambda_=args.lambda_,
        eta=args.eta,
        radius_override=args.radius,
        sampling=SampleSource.uniform(args.seed) if args.seed is not None else None,
    )
    algo = args.algo or config.planner.algo
    workers = args.workers or config.planner.workers
    return problem, algo, workers


def main(argv=None):
    """Main planning script."""
    args = parse_args(argv)

    try:
        config = PlannerRunConfig.from_yaml(args.config) if args.config else PlannerRunConfig()
    except (OSError, ValueError) as e:
        print(f"✗ Invalid run configuration: {e}")
        return EXIT_INPUT
    log_dir = config.logging.log_dir if args.config else None
    setup_logging(args.log_level or config.logging.log_level, log_dir)

    print("=" * 60)
    print("Group Marching Tree Planner")
    print("=" * 60)

    problem_path = Path(args.problem)
    if not problem_path.exists():
        print(f"\n✗ Problem file not found: {problem_path}")
        return EXIT_INPUT

    try:
        problem, algo, workers = resolve(args, Problem.load(problem_path), config)
        print(
            f"\nProblem: {problem_path} "
            f"(d={problem.dimension}, {len(problem.obstacles)} obstacles)"
        )
        instance = problem.instantiate(
            workers, Path(args.graph_cache) if args.graph_cache else None
        )
    except PlanningInputError as e:
        print(f"\n✗ Invalid input: {e}")
        return EXIT_INPUT

    print(
        f"Samples: {len(instance.samples)}  radius: {instance.radius:.5f}  "
        f"edges: {instance.graph.edge_count}"
    )

    callbacks = []
    if args.check_invariants:
        callbacks.append(WavefrontInvariantChecker())
    if args.metrics_dir:
        callbacks.append(IterationMetricsLogger(args.metrics_dir))

    elapsed, result = PlanningMetrics.median_time(
        lambda: instance.run(algo, workers, callbacks=callbacks), args.repetitions
    )

    print("-" * 60)
    print(result.summary())
    print(f"algorithm={algo} time={elapsed:.6f}s (median of {args.repetitions})")
    print(f"collision_checks={result.stats.collision_checks}")

    if args.emit_tree and result.tree is not None:
        write_tree(Path(args.emit_tree), result)
        print(f"Tree written to {args.emit_tree}")
    if args.emit_groups and result.tree is not None:
        write_groups(Path(args.emit_groups), result, instance.samples)
        print(f"Groups written to {args.emit_groups}")

    if not result.succeeded:
        print(f"\n✗ Planning failed: {result.status}")
        if result.message:
            print(f"  {result.message}")
        return EXIT_INPUT if result.status == PlanStatus.INFEASIBLE_INPUT else EXIT_FAILURE

    if args.emit_path:
        write_path(Path(args.emit_path), result)
        print(f"Path written to {args.emit_path}")

    print("\n✓ Path found")
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
