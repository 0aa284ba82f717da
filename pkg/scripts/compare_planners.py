#!/usr/bin/env python3
"""Script to compare GMT, FMT* and the eager disk-graph oracle on one scene."""

import argparse
from pathlib import Path
import sys

# Add src to path
sys.path.insert(0, str(Path(__file__).parent.parent))

from src.data.converter import write_csv
from src.evaluation.benchmark import PlannerBenchmark
from src.utils.logging_utils import setup_logging


def main(argv=None):
    """Main planner comparison."""
    parser = argparse.ArgumentParser(description="Relative cost and time of each planner")
    parser.add_argument("scene", type=str, help="Problem file")
    parser.add_argument("--n", type=int, default=2000, help="Samples per run")
    parser.add_argument("--seeds", type=int, default=5, help="Number of uniform sampling seeds")
    parser.add_argument("--seed", type=int, default=0, help="First sampling seed")
    parser.add_argument("--repetitions", type=int, default=5, help="Timed repetitions per run")
    parser.add_argument("--workers", type=int, default=1, help="Worker threads")
    parser.add_argument(
        "--output", type=str, default="outputs/benchmarks/compare.csv", help="CSV output path"
    )
    parser.add_argument("--log-level", type=str, default="INFO", help="Console log level")

    args = parser.parse_args(argv)
    setup_logging(args.log_level, None)

    scene = Path(args.scene)
    print("=" * 60)
    print("Planner Comparison")
    print("=" * 60)
    if not scene.exists():
        print(f"\n✗ Scene file not found: {scene}")
        return 2

    runner = PlannerBenchmark(workers=args.workers, repetitions=args.repetitions)
    try:
        table = runner.compare_planners(
            scene, args.n, list(range(args.seed, args.seed + args.seeds))
        )
    except ValueError as e:
        print(f"\n✗ Invalid input: {e}")
        return 2

    write_csv(table, Path(args.output))
    print("\n" + table.to_string(index=False, float_format=lambda v: f"{v:.4f}"))
    print(f"\nResults saved to: {args.output}")
    return 0 if (table["runs"] > 0).all() else 1


if __name__ == "__main__":
    sys.exit(main())
