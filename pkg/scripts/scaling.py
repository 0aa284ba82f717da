#!/usr/bin/env python3
"""Script to measure GMT time and cost against sample count and obstacle resolution."""

import argparse
from pathlib import Path
import sys

# Add src to path
sys.path.insert(0, str(Path(__file__).parent.parent))

from src.data.converter import write_csv, write_gnuplot
from src.evaluation.benchmark import PlannerBenchmark
from src.planning.config import PlannerRunConfig
from src.utils.logging_utils import setup_logging


def main(argv=None):
    """Main scaling sweep."""
    parser = argparse.ArgumentParser(description="GMT scaling with samples and obstacles")
    parser.add_argument(
        "--config",
        type=str,
        default="configs/benchmark_config.yaml",
        help="Path to benchmark configuration file",
    )
    parser.add_argument("--scene", type=str, help="Problem file (default: from config)")
    parser.add_argument("--n-list", nargs="+", type=int, help="Sample counts")
    parser.add_argument(
        "--factors", nargs="+", type=int, help="Obstacle refinement factors (boxes split per box)"
    )
    parser.add_argument("--repetitions", type=int, help="Timed repetitions per cell")
    parser.add_argument("--workers", type=int, help="Worker threads")
    parser.add_argument("--output-dir", type=str, help="Directory for CSV and gnuplot output")

    args = parser.parse_args(argv)

    try:
        config = PlannerRunConfig.from_yaml(args.config)
    except (OSError, ValueError) as e:
        print(f"✗ Invalid benchmark configuration: {e}")
        return 2
    setup_logging(config.logging.log_level, config.logging.log_dir)
    bench = config.benchmark

    scene = Path(args.scene or bench.scaling_scene)
    sample_counts = args.n_list or bench.scaling_sample_counts
    factors = args.factors or bench.refinement_factors
    output_dir = Path(args.output_dir or bench.output_dir)

    print("=" * 60)
    print("GMT Scaling Sweep")
    print("=" * 60)
    print(f"Scene: {scene}")
    print(f"Sample counts: {sample_counts}  refinement factors: {factors}")

    if not scene.exists():
        print(f"\n✗ Scene file not found: {scene}")
        return 2

    runner = PlannerBenchmark(
        workers=args.workers or config.planner.workers,
        repetitions=args.repetitions or bench.repetitions,
    )
    try:
        table = runner.scaling(scene, sample_counts, factors)
    except ValueError as e:
        print(f"\n✗ Invalid input: {e}")
        return 2

    csv_path = output_dir / "scaling.csv"
    dat_path = output_dir / "scaling.dat"
    write_csv(table, csv_path)
    write_gnuplot(
        {
            f"obstacles={count}": part[["n", "plan_time_s", "cost"]]
            for count, part in table.groupby("obstacles", sort=True)
        },
        dat_path,
        title=f"GMT scaling on {scene.stem}",
    )

    print("\n" + table[["n", "obstacles", "plan_time_s", "cost", "status"]].to_string(index=False))
    print(f"\nResults saved to: {csv_path}")
    print(f"Plot data saved to: {dat_path}")
    return 0 if (table["status"] == "success").all() else 1


if __name__ == "__main__":
    sys.exit(main())
