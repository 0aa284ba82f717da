#!/usr/bin/env python3
"""Script to measure the cost error of GMT relative to FMT* across scenes and lambdas."""

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
    """Main suboptimality benchmark."""
    parser = argparse.ArgumentParser(description="GMT suboptimality relative to FMT*")
    parser.add_argument(
        "--config",
        type=str,
        default="configs/benchmark_config.yaml",
        help="Path to benchmark configuration file",
    )
    parser.add_argument("--scenes", nargs="+", help="Problem files (default: from config)")
    parser.add_argument("--lambdas", nargs="+", type=float, help="Threshold factors to sweep")
    parser.add_argument("--n", type=int, help="Samples per run")
    parser.add_argument("--seeds", type=int, help="Number of uniform sampling seeds")
    parser.add_argument("--seed", type=int, default=0, help="First sampling seed")
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

    scenes = [Path(s) for s in (args.scenes or bench.scenes)]
    lambdas = args.lambdas or bench.lambdas
    n = args.n or bench.n
    seeds = list(range(args.seed, args.seed + (args.seeds or bench.seeds)))
    output_dir = Path(args.output_dir or bench.output_dir)

    print("=" * 60)
    print("GMT Suboptimality Benchmark")
    print("=" * 60)
    print(f"Scenes: {', '.join(s.stem for s in scenes)}")
    print(f"Lambdas: {lambdas}  n={n}  seeds={len(seeds)}")

    missing = [s for s in scenes if not s.exists()]
    if missing:
        print(f"\n✗ Scene file(s) not found: {', '.join(map(str, missing))}")
        return 2

    runner = PlannerBenchmark(workers=args.workers or config.planner.workers)
    try:
        table = runner.suboptimality(scenes, lambdas, n, seeds)
    except ValueError as e:
        print(f"\n✗ Invalid input: {e}")
        return 2

    csv_path = output_dir / "suboptimality.csv"
    dat_path = output_dir / "suboptimality.dat"
    write_csv(table, csv_path)
    write_gnuplot(
        {
            scene: part[["lambda", "mean_error", "std_error"]]
            for scene, part in table.groupby("scene", sort=False)
        },
        dat_path,
        title="GMT cost error relative to FMT*",
    )

    print("\n" + "=" * 60)
    print("Mean cost error (c_GMT / c_FMT - 1)")
    print("=" * 60)
    pivot = table.pivot(index="scene", columns="lambda", values="mean_error")
    print((pivot * 100).round(2).to_string(float_format=lambda v: f"{v:.2f}%"))
    print(f"\nResults saved to: {csv_path}")
    print(f"Plot data saved to: {dat_path}")

    if (table["runs"] == 0).any():
        print("\n✗ Some cells have no successful runs")
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
