#!/usr/bin/env python3
"""Script to run a replanning campaign and write its success-rate table."""

import argparse
from dataclasses import replace
from pathlib import Path
import sys

# Add src to path
sys.path.insert(0, str(Path(__file__).parent.parent))

from src.data.converter import write_csv
from src.simulation.config import ScenarioConfig
from src.simulation.simulator import run_campaign
from src.utils.errors import PlanningInputError
from src.utils.logging_utils import setup_logging


def main(argv=None):
    """Main simulation campaign."""
    parser = argparse.ArgumentParser(description="Replanning success rates under collapse")
    parser.add_argument("campaign", type=str, help="Campaign YAML file")
    parser.add_argument("--seed", type=int, help="Root seed (overrides the campaign file)")
    parser.add_argument("--trials", type=int, help="Trials per cell")
    parser.add_argument("--workers", type=int, help="Worker processes")
    parser.add_argument(
        "--output", type=str, default="outputs/simulation/campaign.csv", help="CSV output path"
    )
    parser.add_argument("--log-level", type=str, default="INFO", help="Console log level")
    parser.add_argument("--log-dir", type=str, help="Directory for the log file")

    args = parser.parse_args(argv)
    setup_logging(args.log_level, args.log_dir)

    print("=" * 60)
    print("Replanning Campaign")
    print("=" * 60)

    campaign_path = Path(args.campaign)
    if not campaign_path.exists():
        print(f"\n✗ Campaign file not found: {campaign_path}")
        return 2

    try:
        cfg = ScenarioConfig.from_yaml(str(campaign_path))
        overrides = {"seed": args.seed, "trials": args.trials, "workers": args.workers}
        cfg = replace(cfg, **{k: v for k, v in overrides.items() if v is not None})
    except PlanningInputError as e:
        print(f"\n✗ Invalid campaign file: {e}")
        return 2

    print(f"Base problem: {cfg.base_problem_path}")
    print(f"Planner: {cfg.planner}  trials per cell: {cfg.trials}  seed: {cfg.seed}")
    print(f"Latencies: {cfg.latencies}  rates: {cfg.rates}  sigmas: {cfg.sigmas}")

    try:
        baseline = cfg.base_problem.with_overrides(
            n=cfg.samples_per_replan, lambda_=cfg.lambda_
        ).plan(cfg.planner)
    except PlanningInputError as e:
        print(f"\n✗ Invalid base problem: {e}")
        return 2
    if not baseline.succeeded:
        print(f"\n✗ Base problem has no initial plan: {baseline.status}")
        return 1

    table = run_campaign(cfg, progress=True)
    write_csv(table, Path(args.output))

    print("\n" + table.to_string(index=False))
    print(f"\nResults saved to: {args.output}")
    print("\n✓ Campaign complete")
    return 0


if __name__ == "__main__":
    sys.exit(main())
