"""
Group Marching Tree Planning Toolkit

This is the main entry point for the groupmarch project.
For specific tasks, use the scripts in the scripts/ directory.
"""


def main():
    """Display project information and usage instructions."""
    print("=" * 70)
    print("Group Marching Tree Planning Toolkit")
    print("=" * 70)
    print()
    print("Sampling-based motion planning with group-wise wavefront expansion.")
    print()
    print("Quick Start:")
    print("  1. Install dependencies:  uv pip install -e .")
    print("  2. Validate scenes:       python scripts/validate_scenes.py")
    print("  3. Plan:                  python scripts/plan.py scenes/rectangles_2d.json")
    print("  4. Benchmark:             python scripts/bench_suboptimality.py")
    print("  5. Simulate:              python scripts/simulate.py configs/simulation_config.yaml")
    print()
    print("Available Scripts:")
    print("  scripts/plan.py                - Solve a problem with GMT, FMT* or Dijkstra")
    print("  scripts/validate_scenes.py     - Validate problem files")
    print("  scripts/bench_suboptimality.py - GMT cost error relative to FMT*")
    print("  scripts/scaling.py             - Runtime vs samples and obstacle count")
    print("  scripts/compare_planners.py    - Relative cost and time of all planners")
    print("  scripts/simulate.py            - Replanning success-rate campaign")
    print()
    print("Documentation:")
    print("  docs/SETUP.md              - Setup and installation guide")
    print("  docs/PROBLEM_FILES.md      - Problem file format")
    print("  docs/PLANNING.md           - Planners, benchmarks and simulation")
    print("  README.md                  - Project overview")
    print()
    print("Configuration:")
    print("  configs/planner_config.yaml    - Planner run configuration")
    print("  configs/benchmark_config.yaml  - Benchmark sweeps")
    print("  configs/simulation_config.yaml - Replanning campaign")
    print()
    print("=" * 70)
    print()
    print("For detailed instructions, see README.md and docs/")
    print()


if __name__ == "__main__":
    main()
