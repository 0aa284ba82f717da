#!/usr/bin/env python3
"""Script to validate problem files against the problem schema."""

import argparse
from pathlib import Path
import sys

# Add src to path
sys.path.insert(0, str(Path(__file__).parent.parent))

from src.data.validator import ProblemValidator


def main(argv=None):
    """Validate every given problem file (default: the bundled scenes)."""
    parser = argparse.ArgumentParser(description="Validate planning problem files")
    parser.add_argument("files", nargs="*", help="Problem files (default: scenes/*.json)")

    args = parser.parse_args(argv)

    paths = [Path(f) for f in args.files]
    if not paths:
        paths = sorted((Path(__file__).parent.parent / "scenes").glob("*.json"))
    if not paths:
        print("✗ No problem files found")
        return 2

    report = ProblemValidator().validate_files(paths)
    return 0 if report["all_valid"] else 2


if __name__ == "__main__":
    sys.exit(main())
