"""Writes plans, trees and benchmark tables as plain-text and CSV files."""

import math
from pathlib import Path
from typing import Dict, Optional

import pandas as pd

from src.geometry.space import State
from src.planning.result import PlanResult
from src.sampling.sampler import SampleSet
from src.utils.errors import InvalidInputError


def _state_fields(state: State) -> str:
    fields = [repr(c) for c in state.coords]
    if state.has_heading:
        fields.append(repr(state.heading))
    return " ".join(fields)


def _state_header(state: State) -> str:
    names = [f"x{k}" for k in range(state.dimension)]
    if state.has_heading:
        names.append("heading")
    return " ".join(names)


def _open(path: Path):
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    return open(path, "w", newline="\n")


def write_path(path: Path, result: PlanResult) -> None:
    """One state per line, root first.

    Args:
        path: Output file
        result: Successful plan
    """
    if not result.succeeded:
        raise InvalidInputError(f"No path to write: plan status is {result.status}")
    with _open(path) as f:
        f.write(f"# algorithm={result.algorithm} cost={result.cost!r} states={len(result.path)}\n")
        f.write(f"# {_state_header(result.path[0])}\n")
        for state in result.path:
            f.write(_state_fields(state) + "\n")


def write_tree(path: Path, result: PlanResult) -> None:
    """Parent and cost-to-arrive of every sample (parent -1 for the root and non-members)."""
    tree = result.tree
    if tree is None:
        raise InvalidInputError(f"No tree to write: plan status is {result.status}")
    with _open(path) as f:
        f.write(f"# algorithm={result.algorithm} samples={len(tree)}\n")
        f.write("# index parent cost\n")
        for x in range(len(tree)):
            parent = tree.parent[x]
            f.write(f"{x} {-1 if parent is None else parent} {tree.cost_to_arrive[x]!r}\n")


def write_groups(path: Path, result: PlanResult, samples: SampleSet) -> None:
    """Tree members with the iteration that added them, for group-coloured plots."""
    tree = result.tree
    if tree is None:
        raise InvalidInputError(f"No tree to write: plan status is {result.status}")
    with _open(path) as f:
        f.write(f"# algorithm={result.algorithm} members={len(tree.tree_nodes())}\n")
        f.write(f"# index group cost {_state_header(samples[0])}\n")
        for x in tree.tree_nodes():
            f.write(
                f"{x} {tree.iteration_added[x]} {tree.cost_to_arrive[x]!r} "
                f"{_state_fields(samples[x])}\n"
            )


def write_csv(table: pd.DataFrame, path: Path) -> None:
    """Header row, comma-separated, '.' decimal, LF line endings."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    table.to_csv(path, index=False, lineterminator="\n")


def _gnuplot_value(value) -> str:
    if isinstance(value, float) and math.isnan(value):
        return "NaN"
    return str(value)


def write_gnuplot(blocks: Dict[str, pd.DataFrame], path: Path, title: Optional[str] = None) -> None:
    """Whitespace tables, one data block per key, separated by two blank lines.

    The blocks can be addressed with gnuplot's ``index`` in insertion order.
    """
    with _open(path) as f:
        if title:
            f.write(f"# {title}\n")
        for k, (name, table) in enumerate(blocks.items()):
            if k:
                f.write("\n\n")
            f.write(f"# [{k}] {name}\n")
            f.write("# " + " ".join(str(c) for c in table.columns) + "\n")
            for row in table.itertuples(index=False):
                f.write(" ".join(_gnuplot_value(v) for v in row) + "\n")
