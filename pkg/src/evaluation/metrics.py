"""Metrics for planner benchmarks."""

import math
import statistics
import time
from typing import Any, Callable, List, Sequence, Tuple


class PlanningMetrics:
    """Timing and cost metrics for planner runs."""

    @staticmethod
    def median_time(fn: Callable[[], Any], repetitions: int = 5) -> Tuple[float, Any]:
        """Median wall-clock time of ``fn`` on the monotonic clock.

        Args:
            fn: Zero-argument callable to time
            repetitions: Number of timed calls

        Returns:
            Tuple of (median seconds, value returned by the last call)
        """
        if repetitions < 1:
            raise ValueError(f"repetitions must be >= 1, got {repetitions}")

        times = []
        value = None
        for _ in range(repetitions):
            start = time.perf_counter()
            value = fn()
            times.append(time.perf_counter() - start)
        return statistics.median(times), value

    @staticmethod
    def cost_error(cost: float, reference: float) -> float:
        """Relative excess cost ``cost / reference - 1``.

        Args:
            cost: Cost of the approximate planner
            reference: Cost of the reference planner

        Returns:
            Relative error (0 when both costs are zero)
        """
        if not (math.isfinite(cost) and math.isfinite(reference)):
            raise ValueError(f"Costs must be finite, got {cost} and {reference}")
        if reference == 0.0:
            return 0.0 if cost == 0.0 else math.inf
        return cost / reference - 1.0

    @staticmethod
    def success_rate(outcomes: Sequence[bool]) -> float:
        return sum(1 for ok in outcomes if ok) / len(outcomes) if outcomes else 0.0

    @staticmethod
    def mean_and_std(values: List[float]) -> Tuple[float, float]:
        """Mean and sample standard deviation (NaN when undefined)."""
        if not values:
            return math.nan, math.nan
        if len(values) == 1:
            return values[0], math.nan
        return statistics.fmean(values), statistics.stdev(values)
