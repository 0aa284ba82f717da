"""Planner callbacks for invariant checking and per-iteration metrics."""

from pathlib import Path
from typing import Dict, Any, List
import json
from datetime import datetime

from src.planning.wavefront import Label, Wavefront


class InvariantViolation(AssertionError):
    """Raised when the wavefront breaks its partition or tree invariants."""


class PlannerCallback:
    """Base class for planner callbacks."""

    def on_plan_begin(self, logs: Dict[str, Any] = None):
        """Called once the tree is rooted, before the first group is formed."""
        pass

    def on_iteration_end(self, iteration: int, wavefront: Wavefront, logs: Dict[str, Any] = None):
        """Called after each expansion, once the group is closed."""
        pass

    def on_plan_end(self, logs: Dict[str, Any] = None):
        """Called when the planner returns."""
        pass


class WavefrontInvariantChecker(PlannerCallback):
    """Checks the wavefront partition and parent chains after every iteration."""

    def __init__(self):
        self.checked_iterations = 0

    def on_iteration_end(self, iteration: int, wavefront: Wavefront, logs: Dict[str, Any] = None):
        problems = wavefront.violations()
        if problems:
            raise InvariantViolation(
                f"Iteration {iteration}: {len(problems)} violation(s); first: {problems[0]}"
            )
        self.checked_iterations += 1


class IterationMetricsLogger(PlannerCallback):
    """Logs per-iteration planner metrics to a JSON-lines file."""

    def __init__(self, log_dir: str, file_name: str = "iterations.jsonl"):
        """Initialize the metrics logger.

        Args:
            log_dir: Directory to save logs
            file_name: Name of the JSON-lines file inside log_dir
        """
        self.log_dir = Path(log_dir)
        self.log_dir.mkdir(parents=True, exist_ok=True)
        self.metrics_file = self.log_dir / file_name
        self.start_time = None

    def on_plan_begin(self, logs: Dict[str, Any] = None):
        self.start_time = datetime.now()
        self._log_event("plan_begin", logs)

    def on_iteration_end(self, iteration: int, wavefront: Wavefront, logs: Dict[str, Any] = None):
        data = dict(logs or {})
        data["iteration"] = iteration
        data["open"] = wavefront.count(Label.OPEN)
        data["closed"] = wavefront.count(Label.CLOSED)
        self._log_event("iteration_end", data)

    def on_plan_end(self, logs: Dict[str, Any] = None):
        data = dict(logs or {})
        if self.start_time:
            data["plan_duration_seconds"] = (datetime.now() - self.start_time).total_seconds()
        self._log_event("plan_end", data)

    def _log_event(self, event_type: str, logs: Dict[str, Any] = None):
        event = {
            "timestamp": datetime.now().isoformat(),
            "event": event_type,
            "data": logs or {},
        }

        with open(self.metrics_file, "a") as f:
            f.write(json.dumps(event) + "\n")


class RecordingCallback(PlannerCallback):
    """Keeps the per-iteration logs in memory."""

    def __init__(self):
        self.iterations: List[Dict[str, Any]] = []
        self.final: Dict[str, Any] = {}

    def on_iteration_end(self, iteration: int, wavefront: Wavefront, logs: Dict[str, Any] = None):
        self.iterations.append(dict(logs or {}, iteration=iteration))

    def on_plan_end(self, logs: Dict[str, Any] = None):
        self.final = dict(logs or {})
