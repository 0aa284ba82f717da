"""Replanning scenario and campaign configuration."""

from dataclasses import dataclass, field, fields
from pathlib import Path
from typing import Any, Dict, List, Optional

import yaml

from src.data.problem import Problem
from src.utils.errors import ProblemValidationError

PLANNERS = ("gmt", "fmt")
DEFAULT_SPAWN_EXTENT = 0.05


@dataclass(frozen=True)
class ScenarioConfig:
    """One replanning scenario plus the campaign grid swept around it.

    Attributes:
        base_problem: Static problem at t = 0 (Euclidean steering)
        collapse_rate: Obstacles spawned per second
        spawn_box_size: Extent of every spawned box per axis
        disturbance_sigma: Std. dev. of the position noise added per control step
        replan_latency: Simulated seconds from replan start to plan switch
        control_dt: Seconds per control step
        robot_speed: State-space units per second
        time_limit: Seconds before the trial times out
        trials: Trials per campaign cell
        seed: Root seed; trial k uses SeedSequence([seed, k])
        planner: "gmt" or "fmt"
        lambda_: GMT threshold factor for replans
        replan_samples: Samples per replan (defaults to base_problem.n)
        latencies: Campaign latency axis (seconds)
        rates: Campaign collapse-rate axis
        sigmas: Campaign disturbance axis
        workers: Processes running campaign trials
        base_problem_path: Where base_problem was loaded from, if anywhere
    """

    base_problem: Problem
    collapse_rate: float = 0.0
    spawn_box_size: Optional[List[float]] = None
    disturbance_sigma: float = 0.0
    replan_latency: float = 0.01
    control_dt: float = 0.01
    robot_speed: float = 0.5
    time_limit: float = 10.0
    trials: int = 50
    seed: int = 0
    planner: str = "gmt"
    lambda_: float = 0.5
    replan_samples: Optional[int] = None
    latencies: List[float] = field(default_factory=lambda: [0.01, 1.3])
    rates: List[float] = field(default_factory=lambda: [0.0, 1.0, 2.0, 4.0])
    sigmas: List[float] = field(default_factory=lambda: [0.0])
    workers: int = 1
    base_problem_path: Optional[str] = None

    def __post_init__(self):
        d = self.base_problem.dimension
        if self.base_problem.steering.is_dubins:
            raise ProblemValidationError(
                "base_problem.steering", "the simulator tracks Euclidean plans only"
            )
        if self.spawn_box_size is None:
            object.__setattr__(self, "spawn_box_size", [DEFAULT_SPAWN_EXTENT] * d)
        if len(self.spawn_box_size) != d or any(s <= 0.0 for s in self.spawn_box_size):
            raise ProblemValidationError("spawn_box_size", f"expected {d} extents > 0")
        for name in ("collapse_rate", "disturbance_sigma", "replan_latency", "robot_speed",
                     "time_limit"):
            if getattr(self, name) < 0.0:
                raise ProblemValidationError(name, "must be >= 0")
        if self.control_dt <= 0.0:
            raise ProblemValidationError("control_dt", "must be > 0")
        if self.trials < 1:
            raise ProblemValidationError("trials", "must be >= 1")
        if self.planner not in PLANNERS:
            raise ProblemValidationError("planner", f"must be one of {PLANNERS}")
        if not 0.0 < self.lambda_ <= 1.0:
            raise ProblemValidationError("lambda", "must lie in (0, 1]")
        if self.replan_samples is not None and self.replan_samples < 1:
            raise ProblemValidationError("replan_samples", "must be >= 1")
        if self.workers < 1:
            raise ProblemValidationError("workers", "must be >= 1")
        for axis in ("latencies", "rates", "sigmas"):
            values = getattr(self, axis)
            if not values or any(v < 0.0 for v in values):
                raise ProblemValidationError(axis, "must be a nonempty list of values >= 0")

    @property
    def samples_per_replan(self) -> int:
        return self.replan_samples if self.replan_samples is not None else self.base_problem.n

    @classmethod
    def from_dict(cls, config_dict: Dict[str, Any], base_dir: Path = Path(".")) -> "ScenarioConfig":
        """Build a scenario from a parsed campaign document.

        Args:
            config_dict: Parsed YAML; ``base_problem`` is a problem-file path
            base_dir: Directory relative paths are resolved against

        Raises:
            ProblemValidationError: Missing, unknown or invalid field
        """
        if not isinstance(config_dict, dict):
            raise ProblemValidationError("$", "campaign file must be a mapping")
        values = dict(config_dict)
        if "lambda" in values:
            values["lambda_"] = values.pop("lambda")
        known = {f.name for f in fields(cls)} - {"base_problem_path"}
        unknown = sorted(set(values) - known)
        if unknown:
            raise ProblemValidationError(unknown[0], "unknown field")
        if "base_problem" not in values:
            raise ProblemValidationError("base_problem", "missing field")

        problem_path = Path(values["base_problem"])
        if not problem_path.is_absolute():
            problem_path = Path(base_dir) / problem_path
        if not problem_path.exists():
            raise ProblemValidationError("base_problem", f"file not found: {problem_path}")
        values["base_problem"] = Problem.load(problem_path)
        values["base_problem_path"] = str(problem_path)
        try:
            return cls(**values)
        except TypeError as e:
            raise ProblemValidationError("$", str(e)) from e

    @classmethod
    def from_yaml(cls, config_path: str) -> "ScenarioConfig":
        """Load a scenario from a campaign YAML file.

        Args:
            config_path: Path to YAML configuration file

        Returns:
            ScenarioConfig instance
        """
        try:
            with open(config_path, "r") as f:
                config_dict = yaml.safe_load(f)
        except yaml.YAMLError as e:
            raise ProblemValidationError("$", f"invalid YAML: {e}") from e

        return cls.from_dict(config_dict, Path(config_path).parent)

    def with_cell(self, latency: float, rate: float, sigma: float) -> "ScenarioConfig":
        """Copy with one campaign cell's latency, collapse rate and disturbance."""
        values = {f.name: getattr(self, f.name) for f in fields(self)}
        values.update(replan_latency=latency, collapse_rate=rate, disturbance_sigma=sigma)
        return ScenarioConfig(**values)

    def to_dict(self) -> Dict[str, Any]:
        """Convert configuration to dictionary.

        Returns:
            Configuration as dictionary (the base problem by path when known)
        """
        out = {f.name: getattr(self, f.name) for f in fields(self)}
        out.pop("base_problem_path")
        out["base_problem"] = self.base_problem_path or self.base_problem.to_dict()
        out["lambda"] = out.pop("lambda_")
        return out

    def save(self, output_path: str) -> None:
        """Save configuration to YAML file.

        Args:
            output_path: Path to output YAML file
        """
        Path(output_path).parent.mkdir(parents=True, exist_ok=True)

        with open(output_path, "w") as f:
            yaml.dump(self.to_dict(), f, default_flow_style=False)
