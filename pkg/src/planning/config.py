"""Planner run configuration management."""

from dataclasses import dataclass, field, fields
from pathlib import Path
from typing import Dict, Any, List, Optional
import yaml

ALGORITHMS = ("gmt", "fmt", "dijkstra")


@dataclass
class PlannerConfig:
    """Planner choice and parameters."""

    algo: str = "gmt"
    lambda_: float = 0.5
    eta: float = 0.0
    radius_override: Optional[float] = None
    workers: int = 1

    def __post_init__(self):
        if self.algo not in ALGORITHMS:
            raise ValueError(f"planner.algo must be one of {ALGORITHMS}, got {self.algo!r}")
        if self.workers < 1:
            raise ValueError(f"planner.workers must be >= 1, got {self.workers}")


@dataclass
class SamplingConfig:
    """Sample count and candidate source."""

    n: int = 2000
    kind: str = "halton"
    seed: int = 0
    start_index: int = 1


@dataclass
class LoggingConfig:
    """Logging configuration."""

    log_level: str = "INFO"
    log_dir: Optional[str] = "outputs/logs"


@dataclass
class BenchmarkConfig:
    """Suboptimality, scaling and comparison sweeps."""

    scenes: List[str] = field(
        default_factory=lambda: [
            "scenes/rectangles_2d.json",
            "scenes/rectangles_3d.json",
            "scenes/maze_3d.json",
        ]
    )
    lambdas: List[float] = field(default_factory=lambda: [0.2, 0.5, 1.0])
    n: int = 5000
    seeds: int = 50
    scaling_scene: str = "scenes/maze_3d.json"
    scaling_sample_counts: List[int] = field(default_factory=lambda: [1000, 2000, 5000, 10000])
    refinement_factors: List[int] = field(default_factory=lambda: [1, 10])
    repetitions: int = 5
    output_dir: str = "outputs/benchmarks"


def _section(cls, values: Optional[Dict[str, Any]], name: str, renames: Dict[str, str] = None):
    values = dict(values or {})
    for src_key, dst_key in (renames or {}).items():
        if src_key in values:
            values[dst_key] = values.pop(src_key)
    known = {f.name for f in fields(cls)}
    unknown = sorted(set(values) - known)
    if unknown:
        raise ValueError(f"Unknown key(s) in section '{name}': {', '.join(unknown)}")
    return cls(**values)


@dataclass
class PlannerRunConfig:
    """Complete configuration for planning runs and benchmarks."""

    planner: PlannerConfig = field(default_factory=PlannerConfig)
    sampling: SamplingConfig = field(default_factory=SamplingConfig)
    logging: LoggingConfig = field(default_factory=LoggingConfig)
    benchmark: BenchmarkConfig = field(default_factory=BenchmarkConfig)

    @classmethod
    def from_dict(cls, config_dict: Dict[str, Any]) -> "PlannerRunConfig":
        config_dict = config_dict or {}
        unknown = sorted(set(config_dict) - {"planner", "sampling", "logging", "benchmark"})
        if unknown:
            raise ValueError(f"Unknown section(s): {', '.join(unknown)}")

        return cls(
            planner=_section(
                PlannerConfig, config_dict.get("planner"), "planner", {"lambda": "lambda_"}
            ),
            sampling=_section(SamplingConfig, config_dict.get("sampling"), "sampling"),
            logging=_section(LoggingConfig, config_dict.get("logging"), "logging"),
            benchmark=_section(BenchmarkConfig, config_dict.get("benchmark"), "benchmark"),
        )

    @classmethod
    def from_yaml(cls, config_path: str) -> "PlannerRunConfig":
        """Load configuration from YAML file.

        Args:
            config_path: Path to YAML configuration file

        Returns:
            PlannerRunConfig instance

        Raises:
            ValueError: Malformed YAML, unknown section or key, invalid value
        """
        with open(config_path, "r") as f:
            try:
                config_dict = yaml.safe_load(f)
            except yaml.YAMLError as e:
                raise ValueError(f"Invalid YAML in {config_path}: {e}") from e

        return cls.from_dict(config_dict)

    def to_dict(self) -> Dict[str, Any]:
        """Convert configuration to dictionary.

        Returns:
            Configuration as dictionary
        """
        planner = dict(self.planner.__dict__)
        planner["lambda"] = planner.pop("lambda_")
        return {
            "planner": planner,
            "sampling": dict(self.sampling.__dict__),
            "logging": dict(self.logging.__dict__),
            "benchmark": dict(self.benchmark.__dict__),
        }

    def save(self, output_path: str) -> None:
        """Save configuration to YAML file.

        Args:
            output_path: Path to output YAML file
        """
        Path(output_path).parent.mkdir(parents=True, exist_ok=True)

        with open(output_path, "w") as f:
            yaml.dump(self.to_dict(), f, default_flow_style=False)
