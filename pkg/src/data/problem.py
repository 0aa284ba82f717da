"""Planning problems: the problem file format and what is built from it."""

import json
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Any, Dict, Optional, Sequence

from src.data.validator import SCHEMA, ProblemValidator
from src.geometry.space import Aabb, GoalRegion, ObstacleSet, State, free_measure_upper_bound
from src.graph.cache import cache_file_name, graph_cache_key, load_graph, save_graph
from src.graph.neighbors import NeighborGraph, build_neighbor_graph
from src.graph.radius import RadiusParams, connection_radius
from src.planning.callbacks import PlannerCallback
from src.planning.dijkstra import dijkstra_oracle
from src.planning.fmt import fmt_plan
from src.planning.gmt import GmtParams, gmt_plan
from src.planning.result import PlanResult
from src.sampling.sampler import SampleSet, SampleSource, sample_free
from src.steering.models import SteeringModel
from src.utils.errors import InvalidInputError, ProblemValidationError
from src.utils.logging_utils import get_logger

logger = get_logger("data.problem")

INIT_INDEX = 0


def _box_to_dict(box: Aabb) -> Dict[str, Any]:
    return {"lo": list(box.lo), "hi": list(box.hi)}


@dataclass(frozen=True)
class Problem:
    """A planning query together with its default run parameters.

    Attributes:
        steering: Connection model
        obstacles: Box obstacles; their dimension is the problem dimension
        init: Initial state (carries a heading for Dubins problems)
        goal: Goal box
        n: Number of free samples drawn (the initial state is added on top)
        lambda_: Group cost threshold factor
        eta: Radius tuning parameter
        radius_override: Fixed connection radius replacing the formula
        sampling: Candidate source
        description: Free text, e.g. scene provenance
    """

    steering: SteeringModel
    obstacles: ObstacleSet
    init: State
    goal: GoalRegion
    n: int = 2000
    lambda_: float = 0.5
    eta: float = 0.0
    radius_override: Optional[float] = None
    sampling: SampleSource = field(default_factory=SampleSource)
    description: str = ""

    @property
    def dimension(self) -> int:
        return self.obstacles.dimension

    @classmethod
    def from_dict(cls, doc: Dict[str, Any]) -> "Problem":
        """Build a problem from a parsed problem document.

        Raises:
            ProblemValidationError: The document does not follow the schema
        """
        ProblemValidator().check(doc)
        d = doc["dimension"]
        st = doc["steering"]
        if st["kind"] == "dubins_airplane":
            steering = SteeringModel.dubins_airplane(
                st["rho"], st.get("discretization_step"), st.get("planar_cost", False)
            )
        else:
            steering = SteeringModel.euclidean()
        obstacles = ObstacleSet.from_bounds(((b["lo"], b["hi"]) for b in doc["obstacles"]), d)
        init = State(tuple(doc["init"]["coords"]), doc["init"].get("heading"))
        goal = GoalRegion(Aabb(tuple(doc["goal"]["lo"]), tuple(doc["goal"]["hi"])))

        sp = doc["sampling"]
        if sp["kind"] == "halton":
            sampling = SampleSource.halton(sp.get("start_index", 1))
        else:
            sampling = SampleSource.uniform(sp.get("seed", 0))

        return cls(
            steering=steering,
            obstacles=obstacles,
            init=init,
            goal=goal,
            n=doc["n"],
            lambda_=float(doc["lambda"]),
            eta=float(doc["eta"]),
            radius_override=doc.get("radius_override"),
            sampling=sampling,
            description=doc.get("description", ""),
        )

    def to_dict(self) -> Dict[str, Any]:
        if self.steering.is_dubins:
            steering = {
                "kind": self.steering.kind,
                "rho": self.steering.rho,
                "discretization_step": self.steering.discretization_step,
                "planar_cost": self.steering.planar_cost,
            }
        else:
            steering = {"kind": "euclidean"}
        init = {"coords": list(self.init.coords)}
        if self.init.has_heading:
            init["heading"] = self.init.heading
        if self.sampling.kind == "halton":
            sampling = {"kind": "halton", "start_index": self.sampling.start_index}
        else:
            sampling = {"kind": "uniform", "seed": self.sampling.seed}

        doc = {"schema": SCHEMA}
        if self.description:
            doc["description"] = self.description
        doc.update(
            {
                "dimension": self.dimension,
                "steering": steering,
                "obstacles": [_box_to_dict(b) for b in self.obstacles.boxes],
                "init": init,
                "goal": _box_to_dict(self.goal.box),
                "n": self.n,
                "lambda": self.lambda_,
                "eta": self.eta,
                "radius_override": self.radius_override,
                "sampling": sampling,
            }
        )
        return doc

    @classmethod
    def load(cls, path: Path) -> "Problem":
        """Read and validate a problem file.

        Raises:
            ProblemValidationError: Unparseable JSON or schema violation
        """
        try:
            doc = json.loads(Path(path).read_text())
        except json.JSONDecodeError as e:
            raise ProblemValidationError("$", f"invalid JSON ({e.msg} at line {e.lineno})") from e
        return cls.from_dict(doc)

    def save(self, path: Path) -> None:
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(json.dumps(self.to_dict(), indent=2) + "\n")

    def with_overrides(self, **changes: Any) -> "Problem":
        """Copy with some fields replaced (None values are ignored)."""
        return replace(self, **{k: v for k, v in changes.items() if v is not None})

    def sample_set(self) -> SampleSet:
        """Free samples with the initial state planted at index 0."""
        samples = sample_free(
            self.n, self.obstacles, self.goal, self.sampling, with_heading=self.steering.is_dubins
        )
        return samples.with_planted([self.init], self.goal)

    def radius(self, sample_count: int) -> float:
        if self.radius_override is not None:
            return float(self.radius_override)
        params = RadiusParams(
            eta=self.eta,
            d=self.dimension,
            n=sample_count,
            mu_free=free_measure_upper_bound(self.obstacles),
        )
        return connection_radius(params)

    def build_graph(
        self, samples: SampleSet, workers: int = 1, cache_dir: Optional[Path] = None
    ) -> NeighborGraph:
        """Neighbor graph over ``samples``, read from the cache when one matches."""
        r = self.radius(len(samples))
        if cache_dir is None:
            return build_neighbor_graph(samples, self.steering, r, workers=workers)

        key = graph_cache_key(self.to_dict(), len(samples), r, self.steering)
        cache_path = Path(cache_dir) / cache_file_name(key)
        graph = load_graph(cache_path, key, samples, self.steering)
        if graph is None:
            graph = build_neighbor_graph(samples, self.steering, r, workers=workers)
            save_graph(graph, cache_path, key)
        return graph

    def instantiate(self, workers: int = 1, cache_dir: Optional[Path] = None) -> "PlanningInstance":
        """Draw samples and build the neighbor graph.

        Args:
            workers: Threads for graph construction
            cache_dir: Directory of the on-disk graph cache, or None to always build

        Returns:
            PlanningInstance ready to run any planner
        """
        samples = self.sample_set()
        graph = self.build_graph(samples, workers, cache_dir)
        logger.debug(
            f"Instance: {len(samples)} samples, r={graph.radius:.5f}, {graph.edge_count} edges"
        )
        return PlanningInstance(self, samples, graph)

    def plan(self, algo: str = "gmt", workers: int = 1) -> PlanResult:
        return self.instantiate(workers).run(algo, workers)


@dataclass
class PlanningInstance:
    """A problem with its drawn samples and neighbor graph."""

    problem: Problem
    samples: SampleSet
    graph: NeighborGraph

    @property
    def radius(self) -> float:
        return self.graph.radius

    def run(
        self,
        algo: str = "gmt",
        workers: int = 1,
        lambda_: Optional[float] = None,
        callbacks: Sequence[PlannerCallback] = (),
    ) -> PlanResult:
        """Run one planner on this instance.

        Args:
            algo: "gmt", "fmt" or "dijkstra"
            workers: Threads for the GMT neighbor map
            lambda_: Threshold factor overriding the problem's (GMT only)
            callbacks: Planner callbacks (GMT and FMT*)
        """
        p = self.problem
        args = (self.samples, self.graph, p.obstacles, p.goal, INIT_INDEX)
        if algo == "gmt":
            params = GmtParams(lambda_ if lambda_ is not None else p.lambda_, self.graph.radius)
            return gmt_plan(*args, params, workers=workers, callbacks=callbacks)
        if algo == "fmt":
            return fmt_plan(*args, callbacks=callbacks)
        if algo == "dijkstra":
            return dijkstra_oracle(*args)
        raise InvalidInputError(f"Unknown planner: {algo!r}")
