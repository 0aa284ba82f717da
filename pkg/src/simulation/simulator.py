"""Planning-in-the-loop simulation of a point robot in a collapsing environment.

A speed-bounded point robot tracks its current polyline plan at a fixed
control rate. Box obstacles appear by a Poisson process, the robot position
is disturbed by Gaussian noise every step, and a replan started at time s
becomes the robot's plan at s + latency. Planner latency is a configuration
value, not a measured time, so outcomes depend only on the seed.
"""

import math
from dataclasses import dataclass
from enum import Enum
from multiprocessing import Pool
from typing import List, Optional, Sequence, Tuple, Union

import numpy as np
import pandas as pd
from tqdm import tqdm

from src.evaluation.metrics import PlanningMetrics
from src.geometry.space import Aabb, State, point_free
from src.sampling.sampler import SampleSource
from src.simulation.config import ScenarioConfig
from src.utils.errors import PlanningInputError
from src.utils.logging_utils import get_logger

logger = get_logger("simulation")

# Noise draws are flagged above this many sigmas and scaled down to the hard cap
NOISE_FLAG_SIGMAS = 3.0
NOISE_CAP_SIGMAS = 6.0
MAX_PLACEMENT_ATTEMPTS = 1000
_TIME_EPS = 1e-9

TrialSeed = Union[int, np.random.SeedSequence]


class TrialResult(str, Enum):
    REACHED_GOAL = "reached_goal"
    COLLIDED = "collided"
    TIMED_OUT = "timed_out"

    def __str__(self) -> str:
        return self.value


@dataclass
class TrialOutcome:
    """How one trial ended.

    Attributes:
        result: reached_goal, collided or timed_out
        time_elapsed: Simulated seconds at the end of the trial
        replans: Replans completed after the initial plan
        path_travelled: Robot states, one per control step, starting at init
        spawned: Obstacles spawned during the trial
        motion_bound_exceedances: Steps whose noise exceeded the flag threshold
        max_step: Largest per-step displacement
    """

    result: TrialResult
    time_elapsed: float
    replans: int
    path_travelled: Tuple[State, ...]
    spawned: int = 0
    motion_bound_exceedances: int = 0
    max_step: float = 0.0

    @property
    def reached_goal(self) -> bool:
        return self.result == TrialResult.REACHED_GOAL


def spawn_schedule(rate: float, horizon: float, rng: np.random.Generator) -> np.ndarray:
    """Arrival times in [0, horizon] of a Poisson process.

    Gaps are unit-rate exponentials divided by ``rate``, so one stream replays
    the same arrival order at every rate, only compressed in time.
    """
    if rate <= 0.0:
        return np.empty(0)
    times = []
    t = rng.standard_exponential() / rate
    while t <= horizon:
        times.append(t)
        t += rng.standard_exponential() / rate
    return np.asarray(times)


def advance_along(
    position: np.ndarray, plan: np.ndarray, index: int, distance: float
) -> Tuple[np.ndarray, int]:
    """Move up to ``distance`` toward ``plan[index]`` and the waypoints after it.

    Returns:
        Tuple of (new position, index of the next waypoint still ahead)
    """
    pos = position.copy()
    while distance > 0.0 and index < len(plan):
        delta = plan[index] - pos
        gap = float(np.linalg.norm(delta))
        if gap <= distance:
            pos = plan[index].copy()
            distance -= gap
            index += 1
        else:
            pos = pos + delta * (distance / gap)
            distance = 0.0
    return pos, index


def _trial_streams(trial_seed: TrialSeed) -> List[np.random.Generator]:
    seq = trial_seed if isinstance(trial_seed, np.random.SeedSequence) else (
        np.random.SeedSequence(trial_seed)
    )
    return [np.random.Generator(np.random.PCG64(child)) for child in seq.spawn(4)]


@dataclass
class _PendingReplan:
    ready_step: int
    plan: Optional[np.ndarray]


class ReplanningSimulation:
    """World state of one trial, advanced one control step per ``update``."""

    def __init__(self, cfg: ScenarioConfig, trial_seed: TrialSeed):
        self.cfg = cfg
        problem = cfg.base_problem
        self.goal = problem.goal
        self.obstacles = problem.obstacles
        self.dimension = problem.dimension
        noise, arrivals, placement, replan = _trial_streams(trial_seed)
        self.noise_rng = noise
        self.placement_rng = placement
        self.replan_rng = replan
        self.arrivals = spawn_schedule(cfg.collapse_rate, cfg.time_limit, arrivals)
        self.next_arrival = 0

        self.position = np.asarray(problem.init.coords, dtype=np.float64)
        self.travelled: List[State] = [problem.init]
        self.step = 0
        self.t = 0.0
        self.status: Optional[TrialResult] = None
        self.plan: Optional[np.ndarray] = None
        self.waypoint = 1
        self.pending: Optional[_PendingReplan] = None
        self.replans = 0
        self.spawned = 0
        self.exceedances = 0
        self.max_step = 0.0

    def is_running(self) -> bool:
        return self.status is None

    def plan_from(self, start: np.ndarray) -> Optional[np.ndarray]:
        """Fresh plan from ``start`` against the current obstacles, or None."""
        seed = int(self.replan_rng.integers(np.iinfo(np.int64).max))
        init = State(tuple(float(c) for c in start))
        if not point_free(init, self.obstacles):
            return None
        problem = self.cfg.base_problem.with_overrides(
            obstacles=self.obstacles,
            init=init,
            n=self.cfg.samples_per_replan,
            sampling=SampleSource.uniform(seed),
            lambda_=self.cfg.lambda_,
        )
        try:
            result = problem.instantiate().run(self.cfg.planner)
        except PlanningInputError as e:
            logger.debug(f"t={self.t:.3f}: replan rejected ({e})")
            return None
        if not result.succeeded:
            logger.debug(f"t={self.t:.3f}: replan failed ({result.status})")
            return None
        return np.array([s.coords for s in result.path], dtype=np.float64)

    def start(self) -> None:
        """Compute the initial plan at t = 0; the trial times out at once without one."""
        self.plan = self.plan_from(self.position)
        if self.plan is None:
            self.status = TrialResult.TIMED_OUT
            return
        if self.goal.contains(self.travelled[0]):
            self.status = TrialResult.REACHED_GOAL
            return
        self._start_replan()

    def _start_replan(self) -> None:
        # The replan lands on the first control step at or after t + latency, and
        # starts from where the robot is expected to be at that step
        dt = self.cfg.control_dt
        ready_step = max(
            self.step + 1, math.ceil((self.t + self.cfg.replan_latency) / dt - _TIME_EPS)
        )
        travel = self.cfg.robot_speed * (ready_step - self.step) * dt
        predicted, _ = advance_along(self.position, self.plan, self.waypoint, travel)
        self.pending = _PendingReplan(ready_step, self.plan_from(predicted))

    def _spawn(self) -> None:
        half = np.asarray(self.cfg.spawn_box_size, dtype=np.float64) / 2.0
        for _ in range(MAX_PLACEMENT_ATTEMPTS):
            center = self.placement_rng.random(self.dimension)
            if not point_free(State(tuple(center)), self.obstacles):
                continue
            lo, hi = center - half, center + half
            if np.all((lo <= self.position) & (self.position <= hi)):
                continue
            self.obstacles = self.obstacles.with_boxes([Aabb(tuple(lo), tuple(hi))])
            self.spawned += 1
            return
        logger.debug(f"t={self.t:.3f}: no free spawn position found")

    def _noise(self) -> np.ndarray:
        sigma = self.cfg.disturbance_sigma
        if sigma == 0.0:
            return np.zeros(self.dimension)
        draw = self.noise_rng.normal(0.0, sigma, self.dimension)
        norm = float(np.linalg.norm(draw))
        if norm > NOISE_FLAG_SIGMAS * sigma:
            self.exceedances += 1
            logger.debug(f"t={self.t:.3f}: noise {norm:.4g} exceeds {NOISE_FLAG_SIGMAS} sigma")
        if norm > NOISE_CAP_SIGMAS * sigma:
            draw *= NOISE_CAP_SIGMAS * sigma / norm
        return draw

    def update(self) -> None:
        cfg = self.cfg
        self.step += 1
        self.t = self.step * cfg.control_dt

        while (
            self.next_arrival < len(self.arrivals)
            and self.arrivals[self.next_arrival] <= self.t
        ):
            self._spawn()
            self.next_arrival += 1

        before = self.position
        moved, self.waypoint = advance_along(
            self.position, self.plan, self.waypoint, cfg.robot_speed * cfg.control_dt
        )
        self.position = np.clip(moved + self._noise(), 0.0, 1.0)
        self.max_step = max(self.max_step, float(np.linalg.norm(self.position - before)))
        state = State(tuple(self.position))
        self.travelled.append(state)

        if not point_free(state, self.obstacles):
            self.status = TrialResult.COLLIDED
        elif self.goal.contains(state):
            self.status = TrialResult.REACHED_GOAL
        elif self.t >= cfg.time_limit - _TIME_EPS:
            self.status = TrialResult.TIMED_OUT
        elif self.pending is not None and self.pending.ready_step <= self.step:
            if self.pending.plan is not None:
                self.plan = self.pending.plan
                self.waypoint = 1
            self.replans += 1
            self._start_replan()

    def outcome(self) -> TrialOutcome:
        return TrialOutcome(
            result=self.status,
            time_elapsed=self.t,
            replans=self.replans,
            path_travelled=tuple(self.travelled),
            spawned=self.spawned,
            motion_bound_exceedances=self.exceedances,
            max_step=self.max_step,
        )


def run_trial(cfg: ScenarioConfig, trial_seed: TrialSeed) -> TrialOutcome:
    """Simulate one trial to goal arrival, collision or timeout.

    Args:
        cfg: Scenario
        trial_seed: Integer or SeedSequence all of the trial's randomness derives from

    Returns:
        TrialOutcome; identical for identical (cfg, trial_seed)
    """
    sim = ReplanningSimulation(cfg, trial_seed)
    sim.start()
    while sim.is_running():
        sim.update()

    outcome = sim.outcome()
    if outcome.motion_bound_exceedances:
        logger.warning(
            f"{outcome.motion_bound_exceedances} step(s) exceeded the "
            f"{NOISE_FLAG_SIGMAS:g} sigma motion bound (sigma={cfg.disturbance_sigma})"
        )
    logger.debug(
        f"Trial finished: {outcome.result} t={outcome.time_elapsed:.2f}s "
        f"replans={outcome.replans} spawned={outcome.spawned}"
    )
    return outcome


def trial_seed(cfg: ScenarioConfig, trial_index: int) -> np.random.SeedSequence:
    """Seed of trial ``trial_index``; every campaign cell reuses it."""
    return np.random.SeedSequence([cfg.seed, trial_index])


def _run_task(task: Tuple[ScenarioConfig, int]) -> bool:
    cfg, trial_index = task
    return run_trial(cfg, trial_seed(cfg, trial_index)).reached_goal


def run_campaign(
    cfg: ScenarioConfig,
    latencies: Optional[Sequence[float]] = None,
    rates: Optional[Sequence[float]] = None,
    sigmas: Optional[Sequence[float]] = None,
    progress: bool = False,
) -> pd.DataFrame:
    """Success rates over the latency x collapse-rate x disturbance grid.

    Args:
        cfg: Scenario; its campaign axes are used where arguments are None
        latencies: Replan latencies (seconds)
        rates: Collapse rates (obstacles per second)
        sigmas: Disturbance standard deviations
        progress: Show a tqdm bar (single-process runs only)

    Returns:
        DataFrame with columns latency_s, collapse_rate, sigma, trials,
        successes, success_rate
    """
    latencies = list(cfg.latencies if latencies is None else latencies)
    rates = list(cfg.rates if rates is None else rates)
    sigmas = list(cfg.sigmas if sigmas is None else sigmas)
    cells = [(lat, rate, sig) for lat in latencies for rate in rates for sig in sigmas]
    tasks = [
        (cfg.with_cell(lat, rate, sig), k) for lat, rate, sig in cells for k in range(cfg.trials)
    ]
    logger.info(f"Campaign: {len(cells)} cells x {cfg.trials} trials on {cfg.workers} worker(s)")

    if cfg.workers > 1:
        with Pool(processes=cfg.workers) as pool:
            successes = pool.map(_run_task, tasks, chunksize=max(1, cfg.trials // cfg.workers))
    else:
        successes = [_run_task(t) for t in tqdm(tasks, desc="Trials", disable=not progress)]

    rows = []
    for c, (lat, rate, sig) in enumerate(cells):
        outcomes = successes[c * cfg.trials : (c + 1) * cfg.trials]
        wins = sum(outcomes)
        rows.append(
            {
                "latency_s": lat,
                "collapse_rate": rate,
                "sigma": sig,
                "trials": cfg.trials,
                "successes": wins,
                "success_rate": PlanningMetrics.success_rate(outcomes),
            }
        )
    return pd.DataFrame(rows)
