"""Planar Dubins shortest paths over the six words LSL, RSR, LSR, RSL, RLR, LRL.

Word functions work in the normalized frame (turning radius 1, start at the
origin, chord along +x) and return the three segment parameters (t, p, q):
turn angles in radians for L/R segments, length for S segments.
"""

import math
from dataclasses import dataclass
from typing import Callable, Dict, List, Optional, Tuple

TWO_PI = 2.0 * math.pi
# Segment parameters this close to a full turn are treated as zero
_WRAP_TOL = 1e-10

Pose = Tuple[float, float, float]
WordParams = Optional[Tuple[float, float, float]]


def mod2pi(theta: float) -> float:
    """Wrap an angle into [0, 2*pi)."""
    wrapped = theta - TWO_PI * math.floor(theta / TWO_PI)
    if wrapped >= TWO_PI - _WRAP_TOL:
        return 0.0
    return wrapped


def _lsl(alpha: float, beta: float, d: float) -> WordParams:
    sa, sb, ca, cb = math.sin(alpha), math.sin(beta), math.cos(alpha), math.cos(beta)
    c_ab = math.cos(alpha - beta)
    p_squared = 2.0 + d * d - 2.0 * c_ab + 2.0 * d * (sa - sb)
    if p_squared < 0.0:
        return None
    tmp = math.atan2(cb - ca, d + sa - sb)
    return mod2pi(tmp - alpha), math.sqrt(p_squared), mod2pi(beta - tmp)


def _rsr(alpha: float, beta: float, d: float) -> WordParams:
    sa, sb, ca, cb = math.sin(alpha), math.sin(beta), math.cos(alpha), math.cos(beta)
    c_ab = math.cos(alpha - beta)
    p_squared = 2.0 + d * d - 2.0 * c_ab + 2.0 * d * (sb - sa)
    if p_squared < 0.0:
        return None
    tmp = math.atan2(ca - cb, d - sa + sb)
    return mod2pi(alpha - tmp), math.sqrt(p_squared), mod2pi(tmp - beta)


def _lsr(alpha: float, beta: float, d: float) -> WordParams:
    sa, sb, ca, cb = math.sin(alpha), math.sin(beta), math.cos(alpha), math.cos(beta)
    c_ab = math.cos(alpha - beta)
    p_squared = -2.0 + d * d + 2.0 * c_ab + 2.0 * d * (sa + sb)
    if p_squared < 0.0:
        return None
    p = math.sqrt(p_squared)
    tmp = math.atan2(-ca - cb, d + sa + sb) - math.atan2(-2.0, p)
    return mod2pi(tmp - alpha), p, mod2pi(tmp - beta)


def _rsl(alpha: float, beta: float, d: float) -> WordParams:
    sa, sb, ca, cb = math.sin(alpha), math.sin(beta), math.cos(alpha), math.cos(beta)
    c_ab = math.cos(alpha - beta)
    p_squared = -2.0 + d * d + 2.0 * c_ab - 2.0 * d * (sa + sb)
    if p_squared < 0.0:
        return None
    p = math.sqrt(p_squared)
    tmp = math.atan2(ca + cb, d - sa - sb) - math.atan2(2.0, p)
    return mod2pi(alpha - tmp), p, mod2pi(beta - tmp)


def _rlr(alpha: float, beta: float, d: float) -> WordParams:
    sa, sb, ca, cb = math.sin(alpha), math.sin(beta), math.cos(alpha), math.cos(beta)
    c_ab = math.cos(alpha - beta)
    tmp = (6.0 - d * d + 2.0 * c_ab + 2.0 * d * (sa - sb)) / 8.0
    if abs(tmp) > 1.0:
        return None
    p = mod2pi(TWO_PI - math.acos(tmp))
    t = mod2pi(alpha - math.atan2(ca - cb, d - sa + sb) + p / 2.0)
    return t, p, mod2pi(alpha - beta - t + p)


def _lrl(alpha: float, beta: float, d: float) -> WordParams:
    sa, sb, ca, cb = math.sin(alpha), math.sin(beta), math.cos(alpha), math.cos(beta)
    c_ab = math.cos(alpha - beta)
    tmp = (6.0 - d * d + 2.0 * c_ab + 2.0 * d * (sb - sa)) / 8.0
    if abs(tmp) > 1.0:
        return None
    p = mod2pi(TWO_PI - math.acos(tmp))
    t = mod2pi(-alpha - math.atan2(ca - cb, d + sa - sb) + p / 2.0)
    return t, p, mod2pi(beta - alpha - t + p)


WORDS: Dict[str, Callable[[float, float, float], WordParams]] = {
    "LSL": _lsl,
    "RSR": _rsr,
    "LSR": _lsr,
    "RSL": _rsl,
    "RLR": _rlr,
    "LRL": _lrl,
}


def advance(pose: Pose, segment: str, param: float, rho: float) -> Pose:
    """Pose reached after driving one segment of a word from ``pose``.

    Args:
        pose: (x, y, heading)
        segment: "L", "R" or "S"
        param: Turn angle for L/R, normalized length for S
        rho: Turning radius
    """
    x, y, th = pose
    if segment == "L":
        return (
            x + rho * (math.sin(th + param) - math.sin(th)),
            y - rho * (math.cos(th + param) - math.cos(th)),
            th + param,
        )
    if segment == "R":
        return (
            x + rho * (math.sin(th) - math.sin(th - param)),
            y + rho * (math.cos(th - param) - math.cos(th)),
            th - param,
        )
    return (x + rho * param * math.cos(th), y + rho * param * math.sin(th), th)


@dataclass(frozen=True)
class DubinsPath:
    """Shortest planar Dubins path between two poses."""

    start: Pose
    word: str
    params: Tuple[float, float, float]
    rho: float

    @property
    def length(self) -> float:
        return self.rho * sum(self.params)

    def end_pose(self) -> Pose:
        pose = self.start
        for segment, param in zip(self.word, self.params):
            pose = advance(pose, segment, param, self.rho)
        return pose

    def sample(self, step: float) -> List[Tuple[Pose, float]]:
        """Poses along the path at most ``step`` apart in arc length.

        Returns:
            (pose, arc length from start) pairs, start and end included
        """
        points: List[Tuple[Pose, float]] = [(self.start, 0.0)]
        seg_start = self.start
        travelled = 0.0
        for segment, param in zip(self.word, self.params):
            arc = self.rho * param
            if arc <= 0.0:
                continue
            pieces = max(1, math.ceil(arc / step))
            for k in range(1, pieces + 1):
                frac = k / pieces
                pose = advance(seg_start, segment, param * frac, self.rho)
                points.append((pose, travelled + arc * frac))
            seg_start = advance(seg_start, segment, param, self.rho)
            travelled += arc
        return points


def shortest_path(start: Pose, end: Pose, rho: float) -> DubinsPath:
    """Minimum-length word among the six Dubins words.

    Ties between words are broken by the order of ``WORDS``.
    """
    dx = end[0] - start[0]
    dy = end[1] - start[1]
    d = math.hypot(dx, dy) / rho
    theta = mod2pi(math.atan2(dy, dx)) if d > 0.0 else 0.0
    alpha = mod2pi(start[2] - theta)
    beta = mod2pi(end[2] - theta)

    best_word, best_params, best_length = None, None, math.inf
    for word, solve in WORDS.items():
        params = solve(alpha, beta, d)
        if params is None:
            continue
        length = sum(params)
        if length < best_length:
            best_word, best_params, best_length = word, params, length
    if best_word is None:
        raise ArithmeticError(f"No Dubins word solved {start} -> {end}")
    return DubinsPath(start, best_word, best_params, rho)
