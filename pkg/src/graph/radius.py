"""Connection radius for probabilistic exhaustivity."""

import math
from dataclasses import dataclass

from scipy.special import gamma

from src.utils.errors import InvalidInputError


@dataclass(frozen=True)
class RadiusParams:
    """Inputs of the connection-radius formula.

    Attributes:
        eta: Tuning parameter, >= 0
        d: Dimension, >= 2
        n: Sample count, >= 2
        mu_free: Bound on the measure of free space, in (0, 1]
    """

    eta: float
    d: int
    n: int
    mu_free: float = 1.0

    def __post_init__(self):
        if self.n < 2:
            raise InvalidInputError(f"n must be >= 2 for the radius formula, got {self.n}")
        if self.d < 2:
            raise InvalidInputError(f"d must be >= 2, got {self.d}")
        if self.eta < 0.0:
            raise InvalidInputError(f"eta must be >= 0, got {self.eta}")
        if not 0.0 < self.mu_free <= 1.0:
            raise InvalidInputError(f"mu_free must be in (0, 1], got {self.mu_free}")


def unit_ball_volume(d: int) -> float:
    """Volume of the unit ball in R^d: pi^(d/2) / Gamma(d/2 + 1)."""
    return math.pi ** (d / 2.0) / float(gamma(d / 2.0 + 1.0))


def connection_radius(p: RadiusParams) -> float:
    """r = 4 (1+eta)^(1/d) (1/d)^(1/d) (mu_free/zeta_d)^(1/d) (log n / n)^(1/d)."""
    inv_d = 1.0 / p.d
    return (
        4.0
        * (1.0 + p.eta) ** inv_d
        * (1.0 / p.d) ** inv_d
        * (p.mu_free / unit_ball_volume(p.d)) ** inv_d
        * (math.log(p.n) / p.n) ** inv_d
    )
