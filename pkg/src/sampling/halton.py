"""Halton low-discrepancy sequence."""

import itertools
import math
from functools import lru_cache
from typing import Iterator, List

from src.geometry.space import State
from src.utils.errors import InvalidInputError


def generate_primes() -> Iterator[int]:
    """Incremental sieve yielding 2, 3, 5, 7, ..."""
    composites = {}
    yield 2
    for q in itertools.islice(itertools.count(3), 0, None, 2):
        p = composites.pop(q, None)
        if p is None:
            composites[q * q] = q
            yield q
        else:
            x = q + 2 * p
            while x in composites:
                x += 2 * p
            composites[x] = p


@lru_cache(maxsize=None)
def first_primes(count: int) -> List[int]:
    return list(itertools.islice(generate_primes(), count))


def halton(index: int, base: int) -> float:
    """Radical inverse of ``index`` in ``base`` (1-based, so the result lies in (0, 1)).

    Args:
        index: Sequence index, >= 1
        base: Prime base, >= 2

    Returns:
        The reflected base-``base`` expansion of ``index``
    """
    if index < 1:
        raise InvalidInputError(f"Halton index must be >= 1, got {index}")
    if base < 2:
        raise InvalidInputError(f"Halton base must be >= 2, got {base}")
    f, r = 1.0, 0.0
    while index > 0:
        f /= base
        r += f * (index % base)
        index //= base
    return r


def halton_point(index: int, d: int, with_heading: bool = False) -> State:
    """The ``index``-th Halton point in [0, 1]^d.

    Coordinate k uses the k-th prime. When ``with_heading`` is set the heading
    uses the (d+1)-th prime, scaled to [0, 2*pi).
    """
    if d < 1:
        raise InvalidInputError(f"Dimension must be >= 1, got {d}")
    primes = first_primes(d + 1)
    coords = tuple(halton(index, p) for p in primes[:d])
    heading = 2.0 * math.pi * halton(index, primes[d]) if with_heading else None
    return State(coords, heading)
