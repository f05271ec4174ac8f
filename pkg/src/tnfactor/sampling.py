"""Seeded random grids for self-tests and experiments."""

from __future__ import annotations

import math
import random
from fractions import Fraction

from .generators import GridParams

__all__ = ["random_rational_grid", "random_grid_params", "spread_grid", "spread_grid_params"]


def random_rational_grid(rng: random.Random, n: int, bound: int = 50) -> tuple[Fraction, ...]:
    """``n`` distinct positive rationals, sorted, numerators/denominators <= bound."""
    values: set[Fraction] = set()
    while len(values) < n:
        values.add(Fraction(rng.randint(1, bound), rng.randint(1, bound)))
    return tuple(sorted(values))


def random_grid_params(rng: random.Random, n: int, bound: int = 50) -> GridParams:
    return GridParams(random_rational_grid(rng, n, bound), random_rational_grid(rng, n, bound))


def spread_grid(rng: random.Random, n: int) -> tuple[Fraction, ...]:
    """Geometrically spread positive rationals centred near 1.

    Consecutive ratios lie in [3, 5].  Keeping ``x_i y_j`` on both sides of
    1 keeps the minors of ``[(1 + x_i y_j)^r]`` well away from zero relative
    to their entries, which float sign checks need.
    """
    v = [Fraction(1)]
    for _ in range(n - 1):
        v.append(v[-1] * Fraction(rng.randint(30, 50), 10))
    centre = math.exp(sum(math.log(float(a)) for a in v) / n) * rng.uniform(0.6, 1.6)
    c = Fraction(centre).limit_denominator(20)
    return tuple(a / c for a in v)


def spread_grid_params(rng: random.Random, n: int) -> GridParams:
    return GridParams(spread_grid(rng, n), spread_grid(rng, n))
