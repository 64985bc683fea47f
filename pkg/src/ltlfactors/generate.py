"""Seeded random PNF formulas for property testing."""

from __future__ import annotations

import random
from typing import Sequence

from .syntax import (FF, TT, Always, And, Atom, Eventually, Formula, Next, Not,
                     Or, Release, Until)

UNARY_OPS = (Next, Eventually, Always)
BINARY_OPS = (And, Or, Until, Release)
LITERAL_WEIGHT = 0.8


def random_leaf(rng: random.Random, aps: Sequence[str]) -> Formula:
    if rng.random() < LITERAL_WEIGHT:
        a = Atom(rng.choice(list(aps)))
        return Not(a) if rng.random() < 0.5 else a
    return rng.choice((TT, FF))


def random_formula_of_size(rng: random.Random, n: int, aps: Sequence[str]) -> Formula:
    """A PNF formula of exactly size ``n``."""
    if n <= 1:
        return random_leaf(rng, aps)
    ops = UNARY_OPS + (BINARY_OPS if n >= 3 else ())
    op = rng.choice(ops)
    if op in UNARY_OPS:
        return op(random_formula_of_size(rng, n - 1, aps))
    k = rng.randint(1, n - 2)
    return op(random_formula_of_size(rng, k, aps), random_formula_of_size(rng, n - 1 - k, aps))


def random_formula(rng: random.Random, max_size: int, aps: Sequence[str] = ("p", "q")) -> Formula:
    """Size drawn uniformly from ``1..max_size``, then the shape."""
    return random_formula_of_size(rng, rng.randint(1, max_size), aps)


def corpus(seed: int, count: int, max_size: int, aps: Sequence[str] = ("p", "q")) -> list[Formula]:
    rng = random.Random(seed)
    return [random_formula(rng, max_size, aps) for _ in range(count)]
