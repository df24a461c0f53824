"""Instance generation: exhaustive enumeration and seeded random double posets."""
from __future__ import annotations

import random
from typing import Iterator

from .double_poset import DoublePoset
from .errors import GuardExceeded
from .poset import Poset, all_posets, build_poset

EXHAUSTIVE_MAX_N = 4


def random_poset(n: int, rng: random.Random, keep: float = 0.5) -> Poset:
    """Random linear order, keep each of its relations independently, close transitively."""
    perm = list(range(n))
    rng.shuffle(perm)
    rel = [(perm[i], perm[j]) for i in range(n) for j in range(i + 1, n) if rng.random() < keep]
    return build_poset(n, rel)


def random_double_posets(n: int, count: int, seed: int, keep: float = 0.5) -> Iterator[DoublePoset]:
    rng = random.Random(seed)
    for _ in range(count):
        P = random_poset(n, rng, keep)
        Q = random_poset(n, rng, keep)
        yield DoublePoset(P, Q)


def exhaustive_double_posets(n: int) -> Iterator[DoublePoset]:
    """All ordered pairs of labeled posets on n elements."""
    if n > EXHAUSTIVE_MAX_N:
        raise GuardExceeded(f"exhaustive sweeps are limited to n <= {EXHAUSTIVE_MAX_N}")
    posets = all_posets(n)
    for P in posets:
        for Q in posets:
            yield DoublePoset(P, Q)


def opposite_pair(P: Poset) -> DoublePoset:
    return DoublePoset(P, P.opposite())
