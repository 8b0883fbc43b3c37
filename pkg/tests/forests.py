"""Random forest generators shared by codec and pipeline tests."""

import random

from eudsplit import DepForest
from eudsplit.graph import find_cycle

RELATIONS = ("nsubj", "obj", "det", "amod", "obl", "advmod", "conj", "root", "mark")


def random_heads(n: int, rng: random.Random) -> list[int]:
    heads = []
    for d in range(1, n + 1):
        h = rng.randint(0, n)
        while h == d:
            h = rng.randint(0, n)
        heads.append(h)
    return heads


def has_same_direction_crossing(heads: list[int]) -> bool:
    left = sorted((d, h) for d, h in enumerate(heads, start=1) if h > d)
    right = sorted((h, d) for d, h in enumerate(heads, start=1) if 0 < h < d)
    for spans in (left, right):
        for i, (l1, r1) in enumerate(spans):
            for l2, r2 in spans[i + 1:]:
                if l1 < l2 < r1 < r2:
                    return True
    return False


def random_forest(n: int, rng: random.Random) -> DepForest:
    """A uniform random forest on n tokens (rejection on cyclic head picks)."""
    while True:
        heads = random_heads(n, rng)
        if find_cycle(heads) is None:
            return DepForest(tuple(
                (h, "root" if h == 0 else rng.choice(RELATIONS)) for h in heads
            ))


def random_encodable_forest(n: int, rng: random.Random) -> DepForest:
    """Uniform over the forests the bracket encoding can express.

    Rejection sampling: uniform forests, conditioned on having no two
    same-direction arcs whose spans strictly interleave.
    """
    while True:
        heads = random_heads(n, rng)
        if find_cycle(heads) is not None or has_same_direction_crossing(heads):
            continue
        return DepForest(tuple(
            (h, "root" if h == 0 else rng.choice(RELATIONS)) for h in heads
        ))
