"""Maximum spanning arborescence over a dense score matrix (Chu-Liu-Edmonds).

Recursive contraction: every non-root node greedily keeps its best incoming
arc; each cycle among those choices is contracted to a single node whose
incoming arcs are re-scored by how much they lose relative to the cycle arc
they would displace.  Expanding the recursion keeps all cycle arcs except the
one displaced by the chosen entering arc.

Ties on score are broken toward the lower head index, then the lower
dependent index, so results are deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional

from .graph import find_cycle


@dataclass(frozen=True)
class _Arc:
    head: int
    dep: int
    score: float
    inner: Optional["_Arc"]  # the arc one contraction level down, None at base


def max_arborescence(n: int, arcs: Iterable[tuple[int, int, float]], root: int = 0) -> dict[int, int]:
    """Best head for every node 1..n given ``(head, dep, score)`` candidates.

    Every non-root node must have at least one incoming arc (callers here
    always pass complete matrices).  Maximizes the total score of the
    spanning arborescence rooted at ``root``.
    """
    if n == 0:
        return {}
    base = [_Arc(h, d, s, None) for h, d, s in arcs if d != root and h != d]
    nodes = set(range(n + 1))
    chosen = _solve(nodes, base, root, next_id=n + 1)
    return {arc.dep: arc.head for arc in chosen.values()}


def _better(a: _Arc, b: _Arc | None) -> bool:
    if b is None:
        return True
    if a.score != b.score:
        return a.score > b.score
    return (a.head, a.dep) < (b.head, b.dep)


def _solve(nodes: set[int], arcs: list[_Arc], root: int, next_id: int) -> dict[int, _Arc]:
    best: dict[int, _Arc] = {}
    for arc in arcs:
        if _better(arc, best.get(arc.dep)):
            best[arc.dep] = arc
    missing = [v for v in nodes if v != root and v not in best]
    if missing:
        raise ValueError(f"nodes {missing} have no incoming arc")

    heads = {dep: arc.head for dep, arc in best.items()}
    cycle = _find_cycle_nodes(nodes, heads, root)
    if cycle is None:
        return best

    c = next_id
    contracted: list[_Arc] = []
    for arc in arcs:
        head_in = arc.head in cycle
        dep_in = arc.dep in cycle
        if head_in and dep_in:
            continue
        if dep_in:
            # entering the cycle: displacing best[arc.dep] costs its score
            contracted.append(_Arc(arc.head, c, arc.score - best[arc.dep].score, arc))
        elif head_in:
            contracted.append(_Arc(c, arc.dep, arc.score, arc))
        else:
            contracted.append(_Arc(arc.head, arc.dep, arc.score, arc))

    sub = _solve((nodes - cycle) | {c}, contracted, root, next_id + 1)

    result: dict[int, _Arc] = {}
    for dep, arc in sub.items():
        inner = arc.inner
        assert inner is not None
        if dep == c:
            result[inner.dep] = inner  # the displaced cycle node's new arc
            for v in cycle:
                if v != inner.dep:
                    result[v] = best[v]
        else:
            result[inner.dep] = inner
    return result


def _find_cycle_nodes(nodes: set[int], heads: dict[int, int], root: int) -> set[int] | None:
    # remap to a dense 1..m head list so graph.find_cycle applies
    order = sorted(v for v in nodes if v != root)
    index = {v: i + 1 for i, v in enumerate(order)}
    dense = [0] * len(order)
    for v in order:
        h = heads[v]
        dense[index[v] - 1] = 0 if h == root else index[h]
    cycle = find_cycle(dense)
    if cycle is None:
        return None
    return {order[i - 1] for i in cycle}
