"""Enhanced-dependency graphs and single-head forests over the same tokens.

A graph node may have any number of incoming edges; a forest gives every
token exactly one ``(head, label)`` parent, with head 0 (the artificial root)
allowed for several tokens at once.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

from .conllu import Sentence

ROOT = 0


@dataclass(frozen=True, order=True)
class EudEdge:
    head: int
    dep: int
    label: str

    def __post_init__(self):
        if self.dep < 1:
            raise ValueError(f"edge dependent must be >= 1, got {self.dep}")
        if self.head < 0:
            raise ValueError(f"edge head must be >= 0, got {self.head}")
        if self.head == self.dep:
            raise ValueError(f"self-loop on node {self.dep}")
        if not self.label or any(c.isspace() for c in self.label):
            raise ValueError(f"bad edge label {self.label!r}")


@dataclass(frozen=True)
class EudGraph:
    n: int
    edges: frozenset[EudEdge]

    def __post_init__(self):
        object.__setattr__(self, "edges", frozenset(self.edges))
        for e in self.edges:
            if e.head > self.n or e.dep > self.n:
                raise ValueError(f"edge {e} outside 0..{self.n}")

    def incoming(self, dep: int) -> list[EudEdge]:
        """Edges into ``dep``, sorted for deterministic iteration."""
        return sorted(e for e in self.edges if e.dep == dep)


@dataclass(frozen=True)
class DepForest:
    """Per-token ``(head, label)`` parents; acyclic by construction.

    ``parents[i - 1]`` belongs to token ``i``.  Every parent chain must reach
    node 0.
    """

    parents: tuple[tuple[int, str], ...]

    def __post_init__(self):
        object.__setattr__(self, "parents", tuple(tuple(p) for p in self.parents))
        n = len(self.parents)
        for i, (head, label) in enumerate(self.parents, start=1):
            if not 0 <= head <= n:
                raise ValueError(f"token {i}: head {head} outside 0..{n}")
            if head == i:
                raise ValueError(f"token {i} is its own head")
            if not label:
                raise ValueError(f"token {i}: empty label")
        cycle = find_cycle([h for h, _ in self.parents])
        if cycle:
            raise ValueError(f"cycle through tokens {sorted(cycle)}")

    @property
    def n(self) -> int:
        return len(self.parents)

    def parent(self, i: int) -> tuple[int, str]:
        return self.parents[i - 1]

    def arcs(self) -> Iterator[EudEdge]:
        """All parent arcs, including those to node 0, as edges."""
        for i, (head, label) in enumerate(self.parents, start=1):
            yield EudEdge(head, i, label)


def find_cycle(heads: list[int]) -> set[int] | None:
    """Return the token set of some cycle in a head assignment, or None.

    ``heads[i - 1]`` is the head of token ``i``; 0 terminates a chain.
    """
    n = len(heads)
    state = [0] * (n + 1)  # 0 unseen, 1 on current path, 2 done
    state[0] = 2
    for start in range(1, n + 1):
        if state[start]:
            continue
        path = []
        v = start
        while state[v] == 0:
            state[v] = 1
            path.append(v)
            v = heads[v - 1]
        if state[v] == 1:  # ran into the current path: cycle
            cycle = set(path[path.index(v):])
            return cycle
        for u in path:
            state[u] = 2
    return None


def graph_of_sentence(sentence: Sentence) -> EudGraph:
    """The enhanced graph stored in the sentence's DEPS entries."""
    edges = frozenset(
        EudEdge(head, tok.id, rel)
        for tok in sentence.tokens
        for head, rel in tok.deps
    )
    return EudGraph(n=sentence.n, edges=edges)


def forest_of_sentence(sentence: Sentence) -> DepForest:
    """The forest stored in the sentence's basic HEAD/DEPREL columns."""
    return DepForest(tuple((t.basic_head, t.basic_deprel) for t in sentence.tokens))
