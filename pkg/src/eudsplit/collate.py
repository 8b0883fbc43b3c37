"""Merge predicted forests back into one enhanced graph.

Edges are keyed by ``(head, dependent)``; when several trees propose an arc
for the same pair, the label of the first tree in ``tree_order`` wins.
Labels are relexicalized against the sentence on the way in.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Mapping

from .conllu import Sentence
from .graph import DepForest, EudEdge, EudGraph
from .labels import WarnFn, relexicalize
from .splitter import TREE_NAMES


@dataclass(frozen=True)
class CollationPolicy:
    """How forest arcs are merged.

    ``drop_extra_roots`` suppresses ``(0, ...)`` arcs from every tree after
    the first unless the token has no collected head at all; repairs and the
    faithful-mode root fallbacks otherwise leak spurious root edges into the
    graph.  ``restrict_to_phenomenon`` lets non-first trees contribute only
    arcs that differ from the first tree's arc for the same token.
    """

    tree_order: tuple[str, ...] = TREE_NAMES
    drop_extra_roots: bool = False
    restrict_to_phenomenon: bool = False

    def __post_init__(self):
        object.__setattr__(self, "tree_order", tuple(self.tree_order))
        if not self.tree_order:
            raise ValueError("tree_order must name at least one tree")
        if len(set(self.tree_order)) != len(self.tree_order):
            raise ValueError("tree_order contains duplicates")
        unknown = [t for t in self.tree_order if t not in TREE_NAMES]
        if unknown:
            raise ValueError(f"unknown tree names {unknown}; expected {TREE_NAMES}")


def collate(
    forests: Mapping[str, DepForest],
    sentence: Sentence,
    policy: CollationPolicy = CollationPolicy(),
    warn: WarnFn | None = None,
) -> EudGraph:
    """Union of the forests' arcs as an enhanced graph, first label winning."""
    first = policy.tree_order[0]
    base = forests[first]
    chosen: dict[tuple[int, int], str] = {}
    has_head: set[int] = set()
    for idx, name in enumerate(policy.tree_order):
        forest = forests[name]
        if forest.n != sentence.n:
            raise ValueError(f"{name} forest length {forest.n} != sentence length {sentence.n}")
        for d in range(1, sentence.n + 1):
            h, label = forest.parent(d)
            if idx > 0 and policy.restrict_to_phenomenon and forest.parent(d) == base.parent(d):
                continue
            if h == 0 and idx > 0 and policy.drop_extra_roots and d in has_head:
                continue
            edge = relexicalize(EudEdge(h, d, label), sentence, warn)
            key = (edge.head, edge.dep)
            if key not in chosen:
                chosen[key] = edge.label
                has_head.add(d)
    return EudGraph(sentence.n, frozenset(
        EudEdge(h, d, label) for (h, d), label in chosen.items()
    ))


def apply_to_sentence(graph: EudGraph, sentence: Sentence) -> Sentence:
    """Copy of the sentence with the graph written into its DEPS column."""
    if graph.n != sentence.n:
        raise ValueError(f"graph size {graph.n} != sentence length {sentence.n}")
    by_dep: dict[int, list[tuple[int, str]]] = {}
    for e in graph.edges:
        by_dep.setdefault(e.dep, []).append((e.head, e.label))
    tokens = tuple(
        replace(tok, deps=tuple(sorted(by_dep.get(tok.id, ()))))
        for tok in sentence.tokens
    )
    return replace(sentence, tokens=tokens)
