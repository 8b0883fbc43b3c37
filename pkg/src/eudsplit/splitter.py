"""Decompose an enhanced graph into four single-head forests.

The basic forest keeps the enhanced edges that mirror the basic tree; the
relative, conjunct and control forests start from a copy of it and re-parent
the tokens their phenomenon covers (relative pronouns and their referents,
conjuncts with a propagated relation, shared subjects under clausal
complements).  Any cycle introduced by re-parenting is broken with a maximum
arborescence over two-tier scores; tokens whose arc the repair replaces are
re-attached to ``(0, root)``.

``mode="faithful"`` keeps two quirks of the original procedure: relative
pronouns are excluded from the basic forest (they surface as extra roots),
and the control rule only fires for ``xcomp``.  ``mode="fixed"`` keeps the
``ref`` arc in the basic forest, moves the referent's extra subject arc into
the relative forest, and lets the control rule fire for ``ccomp`` too.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Collection

from .cle import max_arborescence
from .conllu import Sentence
from .graph import DepForest, EudGraph, find_cycle
from .labels import WarnFn, base_relation, delexicalize

TREE_NAMES = ("basic", "relative", "conjunct", "control")

SUBJECT_BASES = frozenset({"nsubj", "csubj"})

MODES = ("faithful", "fixed")


@dataclass(frozen=True)
class SplitConfig:
    mode: str = "fixed"
    cle_high_score: float = 1.0
    cle_low_score: float = -1000.0

    def __post_init__(self):
        if self.mode not in MODES:
            raise ValueError(f"mode must be one of {MODES}, got {self.mode!r}")
        if not self.cle_high_score > self.cle_low_score:
            raise ValueError("cle_high_score must exceed cle_low_score")


@dataclass(frozen=True)
class Repair:
    """Audit record for one token whose arc a split step changed or kept."""

    tree: str
    token: int
    action: str  # reroot | ref_head_reroot | collapse | keep_conj
    detail: str = ""


@dataclass(frozen=True)
class SplitResult:
    basic: DepForest
    relative: DepForest
    conjunct: DepForest
    control: DepForest
    repairs: tuple[Repair, ...] = ()

    def forest(self, name: str) -> DepForest:
        if name not in TREE_NAMES:
            raise KeyError(name)
        return getattr(self, name)


def resolve_cycles(
    proposed: list[tuple[int, str]],
    cfg: SplitConfig,
    tree: str = "",
    keep: Collection[int] = (),
) -> tuple[DepForest, tuple[Repair, ...]]:
    """Break cycles in a per-token head proposal.

    Acyclic input is returned unchanged.  Otherwise a maximum arborescence is
    computed over a complete matrix scoring proposed arcs high and everything
    else low; every token whose arc the arborescence replaced is re-attached
    to ``(0, root)``.  If the replaced arc was a ``ref`` arc, the ref head is
    re-attached to ``(0, root)`` as well.  Should anything still be cyclic
    after that (it cannot be with a correct arborescence, but the guard is
    kept), whole residual cycles are collapsed onto the root.

    ``keep`` nudges ties: when several maximum arborescences exist, those
    preserving the proposed arcs of ``keep`` tokens are preferred.  The nudge
    is far smaller than the score gap between arborescences that keep
    different numbers of proposed arcs, so it never changes which totals are
    optimal.
    """
    n = len(proposed)
    heads = [h for h, _ in proposed]
    if find_cycle(heads) is None:
        return DepForest(tuple(proposed)), ()

    keep = frozenset(keep)
    eps = (cfg.cle_high_score - cfg.cle_low_score) * 1e-9
    arcs = []
    for d in range(1, n + 1):
        ph = proposed[d - 1][0]
        bonus = eps if d in keep else 0.0
        for h in range(0, n + 1):
            if h == d:
                continue
            score = cfg.cle_high_score + bonus if h == ph else cfg.cle_low_score
            arcs.append((h, d, score))
    solution = max_arborescence(n, arcs)

    parents = list(proposed)
    repairs: list[Repair] = []
    for d in range(1, n + 1):
        ph, pl = proposed[d - 1]
        if solution[d] != ph:
            parents[d - 1] = (0, "root")
            repairs.append(Repair(tree, d, "reroot", f"dropped arc {ph}->{d} ({pl})"))

    for repair in list(repairs):
        ph, pl = proposed[repair.token - 1]
        if base_relation(pl) == "ref" and ph >= 1 and parents[ph - 1] != (0, "root"):
            parents[ph - 1] = (0, "root")
            repairs.append(Repair(tree, ph, "ref_head_reroot",
                                  f"ref arc into {repair.token} was changed"))

    cycle = find_cycle([h for h, _ in parents])
    while cycle:
        for d in sorted(cycle):
            parents[d - 1] = (0, "root")
            repairs.append(Repair(tree, d, "collapse", "residual cycle"))
        cycle = find_cycle([h for h, _ in parents])

    return DepForest(tuple(parents)), tuple(repairs)


def split_basic(
    g: EudGraph, s: Sentence, cfg: SplitConfig, warn: WarnFn | None = None,
) -> tuple[DepForest, tuple[Repair, ...]]:
    """Enhanced edges mirroring the basic tree, labels delexicalized.

    A token's arc is the enhanced edge whose head is its basic head and whose
    base relation matches its basic deprel; tokens without one attach to
    ``(0, root)``.  In fixed mode a token with an incoming ``ref`` edge keeps
    that edge here instead.
    """
    proposed: list[tuple[int, str]] = []
    for tok in s.tokens:
        incoming = g.incoming(tok.id)
        parent = None
        if cfg.mode == "fixed":
            refs = [e for e in incoming if base_relation(e.label) == "ref"]
            if refs:
                parent = (refs[0].head, refs[0].label)
        if parent is None:
            wanted = base_relation(tok.basic_deprel)
            candidates = [
                e for e in incoming
                if e.head == tok.basic_head
                and base_relation(e.label) == wanted
                and base_relation(e.label) != "ref"
            ]
            if candidates:
                candidates.sort(key=lambda e: (e.label != tok.basic_deprel, e.label))
                e = delexicalize(candidates[0], s, warn)
                parent = (e.head, e.label)
            else:
                parent = (0, "root")
        proposed.append(parent)
    return resolve_cycles(proposed, cfg, tree="basic")


def split_relative(
    g: EudGraph, s: Sentence, basic: DepForest, cfg: SplitConfig, warn: WarnFn | None = None,
) -> tuple[DepForest, tuple[Repair, ...]]:
    """Copy of the basic forest that re-parents relative pronouns to ``ref``.

    In fixed mode the referent additionally moves onto its extra subject edge
    (its role inside the relative clause), which is what makes the ``ref``
    phenomenon recoverable after collation.
    """
    parents = list(basic.parents)
    keep: set[int] = set()
    ref_edges = sorted(e for e in g.edges if base_relation(e.label) == "ref")
    for e in ref_edges:
        parents[e.dep - 1] = (e.head, e.label)
        keep.add(e.dep)
    if cfg.mode == "fixed":
        for e in ref_edges:
            referent = e.head
            if referent < 1:
                continue
            bh, bl = basic.parent(referent)
            extras = [
                x for x in g.incoming(referent)
                if base_relation(x.label) in SUBJECT_BASES
                and not (x.head == bh and base_relation(x.label) == base_relation(bl))
            ]
            if extras:
                extras.sort(key=lambda x: (x.head, x.label))
                x = delexicalize(extras[0], s, warn)
                parents[referent - 1] = (x.head, x.label)
                keep.add(referent)
    return resolve_cycles(parents, cfg, tree="relative", keep=keep)


def split_conjunct(
    g: EudGraph, s: Sentence, basic: DepForest, cfg: SplitConfig, warn: WarnFn | None = None,
) -> tuple[DepForest, tuple[Repair, ...]]:
    """Copy of the basic forest that re-parents conjuncts to the propagated edge.

    A token whose basic arc is ``conj`` moves onto the enhanced edge carrying
    the same base relation as the conjunction head's own arc; without such an
    edge the conj arc stays and the fallback is recorded.
    """
    parents = list(basic.parents)
    keep: set[int] = set()
    notes: list[Repair] = []
    for d in range(1, basic.n + 1):
        bh, bl = basic.parent(d)
        if bh < 1 or base_relation(bl) != "conj":
            continue
        gh, gl = basic.parent(bh)
        wanted = base_relation(gl)
        candidates = [
            e for e in g.incoming(d)
            if base_relation(e.label) == wanted and e.head != bh
        ]
        if not candidates:
            notes.append(Repair("conjunct", d, "keep_conj",
                                f"no propagated {wanted!r} edge in the graph"))
            continue
        candidates.sort(key=lambda e: (e.head != gh, e.head, e.label))
        e = delexicalize(candidates[0], s, warn)
        parents[d - 1] = (e.head, e.label)
        keep.add(d)
    forest, repairs = resolve_cycles(parents, cfg, tree="conjunct", keep=keep)
    return forest, tuple(notes) + repairs


def split_control(
    g: EudGraph, s: Sentence, basic: DepForest, cfg: SplitConfig, warn: WarnFn | None = None,
) -> tuple[DepForest, tuple[Repair, ...]]:
    """Copy of the basic forest that re-parents shared subjects.

    A token whose basic arc is ``nsubj`` moves onto its other enhanced
    ``nsubj`` edge when its current head has an incoming clausal-complement
    edge (``xcomp`` only in faithful mode, ``xcomp``/``ccomp`` in fixed mode).
    """
    triggers = {"xcomp"} if cfg.mode == "faithful" else {"xcomp", "ccomp"}
    parents = list(basic.parents)
    keep: set[int] = set()
    for d in range(1, basic.n + 1):
        bh, bl = basic.parent(d)
        if bh < 1 or base_relation(bl) != "nsubj":
            continue
        if not any(base_relation(e.label) in triggers for e in g.incoming(bh)):
            continue
        candidates = [
            e for e in g.incoming(d)
            if base_relation(e.label) == "nsubj" and e.head != bh
        ]
        if not candidates:
            continue
        candidates.sort(key=lambda e: (e.head, e.label))
        e = delexicalize(candidates[0], s, warn)
        parents[d - 1] = (e.head, e.label)
        keep.add(d)
    return resolve_cycles(parents, cfg, tree="control", keep=keep)


def split_all(
    g: EudGraph, s: Sentence, cfg: SplitConfig, warn: WarnFn | None = None,
) -> SplitResult:
    """All four forests sharing one basic split, with the combined audit trail."""
    basic, r1 = split_basic(g, s, cfg, warn)
    relative, r2 = split_relative(g, s, basic, cfg, warn)
    conjunct, r3 = split_conjunct(g, s, basic, cfg, warn)
    control, r4 = split_control(g, s, basic, cfg, warn)
    return SplitResult(basic, relative, conjunct, control, r1 + r2 + r3 + r4)
