"""Bracket-tag encoding of a dependency forest as one label per token.

Token ``i`` receives a tag built from four parts, rendered in this order:

``<``
    token ``i-1`` exists and its head lies to its right;
``\\`` x k
    ``k`` = number of dependents of token ``i`` to its left;
``/`` x k
    ``k`` = number of dependents of token ``i-1`` to its right;
``>``
    token ``i``'s head lies to its left.

Arcs to node 0 are not bracketed; each token also carries its parent
relation label, so roots keep their label through a round trip.  Decoding
matches ``<`` openers against later ``\\`` and ``/`` openers against later
``>`` with one stack per direction.

Two arcs pointing the same way whose spans strictly interleave cannot be
expressed; ``encode`` drops the later-starting arc of such a pair and
reports it.  Decoding never fails: unmatched or contradictory brackets are
discarded (reported as repairs) and any token left headless attaches to
``(0, relation)``.

The textual exchange format is one ``form<TAB>tag<TAB>relation`` line per
token with a blank line after each sentence.
"""

from __future__ import annotations

import logging
import re
from dataclasses import dataclass
from typing import IO, Iterable, Sequence

from .graph import DepForest

log = logging.getLogger(__name__)

_TAG_RE = re.compile(r"(<?)(\\*)(/*)(>?)")


class LabelFormatError(ValueError):
    """A label file line that cannot be parsed; carries its line number."""

    def __init__(self, message: str, line_number: int):
        super().__init__(f"line {line_number}: {message}")
        self.line_number = line_number


@dataclass(frozen=True)
class BracketTag:
    left_angle: bool = False
    backslashes: int = 0
    slashes: int = 0
    right_angle: bool = False

    def __post_init__(self):
        if self.backslashes < 0 or self.slashes < 0:
            raise ValueError("bracket counts must be >= 0")

    def render(self) -> str:
        s = (("<" if self.left_angle else "")
             + "\\" * self.backslashes
             + "/" * self.slashes
             + (">" if self.right_angle else ""))
        return s or "_"

    @classmethod
    def parse(cls, s: str) -> "BracketTag":
        if s == "_":
            return cls()
        m = _TAG_RE.fullmatch(s)
        if not s or m is None:
            raise ValueError(f"not a bracket tag: {s!r}")
        return cls(bool(m.group(1)), len(m.group(2)), len(m.group(3)), bool(m.group(4)))


EMPTY_TAG = BracketTag()


@dataclass(frozen=True)
class LabelSeq:
    """Aligned per-token bracket tags and relation labels."""

    brackets: tuple[BracketTag, ...]
    relations: tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, "brackets", tuple(self.brackets))
        object.__setattr__(self, "relations", tuple(self.relations))
        if len(self.brackets) != len(self.relations):
            raise ValueError("brackets and relations must have equal length")

    @property
    def n(self) -> int:
        return len(self.brackets)

    def tag_strings(self) -> tuple[str, ...]:
        return tuple(t.render() for t in self.brackets)


def encode_with_drops(forest: DepForest) -> tuple[LabelSeq, tuple[tuple[int, int], ...]]:
    """Encode a forest; also return ``(head, dep)`` arcs dropped as inexpressible."""
    n = forest.n
    heads = {d: h for d, (h, _) in enumerate(forest.parents, start=1) if h != 0}

    kept: dict[int, int] = {}
    dropped: list[tuple[int, int]] = []
    for leftward in (True, False):
        if leftward:
            spans = sorted((d, h) for d, h in heads.items() if h > d)
        else:
            spans = sorted((h, d) for d, h in heads.items() if h < d)
        accepted: list[tuple[int, int]] = []
        for lo, hi in spans:
            if any(alo < lo < ahi < hi for alo, ahi in accepted):
                dropped.append((hi, lo) if leftward else (lo, hi))
            else:
                accepted.append((lo, hi))
                dep = lo if leftward else hi
                kept[dep] = heads[dep]

    tags = []
    for i in range(1, n + 1):
        prev_head = kept.get(i - 1, 0)
        tags.append(BracketTag(
            left_angle=i >= 2 and prev_head > i - 1,
            backslashes=sum(1 for d, h in kept.items() if d < i and h == i),
            slashes=0 if i < 2 else sum(1 for d, h in kept.items() if h == i - 1 and d > i - 1),
            right_angle=0 < kept.get(i, 0) < i,
        ))
    relations = tuple(label for _, label in forest.parents)
    return LabelSeq(tuple(tags), relations), tuple(sorted(dropped))


def encode(forest: DepForest) -> LabelSeq:
    seq, dropped = encode_with_drops(forest)
    for head, dep in dropped:
        log.warning("arc %d->%d crosses a same-direction arc and was not encoded", head, dep)
    return seq


def decode_with_repairs(seq: LabelSeq) -> tuple[DepForest, tuple[str, ...]]:
    """Rebuild a forest; malformed bracketing is repaired, never fatal."""
    n = seq.n
    head: dict[int, int] = {}
    left_stack: list[int] = []   # dependents waiting for their head's backslash
    right_stack: list[int] = []  # heads waiting for their dependent's right angle
    repairs: list[str] = []

    def would_cycle(dep: int, h: int) -> bool:
        v = h
        while v != 0:
            if v == dep:
                return True
            v = head.get(v, 0)
        return False

    def assign(dep: int, h: int, what: str) -> None:
        if dep in head:
            repairs.append(f"token {dep}: second head {h} via {what!r} discarded")
        elif would_cycle(dep, h):
            repairs.append(f"token {dep}: head {h} via {what!r} would close a cycle; discarded")
        else:
            head[dep] = h

    for i, tag in enumerate(seq.brackets, start=1):
        if tag.left_angle:
            if i == 1:
                repairs.append("token 1: '<' has no previous token; discarded")
            else:
                left_stack.append(i - 1)
        for _ in range(tag.backslashes):
            if left_stack:
                assign(left_stack.pop(), i, "\\")
            else:
                repairs.append(f"token {i}: unmatched '\\' discarded")
        if tag.slashes:
            if i == 1:
                repairs.append("token 1: '/' has no previous token; discarded")
            else:
                right_stack.extend([i - 1] * tag.slashes)
        if tag.right_angle:
            if right_stack:
                assign(i, right_stack.pop(), ">")
            else:
                repairs.append(f"token {i}: unmatched '>' discarded")
    if left_stack:
        repairs.append(f"unmatched '<' opened for tokens {left_stack}; discarded")
    if right_stack:
        repairs.append(f"{len(right_stack)} unmatched '/' discarded")

    parents = []
    for i in range(1, n + 1):
        rel = seq.relations[i - 1]
        if not rel:
            repairs.append(f"token {i}: empty relation replaced")
            rel = "root"
        parents.append((head.get(i, 0), rel))
    return DepForest(tuple(parents)), tuple(repairs)


def decode(seq: LabelSeq) -> DepForest:
    forest, repairs = decode_with_repairs(seq)
    for r in repairs:
        log.warning("decode repair: %s", r)
    return forest


def write_label_file(items: Iterable[tuple[Sequence[str], LabelSeq]], out: IO[str]) -> None:
    for forms, seq in items:
        if len(forms) != seq.n:
            raise ValueError("forms and label sequence differ in length")
        for form, tag, rel in zip(forms, seq.brackets, seq.relations):
            out.write(f"{form}\t{tag.render()}\t{rel}\n")
        out.write("\n")


def read_label_file(lines: Iterable[str]) -> list[tuple[tuple[str, ...], LabelSeq]]:
    items: list[tuple[tuple[str, ...], LabelSeq]] = []
    forms: list[str] = []
    tags: list[BracketTag] = []
    rels: list[str] = []

    def flush():
        if forms:
            items.append((tuple(forms), LabelSeq(tuple(tags), tuple(rels))))
            forms.clear()
            tags.clear()
            rels.clear()

    for line_no, line in enumerate(lines, start=1):
        line = line.rstrip("\n")
        if not line:
            flush()
            continue
        cols = line.split("\t")
        if len(cols) != 3:
            raise LabelFormatError(f"expected 3 tab-separated columns, got {len(cols)}", line_no)
        try:
            tag = BracketTag.parse(cols[1])
        except ValueError as exc:
            raise LabelFormatError(str(exc), line_no) from None
        forms.append(cols[0])
        tags.append(tag)
        rels.append(cols[2])
    flush()
    return items
