"""Relation labels and the relative-position rewrite of lexical subtypes.

Enhanced relations may carry a ``:``-joined subtype whose last segment is a
marker lemma (``acl:to``, ``obl:in``, ``conj:and``).  Delexicalization swaps
that lemma for the signed offset of the marker token relative to the
dependent; relexicalization inverts the swap.

Rendered label grammar::

    label    = base *(":" segment)
    segment  = offset / subtype
    offset   = ("+" / "-") 1*DIGIT      ; produced by delexicalization
    subtype  = 1*(ALPHA / DIGIT / "_")  ; lexical or grammatical

Only the final segment is ever rewritten.  A lemma segment is recognised by
matching (case-insensitively) the lemma of a token attached to the dependent
through ``case``, ``mark`` or ``cc`` in the basic tree; grammatical subtypes
like ``pass`` or ``relcl`` never match one.  Multi-word markers (segments
containing ``_``) are left alone.
"""

from __future__ import annotations

import logging
import re
from dataclasses import dataclass
from typing import Callable

from .conllu import Sentence
from .graph import EudEdge

log = logging.getLogger(__name__)

MARKER_RELATIONS = frozenset({"case", "mark", "cc"})

_OFFSET_RE = re.compile(r"[+-]\d+$")

WarnFn = Callable[[str], None]


def base_relation(label: str) -> str:
    """The universal relation: everything before the first ``:``."""
    return label.split(":", 1)[0]


def split_suffix(label: str) -> tuple[str, str | None]:
    """Split at the last ``:``; returns ``(label, None)`` when there is none."""
    stem, sep, suffix = label.rpartition(":")
    if not sep:
        return label, None
    return stem, suffix


def parse_offset(segment: str) -> int | None:
    """The signed offset encoded by a segment such as ``-1`` or ``+2``, if any."""
    if _OFFSET_RE.fullmatch(segment):
        return int(segment)
    return None


def format_offset(k: int) -> str:
    if k == 0:
        raise ValueError("offset 0 would point at the dependent itself")
    return f"{k:+d}"


@dataclass(frozen=True)
class RelationLabel:
    """Parsed form of a rendered label: base/stem plus an optional last segment."""

    stem: str
    suffix: str | None = None

    @classmethod
    def parse(cls, label: str) -> "RelationLabel":
        stem, suffix = split_suffix(label)
        return cls(stem, suffix)

    @property
    def offset(self) -> int | None:
        return parse_offset(self.suffix) if self.suffix else None

    def render(self) -> str:
        return self.stem if self.suffix is None else f"{self.stem}:{self.suffix}"


def _warn(warn: WarnFn | None, message: str) -> None:
    if warn is not None:
        warn(message)
    else:
        log.warning("%s", message)


def marker_tokens(sentence: Sentence, dep: int) -> list:
    """Tokens attached to ``dep`` in the basic tree via a marker relation."""
    return [
        t for t in sentence.tokens
        if t.basic_head == dep and base_relation(t.basic_deprel) in MARKER_RELATIONS
    ]


def delexicalize(edge: EudEdge, sentence: Sentence, warn: WarnFn | None = None) -> EudEdge:
    """Replace a marker-lemma suffix with the marker's relative position.

    Fires only when the suffix equals (case-insensitively) the lemma of a
    token attached to the dependent via ``case``/``mark``/``cc``.  With two
    equidistant same-lemma candidates the nearest one wins, preferring the
    left; a warning is emitted.  Everything else returns the edge unchanged.
    """
    stem, suffix = split_suffix(edge.label)
    if suffix is None or "_" in suffix or parse_offset(suffix) is not None:
        return edge
    matches = [
        t for t in marker_tokens(sentence, edge.dep)
        if t.lemma.lower() == suffix.lower()
    ]
    if not matches:
        return edge
    if len(matches) > 1:
        _warn(warn, f"ambiguous marker {suffix!r} for token {edge.dep}: "
                    f"candidates {[t.id for t in matches]}, keeping nearest")
        matches.sort(key=lambda t: (abs(t.id - edge.dep), t.id - edge.dep))
    marker = matches[0]
    return EudEdge(edge.head, edge.dep, f"{stem}:{format_offset(marker.id - edge.dep)}")


def relexicalize(edge: EudEdge, sentence: Sentence, warn: WarnFn | None = None) -> EudEdge:
    """Replace a relative-position suffix with the lemma it points at.

    An offset outside the sentence strips the suffix and warns instead of
    failing.
    """
    stem, suffix = split_suffix(edge.label)
    if suffix is None:
        return edge
    offset = parse_offset(suffix)
    if offset is None:
        return edge
    target = edge.dep + offset
    if 1 <= target <= sentence.n:
        return EudEdge(edge.head, edge.dep, f"{stem}:{sentence.token(target).lemma.lower()}")
    _warn(warn, f"offset {suffix} on token {edge.dep} points outside the sentence; "
                f"label reduced to {stem!r}")
    return EudEdge(edge.head, edge.dep, stem)
