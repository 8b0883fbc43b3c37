"""Reading and writing CoNLL-U files, including the DEPS column.

The DEPS column carries the enhanced dependency graph as ``head:relation``
entries separated by ``|``.  Multiword-token range lines (ids like ``3-4``)
are kept verbatim so files round-trip; empty nodes (ids like ``5.1``) are
either dropped together with every enhanced edge touching them, or rejected,
depending on the chosen policy.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import IO, Iterable

EMPTY_NODE_POLICIES = ("drop", "reject")


class ConlluError(Exception):
    """Base class for CoNLL-U reading problems."""


class ParseError(ConlluError):
    """A line that cannot be parsed; carries its 1-based line number."""

    def __init__(self, message: str, line_number: int):
        super().__init__(f"line {line_number}: {message}")
        self.line_number = line_number


class IntegrityError(ConlluError):
    """A sentence whose head references or token ids are inconsistent."""


class EmptyNodeError(ConlluError):
    """Raised under the ``reject`` policy when a sentence has empty nodes."""

    def __init__(self, sent_id: str):
        super().__init__(f"sentence {sent_id!r} contains empty nodes")
        self.sent_id = sent_id


@dataclass(frozen=True)
class Token:
    """One syntactic word.

    ``deps`` is the token's slice of the enhanced graph: ``(head, relation)``
    pairs, canonically sorted with duplicates removed.  ``basic_head`` 0 means
    the artificial root.
    """

    id: int
    form: str
    lemma: str = "_"
    upos: str = "_"
    xpos: str = "_"
    feats: str = "_"
    basic_head: int = 0
    basic_deprel: str = "_"
    deps: tuple[tuple[int, str], ...] = ()
    misc: str = "_"

    def __post_init__(self):
        if self.id < 1:
            raise ValueError(f"token id must be >= 1, got {self.id}")
        if self.basic_head < 0:
            raise ValueError(f"basic head must be >= 0, got {self.basic_head}")
        canon = tuple(sorted(set(self.deps)))
        for head, rel in canon:
            if head < 0:
                raise ValueError(f"deps head must be >= 0, got {head}")
            if head == self.id:
                raise ValueError(f"token {self.id} has a self-loop in deps")
            if not rel or any(c.isspace() for c in rel):
                raise ValueError(f"bad deps relation {rel!r} on token {self.id}")
        object.__setattr__(self, "deps", canon)


@dataclass(frozen=True)
class Sentence:
    """An ordered token list plus the raw comment block above it.

    ``sent_id`` and ``text`` are parsed out of the comments for convenience;
    the comments themselves are the round-trip source of truth.
    ``multiword_lines`` holds raw range-token lines keyed by the id of the
    first word they cover.
    """

    tokens: tuple[Token, ...] = ()
    comments: tuple[str, ...] = ()
    multiword_lines: tuple[tuple[int, str], ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "tokens", tuple(self.tokens))
        object.__setattr__(self, "comments", tuple(self.comments))
        object.__setattr__(self, "multiword_lines", tuple(self.multiword_lines))
        n = len(self.tokens)
        for i, tok in enumerate(self.tokens, start=1):
            if tok.id != i:
                raise ValueError(f"token ids not contiguous: expected {i}, got {tok.id}")
            if tok.basic_head > n:
                raise ValueError(f"token {i}: basic head {tok.basic_head} outside 0..{n}")
            for head, _ in tok.deps:
                if head > n:
                    raise ValueError(f"token {i}: deps head {head} outside 0..{n}")

    @property
    def n(self) -> int:
        return len(self.tokens)

    @property
    def sent_id(self) -> str:
        return self._comment_value("sent_id")

    @property
    def text(self) -> str:
        return self._comment_value("text")

    def _comment_value(self, key: str) -> str:
        prefix = f"# {key} ="
        for line in self.comments:
            if line.startswith(prefix):
                return line[len(prefix):].strip()
        return ""

    def token(self, i: int) -> Token:
        """1-based token access."""
        return self.tokens[i - 1]


def _is_empty_node_id(s: str) -> bool:
    return "." in s


def _parse_deps(raw: str, line_no: int) -> list[tuple[str, str]]:
    if raw in ("_", ""):
        return []
    entries = []
    for item in raw.split("|"):
        head, sep, rel = item.partition(":")
        if not sep or not head or not rel:
            raise ParseError(f"malformed DEPS entry {item!r}", line_no)
        entries.append((head, rel))
    return entries


def _parse_int(raw: str, what: str, line_no: int) -> int:
    try:
        return int(raw)
    except ValueError:
        raise ParseError(f"{what} is not an integer: {raw!r}", line_no) from None


def read_conllu(stream: Iterable[str], empty_nodes: str = "drop") -> list[Sentence]:
    """Parse CoNLL-U text into sentences.

    ``stream`` is any iterable of lines.  ``empty_nodes`` is ``"drop"`` to
    remove empty-node tokens and every enhanced edge incident to them, or
    ``"reject"`` to raise :class:`EmptyNodeError`.
    """
    if empty_nodes not in EMPTY_NODE_POLICIES:
        raise ValueError(f"empty_nodes must be one of {EMPTY_NODE_POLICIES}")
    sentences = []
    block: list[tuple[int, str]] = []
    for line_no, line in enumerate(stream, start=1):
        line = line.rstrip("\r\n")
        if line == "":
            if block:
                sentences.append(_parse_block(block, empty_nodes))
                block = []
        else:
            block.append((line_no, line))
    if block:
        sentences.append(_parse_block(block, empty_nodes))
    return sentences


def _parse_block(block: list[tuple[int, str]], empty_nodes: str) -> Sentence:
    comments: list[str] = []
    multiword: list[tuple[int, str]] = []
    rows = []  # (line_no, columns) for regular tokens
    has_empty = False
    for line_no, line in block:
        if line.startswith("#"):
            comments.append(line)
            continue
        cols = line.split("\t")
        if len(cols) != 10:
            raise ParseError(f"expected 10 tab-separated columns, got {len(cols)}", line_no)
        tok_id = cols[0]
        if "-" in tok_id:
            first = _parse_int(tok_id.split("-")[0], "range start", line_no)
            multiword.append((first, line))
            continue
        if _is_empty_node_id(tok_id):
            has_empty = True
            continue
        rows.append((line_no, cols))

    sent_id = ""
    for line in comments:
        if line.startswith("# sent_id ="):
            sent_id = line.split("=", 1)[1].strip()
    if has_empty and empty_nodes == "reject":
        raise EmptyNodeError(sent_id or "<no sent_id>")

    tokens = []
    for line_no, cols in rows:
        tok_id = _parse_int(cols[0], "token id", line_no)
        head = _parse_int(cols[6], "head", line_no) if cols[6] != "_" else 0
        deps = []
        for dep_head, rel in _parse_deps(cols[8], line_no):
            if _is_empty_node_id(dep_head):
                if empty_nodes == "reject":
                    raise EmptyNodeError(sent_id or "<no sent_id>")
                continue  # edge incident to a dropped empty node
            deps.append((_parse_int(dep_head, "DEPS head", line_no), rel))
        try:
            tokens.append(Token(
                id=tok_id, form=cols[1], lemma=cols[2], upos=cols[3], xpos=cols[4],
                feats=cols[5], basic_head=head, basic_deprel=cols[7],
                deps=tuple(deps), misc=cols[9],
            ))
        except ValueError as exc:
            raise IntegrityError(f"sentence {sent_id!r}: {exc}") from None
    try:
        return Sentence(tokens=tuple(tokens), comments=tuple(comments),
                        multiword_lines=tuple(multiword))
    except ValueError as exc:
        raise IntegrityError(f"sentence {sent_id!r}: {exc}") from None


def write_conllu(sentences: Iterable[Sentence], out: IO[str]) -> None:
    """Emit sentences as CoNLL-U with canonical (sorted) DEPS and Unix newlines."""
    for sentence in sentences:
        for line in sentence.comments:
            out.write(line + "\n")
        mwt = dict(sentence.multiword_lines)
        for tok in sentence.tokens:
            if tok.id in mwt:
                out.write(mwt[tok.id] + "\n")
            deps = "|".join(f"{h}:{rel}" for h, rel in tok.deps) or "_"
            out.write("\t".join((
                str(tok.id), tok.form, tok.lemma, tok.upos, tok.xpos, tok.feats,
                str(tok.basic_head), tok.basic_deprel, deps, tok.misc,
            )) + "\n")
        out.write("\n")


def load_conllu(path: str, empty_nodes: str = "drop") -> list[Sentence]:
    with open(path, encoding="utf-8") as f:
        return read_conllu(f, empty_nodes=empty_nodes)


def save_conllu(sentences: Iterable[Sentence], path: str) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        write_conllu(sentences, f)


def with_tree(sentence: Sentence, parents: Iterable[tuple[int, str]]) -> Sentence:
    """Copy of ``sentence`` with a forest written into HEAD/DEPREL and DEPS cleared."""
    parents = list(parents)
    if len(parents) != sentence.n:
        raise ValueError(f"forest length {len(parents)} != sentence length {sentence.n}")
    tokens = tuple(
        replace(tok, basic_head=h, basic_deprel=rel, deps=())
        for tok, (h, rel) in zip(sentence.tokens, parents)
    )
    return replace(sentence, tokens=tokens)
