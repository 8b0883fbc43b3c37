"""Pluggable producers of label sequences, one per tree type.

These stand in for a trained tagger so the whole pipeline can run: the
oracle replays the encoded gold splits, the frequency baseline emits the
most frequent ``(bracket, relation)`` pair seen for a token, backing off
from ``(form, upos)`` to ``upos`` to the global mode.  External taggers
interoperate through the textual label format instead.
"""

from __future__ import annotations

from collections import Counter, defaultdict
from typing import Iterable, Mapping, Protocol, Sequence

from .brackets import BracketTag, LabelSeq, encode
from .conllu import Sentence
from .graph import graph_of_sentence
from .splitter import TREE_NAMES, SplitConfig, SplitResult, split_all

Label = tuple[BracketTag, str]


class UnknownSentenceError(KeyError):
    pass


class Predictor(Protocol):
    def predict(self, sentence: Sentence, tree: str) -> LabelSeq: ...

    def train(self, pairs: Iterable[tuple[Sentence, SplitResult]]) -> None: ...


def training_pairs(sentences: Sequence[Sentence], cfg: SplitConfig) -> list[tuple[Sentence, SplitResult]]:
    return [(s, split_all(graph_of_sentence(s), s, cfg)) for s in sentences]


class OraclePredictor:
    """Replays the encoded gold split of a known sentence, looked up by sent_id."""

    def __init__(self, splits: Mapping[str, SplitResult]):
        self._splits = dict(splits)

    @classmethod
    def from_corpus(cls, sentences: Sequence[Sentence], cfg: SplitConfig) -> "OraclePredictor":
        splits = {}
        for i, (s, result) in enumerate(training_pairs(sentences, cfg)):
            key = s.sent_id or f"#{i + 1}"
            splits[key] = result
        return cls(splits)

    def train(self, pairs: Iterable[tuple[Sentence, SplitResult]]) -> None:
        pass  # already has the answers

    def predict(self, sentence: Sentence, tree: str) -> LabelSeq:
        key = sentence.sent_id
        if key not in self._splits:
            raise UnknownSentenceError(key or "<no sent_id>")
        return encode(self._splits[key].forest(tree))


def _mode(counter: Counter) -> Label | None:
    if not counter:
        return None
    # highest count first; ties broken by the lexicographically smallest label
    return min(counter.items(), key=lambda kv: (-kv[1], kv[0][0].render(), kv[0][1]))[0]


class FrequencyPredictor:
    """Most-frequent-label baseline keyed on (form, upos), then upos, then overall."""

    def __init__(self):
        self._by_form: dict[str, dict] = {t: defaultdict(Counter) for t in TREE_NAMES}
        self._by_upos: dict[str, dict] = {t: defaultdict(Counter) for t in TREE_NAMES}
        self._overall: dict[str, Counter] = {t: Counter() for t in TREE_NAMES}

    def train(self, pairs: Iterable[tuple[Sentence, SplitResult]]) -> None:
        for sentence, result in pairs:
            for tree in TREE_NAMES:
                seq = encode(result.forest(tree))
                for tok, tag, rel in zip(sentence.tokens, seq.brackets, seq.relations):
                    label = (tag, rel)
                    self._by_form[tree][(tok.form, tok.upos)][label] += 1
                    self._by_upos[tree][tok.upos][label] += 1
                    self._overall[tree][label] += 1

    def predict(self, sentence: Sentence, tree: str) -> LabelSeq:
        if not self._overall[tree]:
            raise RuntimeError("frequency predictor has not been trained")
        tags = []
        rels = []
        for tok in sentence.tokens:
            label = (_mode(self._by_form[tree].get((tok.form, tok.upos), Counter()))
                     or _mode(self._by_upos[tree].get(tok.upos, Counter()))
                     or _mode(self._overall[tree]))
            tags.append(label[0])
            rels.append(label[1])
        return LabelSeq(tuple(tags), tuple(rels))
