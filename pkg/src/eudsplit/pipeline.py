"""Corpus-level workflows: split, round trip, and their bookkeeping.

Sentences are independent, so the heavy steps can run across a process pool
(``jobs > 1``); results are reassembled in input order either way.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import partial
from typing import Callable, Iterable, Sequence

from .brackets import decode_with_repairs, encode_with_drops
from .collate import CollationPolicy, apply_to_sentence, collate
from .conllu import Sentence
from .graph import graph_of_sentence
from .metrics import EvalReport, score
from .predict import Predictor
from .splitter import TREE_NAMES, SplitConfig, SplitResult, split_all

COUNTER_KEYS = ("split_repairs", "encode_drops", "decode_repairs", "relex_warnings")


@dataclass
class RoundtripOutcome:
    predictions: list[Sentence]
    report: EvalReport
    counters: dict[str, int] = field(default_factory=dict)


def _map(fn: Callable, items: Sequence, jobs: int) -> list:
    if jobs <= 1 or len(items) < 2:
        return [fn(x) for x in items]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        chunk = max(1, len(items) // (jobs * 4))
        return list(pool.map(fn, items, chunksize=chunk))


def _split_one(sentence: Sentence, cfg: SplitConfig) -> SplitResult:
    return split_all(graph_of_sentence(sentence), sentence, cfg)


def split_corpus(sentences: Sequence[Sentence], cfg: SplitConfig, jobs: int = 1) -> list[SplitResult]:
    return _map(partial(_split_one, cfg=cfg), sentences, jobs)


def _roundtrip_one(
    sentence: Sentence,
    cfg: SplitConfig,
    policy: CollationPolicy,
    trees: tuple[str, ...],
) -> tuple[Sentence, tuple[int, int, int, int]]:
    result = _split_one(sentence, cfg)
    forests = {}
    encode_drops = 0
    decode_repairs = 0
    for tree in trees:
        seq, drops = encode_with_drops(result.forest(tree))
        forest, repairs = decode_with_repairs(seq)
        forests[tree] = forest
        encode_drops += len(drops)
        decode_repairs += len(repairs)
    relex_warnings: list[str] = []
    graph = collate(forests, sentence, policy, warn=relex_warnings.append)
    pred = apply_to_sentence(graph, sentence)
    return pred, (len(result.repairs), encode_drops, decode_repairs, len(relex_warnings))


def roundtrip_corpus(
    sentences: Sequence[Sentence],
    cfg: SplitConfig,
    policy: CollationPolicy | None = None,
    trees: Iterable[str] = TREE_NAMES,
    jobs: int = 1,
    predictor: Predictor | None = None,
) -> RoundtripOutcome:
    """Split each sentence, encode and decode every tree, collate, and score.

    With a ``predictor`` the label sequences come from it instead of the gold
    split (the oracle predictor makes both paths identical); prediction runs
    sequentially since predictors are not shipped across processes.
    """
    trees = tuple(trees)
    policy = policy if policy is not None else CollationPolicy(tree_order=trees)
    if predictor is None:
        rows = _map(partial(_roundtrip_one, cfg=cfg, policy=policy, trees=trees),
                    sentences, jobs)
    else:
        rows = [_predicted_one(s, policy, trees, predictor) for s in sentences]
    preds = [pred for pred, _ in rows]
    totals = [0, 0, 0, 0]
    for _, counts in rows:
        for i, c in enumerate(counts):
            totals[i] += c
    report = score(sentences, preds)
    return RoundtripOutcome(preds, report, dict(zip(COUNTER_KEYS, totals)))


def _predicted_one(
    sentence: Sentence,
    policy: CollationPolicy,
    trees: tuple[str, ...],
    predictor: Predictor,
) -> tuple[Sentence, tuple[int, int, int, int]]:
    forests = {}
    decode_repairs = 0
    for tree in trees:
        forest, repairs = decode_with_repairs(predictor.predict(sentence, tree))
        forests[tree] = forest
        decode_repairs += len(repairs)
    relex_warnings: list[str] = []
    graph = collate(forests, sentence, policy, warn=relex_warnings.append)
    pred = apply_to_sentence(graph, sentence)
    return pred, (0, 0, decode_repairs, len(relex_warnings))
