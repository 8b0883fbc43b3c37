"""Split enhanced-dependency graphs into labelled forests and back.

The library decomposes each sentence's enhanced graph into four single-head
forests (basic, relative, conjunct, control), encodes every forest as one
bracket tag plus one relation label per token, decodes such sequences back
into forests, collates forests into a graph again, and scores the result
with edge-level F1 (EUAS / EULAS / ELAS).  The ``eudsplit`` command exposes
the same steps as a pipeline over CoNLL-U files.
"""

from .brackets import BracketTag, LabelSeq, decode, decode_with_repairs, encode, encode_with_drops
from .collate import CollationPolicy, apply_to_sentence, collate
from .conllu import (
    ConlluError,
    EmptyNodeError,
    IntegrityError,
    ParseError,
    Sentence,
    Token,
    load_conllu,
    read_conllu,
    save_conllu,
    write_conllu,
)
from .graph import DepForest, EudEdge, EudGraph, forest_of_sentence, graph_of_sentence
from .labels import delexicalize, relexicalize
from .metrics import DegreeStats, EvalReport, ScoringError, degree_stats, score
from .pipeline import roundtrip_corpus, split_corpus
from .predict import FrequencyPredictor, OraclePredictor, training_pairs
from .splitter import (
    TREE_NAMES,
    Repair,
    SplitConfig,
    SplitResult,
    resolve_cycles,
    split_all,
    split_basic,
    split_conjunct,
    split_control,
    split_relative,
)

__version__ = "0.1.0"

__all__ = [
    "BracketTag", "LabelSeq", "decode", "decode_with_repairs", "encode", "encode_with_drops",
    "CollationPolicy", "apply_to_sentence", "collate",
    "ConlluError", "EmptyNodeError", "IntegrityError", "ParseError",
    "Sentence", "Token", "load_conllu", "read_conllu", "save_conllu", "write_conllu",
    "DepForest", "EudEdge", "EudGraph", "forest_of_sentence", "graph_of_sentence",
    "delexicalize", "relexicalize",
    "DegreeStats", "EvalReport", "ScoringError", "degree_stats", "score",
    "roundtrip_corpus", "split_corpus",
    "FrequencyPredictor", "OraclePredictor", "training_pairs",
    "TREE_NAMES", "Repair", "SplitConfig", "SplitResult",
    "resolve_cycles", "split_all", "split_basic", "split_conjunct", "split_control",
    "split_relative",
]
