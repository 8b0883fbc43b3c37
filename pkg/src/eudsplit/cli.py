"""The ``eudsplit`` command: split, encode, decode, collate, eval, roundtrip, stats.

Data goes to files or stdout; logs and warnings go to stderr.  Exit status is
0 unless an error occurred; repairs and relexicalization warnings are counted
in reports instead of failing the run.
"""

from __future__ import annotations

import argparse
import contextlib
import json
import logging
import os
import sys
from dataclasses import dataclass

from .brackets import (
    LabelFormatError,
    decode_with_repairs,
    encode_with_drops,
    read_label_file,
    write_label_file,
)
from .collate import CollationPolicy, apply_to_sentence, collate
from .conllu import (
    ConlluError,
    Sentence,
    Token,
    load_conllu,
    save_conllu,
    with_tree,
    write_conllu,
)
from .figures import save_degree_figure, save_metric_figure
from .graph import forest_of_sentence
from .metrics import (
    ScoringError,
    degree_stats,
    format_report_text,
    format_stats_text,
    report_as_dict,
    score,
    score_groups,
    stats_as_dict,
    stats_csv,
)
from .pipeline import roundtrip_corpus, split_corpus
from .predict import FrequencyPredictor, training_pairs
from .splitter import TREE_NAMES, SplitConfig

log = logging.getLogger("eudsplit")


@dataclass(frozen=True)
class RunConfig:
    """Everything a subcommand run depends on, for reproducibility."""

    subcommand: str
    split: SplitConfig = SplitConfig()
    policy: CollationPolicy = CollationPolicy()
    trees: tuple[str, ...] = TREE_NAMES
    empty_nodes: str = "drop"
    seed: int = 0
    jobs: int = 1
    fmt: str = "text"


def _trees(value: str) -> tuple[str, ...]:
    names = tuple(t.strip() for t in value.split(",") if t.strip())
    unknown = [t for t in names if t not in TREE_NAMES]
    if unknown:
        raise argparse.ArgumentTypeError(f"unknown tree names {unknown}; choose from {TREE_NAMES}")
    if not names:
        raise argparse.ArgumentTypeError("at least one tree name required")
    return names


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="eudsplit",
        description="Split enhanced-dependency graphs into forests, encode them "
                    "as bracket labels, recombine and score them.",
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    def common(p, *, mode=False, trees=False, policy=False, fmt=None, figure=False):
        p.add_argument("--empty-nodes", choices=("drop", "reject"), default="drop",
                       help="what to do with empty nodes (ids like 5.1); default drop")
        p.add_argument("--jobs", type=int, default=1, metavar="N",
                       help="worker processes for per-sentence steps")
        p.add_argument("--seed", type=int, default=0,
                       help="seed recorded in the run configuration")
        if mode:
            p.add_argument("--mode", choices=("faithful", "fixed"), default="fixed",
                           help="faithful keeps the documented splitting quirks")
        if trees:
            p.add_argument("--trees", type=_trees, default=TREE_NAMES, metavar="NAMES",
                           help="comma-separated tree names, default all four")
        if policy:
            p.add_argument("--drop-extra-roots", action="store_true",
                           help="suppress root arcs from non-first trees for tokens "
                                "that already have a head")
            p.add_argument("--restrict-to-phenomenon", action="store_true",
                           help="non-first trees contribute only arcs that differ "
                                "from the first tree")
        if fmt:
            p.add_argument("--format", choices=fmt, default="text", dest="fmt")
        if figure:
            p.add_argument("--figure", metavar="PNG",
                           help="also render the report as a figure to this path")

    p = sub.add_parser("split", help="write one tree file per forest plus a repairs log")
    common(p, mode=True, trees=True)
    p.add_argument("input", help="CoNLL-U file with enhanced graphs in DEPS")
    p.add_argument("outdir", help="directory for <tree>.conllu files and repairs.tsv")

    p = sub.add_parser("encode", help="tree file -> bracket label file")
    common(p)
    p.add_argument("input", help="CoNLL-U tree file (forest in HEAD/DEPREL)")
    p.add_argument("-o", "--out", default="-", help="label file, '-' for stdout")

    p = sub.add_parser("decode", help="bracket label file -> tree file")
    common(p)
    p.add_argument("input", help="label file (form TAB tag TAB relation)")
    p.add_argument("-o", "--out", default="-", help="CoNLL-U tree file, '-' for stdout")

    p = sub.add_parser("collate", help="merge tree files back into an enhanced graph")
    common(p, trees=True, policy=True)
    p.add_argument("treefiles", nargs="+",
                   help="tree files, one per name in --trees, same order")
    p.add_argument("--original", required=True,
                   help="the CoNLL-U file the trees were split from (for lemmas etc.)")
    p.add_argument("-o", "--out", default="-", help="output CoNLL-U, '-' for stdout")

    p = sub.add_parser("eval", help="score predicted DEPS against gold")
    common(p, fmt=("text", "json"), figure=True)
    p.add_argument("gold", help="gold CoNLL-U file, or a directory of them")
    p.add_argument("pred", help="predicted CoNLL-U file, or a matching directory")

    p = sub.add_parser("roundtrip", help="split, encode, decode, collate and score in one pass")
    common(p, mode=True, trees=True, policy=True, fmt=("text", "json"), figure=True)
    p.add_argument("gold", help="gold CoNLL-U file")
    p.add_argument("--predictor", choices=("oracle", "frequency"), default="oracle",
                   help="label source; frequency trains the baseline on the same file")
    p.add_argument("--pred-out", metavar="FILE", help="also write the predictions here")

    p = sub.add_parser("stats", help="in-degree histogram and edge coverage")
    common(p, fmt=("text", "json", "csv"), figure=True)
    p.add_argument("gold", help="CoNLL-U file with enhanced graphs")

    return parser


@contextlib.contextmanager
def _out_stream(path: str):
    if path == "-":
        yield sys.stdout
    else:
        with open(path, "w", encoding="utf-8", newline="\n") as f:
            yield f


def cmd_split(args, cfg: RunConfig) -> int:
    sentences = load_conllu(args.input, empty_nodes=cfg.empty_nodes)
    results = split_corpus(sentences, cfg.split, jobs=cfg.jobs)
    os.makedirs(args.outdir, exist_ok=True)
    for tree in cfg.trees:
        path = os.path.join(args.outdir, f"{tree}.conllu")
        save_conllu(
            (with_tree(s, r.forest(tree).parents) for s, r in zip(sentences, results)),
            path,
        )
        log.info("wrote %s", path)
    repairs_path = os.path.join(args.outdir, "repairs.tsv")
    n_repairs = 0
    with open(repairs_path, "w", encoding="utf-8", newline="\n") as f:
        f.write("tree\tsent_id\ttoken\taction\tdetail\n")
        for i, (s, r) in enumerate(zip(sentences, results)):
            sid = s.sent_id or f"#{i + 1}"
            for rep in r.repairs:
                f.write(f"{rep.tree}\t{sid}\t{rep.token}\t{rep.action}\t{rep.detail}\n")
                n_repairs += 1
    log.info("%d sentences, %d repairs (%s)", len(sentences), n_repairs, repairs_path)
    return 0


def cmd_encode(args, cfg: RunConfig) -> int:
    sentences = load_conllu(args.input, empty_nodes=cfg.empty_nodes)
    items = []
    drops = 0
    for s in sentences:
        seq, dropped = encode_with_drops(forest_of_sentence(s))
        drops += len(dropped)
        items.append((tuple(t.form for t in s.tokens), seq))
    with _out_stream(args.out) as out:
        write_label_file(items, out)
    if drops:
        log.warning("%d arcs could not be encoded (same-direction crossings)", drops)
    return 0


def cmd_decode(args, cfg: RunConfig) -> int:
    with open(args.input, encoding="utf-8") as f:
        items = read_label_file(f)
    sentences = []
    n_repairs = 0
    for forms, seq in items:
        forest, repairs = decode_with_repairs(seq)
        n_repairs += len(repairs)
        tokens = tuple(
            Token(id=i, form=form, basic_head=h, basic_deprel=rel)
            for i, (form, (h, rel)) in enumerate(zip(forms, forest.parents), start=1)
        )
        sentences.append(Sentence(tokens=tokens))
    with _out_stream(args.out) as out:
        write_conllu(sentences, out)
    if n_repairs:
        log.warning("%d bracket repairs while decoding", n_repairs)
    return 0


def cmd_collate(args, cfg: RunConfig) -> int:
    if len(args.treefiles) != len(cfg.trees):
        raise ValueError(f"{len(cfg.trees)} tree names but {len(args.treefiles)} files given")
    originals = load_conllu(args.original, empty_nodes=cfg.empty_nodes)
    per_tree = {
        name: load_conllu(path, empty_nodes=cfg.empty_nodes)
        for name, path in zip(cfg.trees, args.treefiles)
    }
    for name, sents in per_tree.items():
        if len(sents) != len(originals):
            raise ValueError(f"{name} file has {len(sents)} sentences, original has {len(originals)}")
    warnings: list[str] = []
    out_sentences = []
    for i, orig in enumerate(originals):
        forests = {name: forest_of_sentence(per_tree[name][i]) for name in cfg.trees}
        graph = collate(forests, orig, cfg.policy, warn=warnings.append)
        out_sentences.append(apply_to_sentence(graph, orig))
    with _out_stream(args.out) as out:
        write_conllu(out_sentences, out)
    if warnings:
        log.warning("%d relexicalization warnings", len(warnings))
    return 0


def _load_eval_inputs(gold_path: str, pred_path: str, empty_nodes: str):
    if os.path.isdir(gold_path) and os.path.isdir(pred_path):
        names = sorted(n for n in os.listdir(gold_path) if n.endswith(".conllu"))
        missing = [n for n in names if not os.path.exists(os.path.join(pred_path, n))]
        if missing:
            raise ScoringError(f"predictions missing for {missing}")
        return [
            (os.path.splitext(n)[0],
             load_conllu(os.path.join(gold_path, n), empty_nodes),
             load_conllu(os.path.join(pred_path, n), empty_nodes))
            for n in names
        ]
    return None


def cmd_eval(args, cfg: RunConfig) -> int:
    groups = _load_eval_inputs(args.gold, args.pred, cfg.empty_nodes)
    if groups is not None:
        report = score_groups(groups)
    else:
        gold = load_conllu(args.gold, empty_nodes=cfg.empty_nodes)
        pred = load_conllu(args.pred, empty_nodes=cfg.empty_nodes)
        report = score(gold, pred)
    if cfg.fmt == "json":
        print(json.dumps(report_as_dict(report), indent=2, sort_keys=True))
    else:
        print(format_report_text(report))
    if args.figure:
        save_metric_figure(report, args.figure)
        log.info("figure written to %s", args.figure)
    return 0


def cmd_roundtrip(args, cfg: RunConfig) -> int:
    sentences = load_conllu(args.gold, empty_nodes=cfg.empty_nodes)
    predictor = None
    if args.predictor == "frequency":
        predictor = FrequencyPredictor()
        predictor.train(training_pairs(sentences, cfg.split))
    outcome = roundtrip_corpus(sentences, cfg.split, cfg.policy, trees=cfg.trees,
                               jobs=cfg.jobs, predictor=predictor)
    if cfg.fmt == "json":
        payload = report_as_dict(outcome.report)
        payload["warnings"] = outcome.counters
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        print(format_report_text(outcome.report))
        print()
        print("warnings: " + ", ".join(f"{k}={v}" for k, v in outcome.counters.items()))
    if args.pred_out:
        save_conllu(outcome.predictions, args.pred_out)
        log.info("predictions written to %s", args.pred_out)
    if args.figure:
        save_metric_figure(outcome.report, args.figure)
        log.info("figure written to %s", args.figure)
    return 0


def cmd_stats(args, cfg: RunConfig) -> int:
    sentences = load_conllu(args.gold, empty_nodes=cfg.empty_nodes)
    stats = degree_stats(sentences)
    if cfg.fmt == "json":
        print(json.dumps(stats_as_dict(stats), indent=2, sort_keys=True))
    elif cfg.fmt == "csv":
        sys.stdout.write(stats_csv(stats))
    else:
        print(format_stats_text(stats))
    if args.figure:
        save_degree_figure(stats, args.figure)
        log.info("figure written to %s", args.figure)
    return 0


_HANDLERS = {
    "split": cmd_split,
    "encode": cmd_encode,
    "decode": cmd_decode,
    "collate": cmd_collate,
    "eval": cmd_eval,
    "roundtrip": cmd_roundtrip,
    "stats": cmd_stats,
}


def _run_config(args) -> RunConfig:
    split = SplitConfig(mode=getattr(args, "mode", "fixed"))
    trees = tuple(getattr(args, "trees", TREE_NAMES))
    policy = CollationPolicy(
        tree_order=trees,
        drop_extra_roots=getattr(args, "drop_extra_roots", False),
        restrict_to_phenomenon=getattr(args, "restrict_to_phenomenon", False),
    )
    return RunConfig(
        subcommand=args.subcommand,
        split=split,
        policy=policy,
        trees=trees,
        empty_nodes=args.empty_nodes,
        seed=args.seed,
        jobs=args.jobs,
        fmt=getattr(args, "fmt", "text"),
    )


def main(argv: list[str] | None = None) -> int:
    logging.basicConfig(stream=sys.stderr, level=logging.INFO,
                        format="eudsplit: %(levelname)s: %(message)s")
    args = build_parser().parse_args(argv)
    try:
        cfg = _run_config(args)
        return _HANDLERS[args.subcommand](args, cfg)
    except (ConlluError, ScoringError, LabelFormatError, OSError, ValueError) as exc:
        log.error("%s", exc)
        return 1


if __name__ == "__main__":
    sys.exit(main())
