"""Edge-F1 scoring of enhanced graphs and in-degree statistics.

Three granularities, all micro-averaged over the corpus:

* EUAS   matches edges on ``(head, dep)``;
* EULAS  matches on ``(head, dep, relation up to the first ':')``;
* ELAS   matches on ``(head, dep, full relation string)``.

Scores are percentages.  By construction ELAS <= EULAS <= EUAS.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Sequence

from .conllu import Sentence
from .labels import base_relation

METRIC_NAMES = ("EUAS", "EULAS", "ELAS")


class ScoringError(Exception):
    pass


@dataclass(frozen=True)
class MetricScore:
    correct: int
    gold_total: int
    pred_total: int

    @property
    def precision(self) -> float:
        return 100.0 * self.correct / self.pred_total if self.pred_total else 0.0

    @property
    def recall(self) -> float:
        return 100.0 * self.correct / self.gold_total if self.gold_total else 0.0

    @property
    def f1(self) -> float:
        denom = self.gold_total + self.pred_total
        return 200.0 * self.correct / denom if denom else 0.0

    def __add__(self, other: "MetricScore") -> "MetricScore":
        return MetricScore(self.correct + other.correct,
                           self.gold_total + other.gold_total,
                           self.pred_total + other.pred_total)


@dataclass(frozen=True)
class EvalReport:
    euas: MetricScore
    eulas: MetricScore
    elas: MetricScore
    breakdown: tuple[tuple[str, "EvalReport"], ...] = ()

    def metric(self, name: str) -> MetricScore:
        return {"EUAS": self.euas, "EULAS": self.eulas, "ELAS": self.elas}[name]


def _edge_sets(s: Sentence):
    full = {(h, t.id, rel) for t in s.tokens for h, rel in t.deps}
    unlabeled = {(h, d) for h, d, _ in full}
    coarse = {(h, d, base_relation(rel)) for h, d, rel in full}
    return unlabeled, coarse, full


def score(gold: Sequence[Sentence], pred: Sequence[Sentence]) -> EvalReport:
    """Micro-averaged EUAS/EULAS/ELAS of predicted graphs against gold."""
    if len(gold) != len(pred):
        raise ScoringError(f"gold has {len(gold)} sentences, predictions {len(pred)}")
    counts = [MetricScore(0, 0, 0)] * 3
    for i, (g, p) in enumerate(zip(gold, pred)):
        label = g.sent_id or f"#{i + 1}"
        if g.n != p.n:
            raise ScoringError(f"sentence {label}: {g.n} gold tokens vs {p.n} predicted")
        if g.sent_id and p.sent_id and g.sent_id != p.sent_id:
            raise ScoringError(f"sentence {label}: prediction is {p.sent_id!r}")
        for k, (gs, ps) in enumerate(zip(_edge_sets(g), _edge_sets(p))):
            counts[k] = counts[k] + MetricScore(len(gs & ps), len(gs), len(ps))
    return EvalReport(*counts)


def score_groups(groups: Iterable[tuple[str, Sequence[Sentence], Sequence[Sentence]]]) -> EvalReport:
    """Score several named corpora; totals are micro-averaged across them."""
    parts = []
    totals = [MetricScore(0, 0, 0)] * 3
    for name, gold, pred in groups:
        report = score(gold, pred)
        parts.append((name, report))
        for k, metric in enumerate((report.euas, report.eulas, report.elas)):
            totals[k] = totals[k] + metric
    return EvalReport(*totals, breakdown=tuple(parts))


@dataclass(frozen=True)
class DegreeStats:
    """In-degree histogram of the enhanced graphs plus cumulative edge coverage.

    ``coverage`` maps each cap k (1..max degree) to the percentage of edges
    that survive keeping at most k incoming edges per node; it is
    nondecreasing and reaches 100 at the maximum observed degree.
    """

    histogram: tuple[tuple[int, int], ...]
    coverage: tuple[tuple[int, float], ...]
    total_nodes: int
    total_edges: int

    def coverage_at(self, k: int) -> float:
        return dict(self.coverage)[k]


def degree_stats(sentences: Iterable[Sentence]) -> DegreeStats:
    counts: dict[int, int] = {}
    for s in sentences:
        for tok in s.tokens:
            counts[len(tok.deps)] = counts.get(len(tok.deps), 0) + 1
    histogram = tuple(sorted(counts.items()))
    total_nodes = sum(counts.values())
    total_edges = sum(deg * cnt for deg, cnt in counts.items())
    coverage = []
    if total_edges:
        for k in range(1, max(counts) + 1):
            kept = sum(min(k, deg) * cnt for deg, cnt in counts.items())
            coverage.append((k, 100.0 * kept / total_edges))
    return DegreeStats(histogram, tuple(coverage), total_nodes, total_edges)


def report_as_dict(report: EvalReport) -> dict:
    d = {
        name.lower(): {
            "precision": round(m.precision, 2),
            "recall": round(m.recall, 2),
            "f1": round(m.f1, 2),
            "correct": m.correct,
            "gold": m.gold_total,
            "predicted": m.pred_total,
        }
        for name, m in zip(METRIC_NAMES, (report.euas, report.eulas, report.elas))
    }
    if report.breakdown:
        d["breakdown"] = {name: report_as_dict(sub) for name, sub in report.breakdown}
    return d


def format_report_text(report: EvalReport) -> str:
    lines = [f"{'metric':<8}{'precision':>10}{'recall':>10}{'f1':>10}"]
    for name, m in zip(METRIC_NAMES, (report.euas, report.eulas, report.elas)):
        lines.append(f"{name:<8}{m.precision:>10.2f}{m.recall:>10.2f}{m.f1:>10.2f}")
    for name, sub in report.breakdown:
        lines.append("")
        lines.append(name)
        for mn, m in zip(METRIC_NAMES, (sub.euas, sub.eulas, sub.elas)):
            lines.append(f"  {mn:<8}{m.precision:>8.2f}{m.recall:>8.2f}{m.f1:>8.2f}")
    return "\n".join(lines)


def stats_as_dict(stats: DegreeStats) -> dict:
    return {
        "nodes": stats.total_nodes,
        "edges": stats.total_edges,
        "histogram": {str(deg): cnt for deg, cnt in stats.histogram},
        "coverage": {str(k): round(pct, 2) for k, pct in stats.coverage},
    }


def format_stats_text(stats: DegreeStats) -> str:
    lines = [f"{'in-degree':>9}  {'nodes':>8}"]
    for deg, cnt in stats.histogram:
        lines.append(f"{deg:>9}  {cnt:>8}")
    lines.append("")
    lines.append(f"{'max heads':>9}  {'coverage':>8}")
    for k, pct in stats.coverage:
        lines.append(f"{k:>9}  {pct:>7.2f}%")
    return "\n".join(lines)


def stats_csv(stats: DegreeStats) -> str:
    coverage = dict(stats.coverage)
    lines = ["in_degree,node_count,coverage_pct"]
    for deg, cnt in stats.histogram:
        pct = coverage.get(deg, 0.0 if deg == 0 else 100.0)
        lines.append(f"{deg},{cnt},{pct:.2f}")
    return "\n".join(lines) + "\n"


def report_json(report: EvalReport, **extra) -> str:
    d = report_as_dict(report)
    d.update(extra)
    return json.dumps(d, indent=2, sort_keys=True) + "\n"
