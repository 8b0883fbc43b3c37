"""Render report figures to image files (headless matplotlib)."""

from __future__ import annotations

from typing import Mapping

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .metrics import METRIC_NAMES, DegreeStats, EvalReport


def save_degree_figure(stats: DegreeStats, path: str) -> None:
    """Bar chart of nodes per in-degree; log scale, the counts span decades."""
    degrees = [d for d, _ in stats.histogram]
    counts = [c for _, c in stats.histogram]
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.bar(degrees, counts, color="#3b6ea5", edgecolor="black", linewidth=0.4)
    if counts and max(counts) > 0:
        ax.set_yscale("log")
    ax.set_xlabel("incoming edges per node")
    ax.set_ylabel("nodes")
    ax.set_xticks(degrees)
    ax.set_title("in-degree distribution")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def save_metric_figure(reports: Mapping[str, EvalReport] | EvalReport, path: str) -> None:
    """Grouped F1 bars, one group per corpus when a breakdown is given."""
    if isinstance(reports, EvalReport):
        reports = dict(reports.breakdown) or {"all": reports}
    names = list(reports)
    width = 0.8 / len(METRIC_NAMES)
    fig, ax = plt.subplots(figsize=(max(6, 0.8 * len(names) + 2), 4))
    for j, metric in enumerate(METRIC_NAMES):
        xs = [i + (j - 1) * width for i in range(len(names))]
        ys = [reports[name].metric(metric).f1 for name in names]
        ax.bar(xs, ys, width=width, label=metric)
    ax.set_xticks(range(len(names)))
    ax.set_xticklabels(names, rotation=45, ha="right")
    ax.set_ylabel("F1")
    ax.set_ylim(0, 105)
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
