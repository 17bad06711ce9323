"""Figures rendered next to the delimited report files."""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .masker.stats import MatchReport
from .metrics import EvaluationReport, Scores

_BAR_COLORS = ("#4878a8", "#e1812c", "#3a923a", "#c03d3e")
_METRICS = ("GA", "FGA", "PA", "FTA")


def render_metric_bars(report: EvaluationReport, path, title: str = "") -> None:
    """One bar per measure for a single run."""
    values = (report.ga, report.fga, report.pa, report.fta)
    fig, ax = plt.subplots(figsize=(5.0, 3.2))
    ax.bar(_METRICS, values, color=_BAR_COLORS, width=0.6)
    for x, value in enumerate(values):
        ax.text(x, value + 0.02, f"{value:.3f}", ha="center", fontsize=8)
    ax.set_ylim(0.0, 1.1)
    ax.set_ylabel("score")
    if title:
        ax.set_title(title)
    ax.grid(axis="y", alpha=0.3)
    ax.set_axisbelow(True)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def render_subgroup_bars(
    subgroups: dict[str, Scores], path, title: str = ""
) -> None:
    """Grouped bars: one cluster per band, one bar per measure."""
    labels = list(subgroups)
    if not labels:
        raise ValueError("no subgroup scores to plot")
    width = 0.8 / len(_METRICS)
    fig, ax = plt.subplots(figsize=(1.8 + 1.6 * len(labels), 3.4))
    for k, metric in enumerate(_METRICS):
        attr = metric.lower()
        values = [getattr(subgroups[label], attr) for label in labels]
        positions = [i + (k - 1.5) * width for i in range(len(labels))]
        ax.bar(positions, values, width=width, label=metric, color=_BAR_COLORS[k])
    ax.set_xticks(range(len(labels)))
    ax.set_xticklabels(labels)
    ax.set_ylim(0.0, 1.1)
    ax.set_ylabel("score")
    if title:
        ax.set_title(title)
    ax.legend(fontsize=8, ncol=len(_METRICS), loc="upper center")
    ax.grid(axis="y", alpha=0.3)
    ax.set_axisbelow(True)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def render_rule_match_bars(report: MatchReport, path, title: str = "") -> None:
    """Horizontal TP/FP bars, one row per rule that produced matches."""
    rows = [
        (name, counts.true_positives, counts.false_positives)
        for name, counts in report.per_rule.items()
        if counts.true_positives or counts.false_positives
    ]
    if not rows:
        rows = [("(no matches)", 0, 0)]
    names = [row[0] for row in rows]
    tp = [row[1] for row in rows]
    fp = [row[2] for row in rows]
    positions = range(len(rows))
    fig, ax = plt.subplots(figsize=(6.0, 1.2 + 0.4 * len(rows)))
    ax.barh(positions, tp, height=0.4, label="exact-span matches", color="#3a923a")
    ax.barh(
        [p + 0.4 for p in positions],
        fp,
        height=0.4,
        label="other matches",
        color="#c03d3e",
    )
    ax.set_yticks([p + 0.2 for p in positions])
    ax.set_yticklabels(names, fontsize=8)
    ax.invert_yaxis()
    ax.set_xlabel("matches")
    if title:
        ax.set_title(title)
    ax.legend(fontsize=8)
    ax.grid(axis="x", alpha=0.3)
    ax.set_axisbelow(True)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
