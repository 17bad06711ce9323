"""Scoring a catalog's matches against ground-truth variable spans.

A rule match counts as a true positive only when its span equals a
ground-truth variable span exactly; matches that cover too much, too
little, or static text are false positives. Recall asks the converse: how
many ground-truth variables were hit by some exact match.
"""

from __future__ import annotations

import csv
import json
from dataclasses import dataclass, field
from typing import Sequence

from ..corpus import GroundTruthEntry
from .masking import collect_rule_matches
from .rules import RuleCatalog

SUMMARY_ROW = "__dataset__"


@dataclass
class RuleMatchCounts:
    true_positives: int = 0
    false_positives: int = 0


@dataclass
class DatasetStats:
    precision: float
    recall: float
    total_variables: int
    matched_variables: int


@dataclass
class MatchReport:
    """Per-rule TP/FP counts plus dataset-level precision and recall."""

    per_rule: dict[str, RuleMatchCounts]
    dataset: DatasetStats
    enabled: dict[str, bool] = field(default_factory=dict)


def match_statistics(
    entries: Sequence[GroundTruthEntry], catalog: RuleCatalog
) -> MatchReport:
    """Score every enabled rule's matches against the entries' variables."""
    per_rule = {rule.name: RuleMatchCounts() for rule in catalog.rules}
    enabled = {rule.name: rule.enabled for rule in catalog.rules}
    total = 0
    matched = 0
    tp_sum = 0
    fp_sum = 0
    for entry in entries:
        spans = {occ.span for occ in entry.variables}
        total += len(entry.variables)
        hit: set[tuple[int, int]] = set()
        for rule_name, start, end in collect_rule_matches(entry.content, catalog):
            if (start, end) in spans:
                per_rule[rule_name].true_positives += 1
                tp_sum += 1
                hit.add((start, end))
            else:
                per_rule[rule_name].false_positives += 1
                fp_sum += 1
        matched += len(hit)
    precision = tp_sum / (tp_sum + fp_sum) if tp_sum + fp_sum else 0.0
    recall = matched / total if total else 0.0
    return MatchReport(
        per_rule=per_rule,
        dataset=DatasetStats(
            precision=precision,
            recall=recall,
            total_variables=total,
            matched_variables=matched,
        ),
        enabled=enabled,
    )


def macro_average(reports: Sequence[MatchReport]) -> tuple[float, float]:
    """Mean precision and recall across datasets, each weighted equally."""
    if not reports:
        return (0.0, 0.0)
    precision = sum(r.dataset.precision for r in reports) / len(reports)
    recall = sum(r.dataset.recall for r in reports) / len(reports)
    return (precision, recall)


def match_report_to_dict(report: MatchReport) -> dict:
    return {
        "per_rule": {
            name: {
                "true_positives": counts.true_positives,
                "false_positives": counts.false_positives,
                "enabled": report.enabled.get(name, True),
            }
            for name, counts in report.per_rule.items()
        },
        "dataset": {
            "precision": report.dataset.precision,
            "recall": report.dataset.recall,
            "total_variables": report.dataset.total_variables,
            "matched_variables": report.dataset.matched_variables,
        },
    }


def write_match_report_json(report: MatchReport, path) -> None:
    with open(path, "w", encoding="utf-8") as handle:
        json.dump(match_report_to_dict(report), handle, indent=2)
        handle.write("\n")


def write_match_report_csv(report: MatchReport, path) -> None:
    """One row per rule plus a summary row holding the dataset stats."""
    with open(path, "w", newline="", encoding="utf-8") as handle:
        writer = csv.writer(handle)
        writer.writerow(
            [
                "rule",
                "enabled",
                "true_positives",
                "false_positives",
                "precision",
                "recall",
                "total_variables",
                "matched_variables",
            ]
        )
        for name, counts in report.per_rule.items():
            writer.writerow(
                [
                    name,
                    report.enabled.get(name, True),
                    counts.true_positives,
                    counts.false_positives,
                    "",
                    "",
                    "",
                    "",
                ]
            )
        stats = report.dataset
        writer.writerow(
            [
                SUMMARY_ROW,
                "",
                "",
                "",
                f"{stats.precision:.6f}",
                f"{stats.recall:.6f}",
                stats.total_variables,
                stats.matched_variables,
            ]
        )
