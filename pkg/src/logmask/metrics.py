"""Parsing quality metrics and subgroup breakdowns.

Four measures, two per axis:

- grouping accuracy (GA): fraction of messages whose predicted group is
  exactly their ground-truth group, and its group-level counterpart FGA
  (harmonic mean of group precision/recall);
- parsing accuracy (PA): fraction of messages whose predicted template
  string equals the truth after whitespace normalization, and its
  group-level counterpart FTA, which demands both the line set and the
  template string match.

Message-level measures weight frequent templates heavily; the F-measures
weight every template equally. Subgroup breakdowns recompute all four on
restricted message sets: the most/least frequent template bands, or bands
by placeholder count.
"""

from __future__ import annotations

import csv
import json
import math
from collections import Counter
from dataclasses import dataclass, field
from typing import Sequence

from .corpus import GroundTruthEntry, count_placeholders
from .parsers.base import ParseOutcome

MOST_FREQUENT = "most_frequent"
LEAST_FREQUENT = "least_frequent"

DEFAULT_COMPLEXITY_BOUNDS: tuple[tuple[int, int | None], ...] = (
    (0, 0),
    (1, 4),
    (5, None),
)


class EvaluationInputError(ValueError):
    """Prediction and ground truth do not describe the same messages."""


@dataclass(frozen=True)
class SubgroupSpec:
    """Which subgroup axis to break down, and its parameters."""

    kind: str = "frequency"
    frequency_fraction: float = 0.10
    complexity_bounds: tuple[tuple[int, int | None], ...] = DEFAULT_COMPLEXITY_BOUNDS

    def __post_init__(self) -> None:
        if self.kind not in ("frequency", "complexity"):
            raise ValueError(f"unknown subgroup kind {self.kind!r}")
        if not 0.0 < self.frequency_fraction <= 0.5:
            raise ValueError("frequency_fraction must be in (0, 0.5]")
        if not self.complexity_bounds:
            raise ValueError("complexity_bounds must be non-empty")


@dataclass
class Scores:
    """The four measures over one message set."""

    ga: float
    pa: float
    fga: float
    fta: float


@dataclass
class EvaluationReport:
    ga: float
    pa: float
    fga: float
    fga_precision: float
    fga_recall: float
    fta: float
    fta_precision: float
    fta_recall: float
    messages: int
    truth_templates: int
    predicted_templates: int
    subgroups: dict[str, Scores] = field(default_factory=dict)


def normalize_template(text: str) -> str:
    return " ".join(text.split())


def _truth_maps(
    truth: Sequence[GroundTruthEntry],
) -> tuple[dict[str, set[int]], dict[int, str]]:
    groups: dict[str, set[int]] = {}
    template_of: dict[int, str] = {}
    for entry in truth:
        groups.setdefault(entry.template, set()).add(entry.line_id)
        template_of[entry.line_id] = entry.template
    return groups, template_of


def _check_alignment(pred: ParseOutcome, template_of: dict[int, str]) -> None:
    if not template_of:
        raise EvaluationInputError("ground truth is empty")
    if set(template_of) != set(pred.per_line_template):
        raise EvaluationInputError(
            "prediction and ground truth cover different line ids"
        )


def grouping_accuracy(pred: ParseOutcome, truth: Sequence[GroundTruthEntry]) -> float:
    """Fraction of messages grouped with exactly their true peers."""
    truth_groups, template_of = _truth_maps(truth)
    _check_alignment(pred, template_of)
    correct = 0
    for line_id, template in pred.per_line_template.items():
        if pred.groups[template] == truth_groups[template_of[line_id]]:
            correct += 1
    return correct / len(pred.per_line_template)


def parsing_accuracy(pred: ParseOutcome, truth: Sequence[GroundTruthEntry]) -> float:
    """Fraction of messages whose predicted template string is right."""
    _, template_of = _truth_maps(truth)
    _check_alignment(pred, template_of)
    correct = sum(
        1
        for line_id, template in pred.per_line_template.items()
        if normalize_template(template) == normalize_template(template_of[line_id])
    )
    return correct / len(pred.per_line_template)


def _f1(precision: float, recall: float) -> float:
    if precision + recall == 0.0:
        return 0.0
    return 2 * precision * recall / (precision + recall)


def f1_group_accuracy(
    pred: ParseOutcome, truth: Sequence[GroundTruthEntry]
) -> tuple[float, float, float]:
    """Group-level F-measure on line sets alone: ``(fga, precision, recall)``."""
    truth_groups, template_of = _truth_maps(truth)
    _check_alignment(pred, template_of)
    truth_sets = {frozenset(ids) for ids in truth_groups.values()}
    correct = sum(1 for ids in pred.groups.values() if frozenset(ids) in truth_sets)
    precision = correct / len(pred.groups) if pred.groups else 0.0
    recall = correct / len(truth_groups) if truth_groups else 0.0
    return (_f1(precision, recall), precision, recall)


def f1_template_accuracy(
    pred: ParseOutcome, truth: Sequence[GroundTruthEntry]
) -> tuple[float, float, float]:
    """Group-level F-measure demanding the template string match too."""
    truth_groups, template_of = _truth_maps(truth)
    _check_alignment(pred, template_of)
    truth_by_set = {frozenset(ids): tpl for tpl, ids in truth_groups.items()}
    correct = 0
    for template, ids in pred.groups.items():
        truth_template = truth_by_set.get(frozenset(ids))
        if truth_template is not None and normalize_template(
            template
        ) == normalize_template(truth_template):
            correct += 1
    precision = correct / len(pred.groups) if pred.groups else 0.0
    recall = correct / len(truth_groups) if truth_groups else 0.0
    return (_f1(precision, recall), precision, recall)


def frequency_subgroups(
    truth: Sequence[GroundTruthEntry], fraction: float = 0.10
) -> dict[str, list[str]]:
    """Most and least frequent template bands, ``ceil(fraction * T)`` each.

    Templates sort by descending occurrence count with lexicographic
    tie-break. The bottom band shrinks rather than overlap the top band
    when the corpus has very few templates.
    """
    if not 0.0 < fraction <= 0.5:
        raise ValueError("fraction must be in (0, 0.5]")
    counts = Counter(entry.template for entry in truth)
    ordered = sorted(counts, key=lambda tpl: (-counts[tpl], tpl))
    k = math.ceil(fraction * len(ordered))
    return {
        MOST_FREQUENT: ordered[:k],
        LEAST_FREQUENT: ordered[max(k, len(ordered) - k) :],
    }


def _band_label(low: int, high: int | None) -> str:
    if high is None:
        return f"p>={low}"
    if low == high:
        return f"p={low}"
    return f"{low}<=p<={high}"


def complexity_subgroups(
    truth: Sequence[GroundTruthEntry],
    bounds: tuple[tuple[int, int | None], ...] = DEFAULT_COMPLEXITY_BOUNDS,
) -> dict[str, list[str]]:
    """Template bands by placeholder count; the bands partition templates."""
    bands: dict[str, list[str]] = {_band_label(lo, hi): [] for lo, hi in bounds}
    for template in sorted({entry.template for entry in truth}):
        placeholders = count_placeholders(template)
        for (low, high), label in zip(bounds, bands):
            if placeholders >= low and (high is None or placeholders <= high):
                bands[label].append(template)
                break
    return bands


def _restrict(pred: ParseOutcome, line_ids: set[int]) -> ParseOutcome:
    per_line = {
        line_id: template
        for line_id, template in pred.per_line_template.items()
        if line_id in line_ids
    }
    groups: dict[str, set[int]] = {}
    for template, ids in pred.groups.items():
        kept = ids & line_ids
        if kept:
            groups[template] = kept
    return ParseOutcome(per_line, groups, pred.catalog)


def score_all(pred: ParseOutcome, truth: Sequence[GroundTruthEntry]) -> Scores:
    return Scores(
        ga=grouping_accuracy(pred, truth),
        pa=parsing_accuracy(pred, truth),
        fga=f1_group_accuracy(pred, truth)[0],
        fta=f1_template_accuracy(pred, truth)[0],
    )


def subgroup_breakdowns(
    pred: ParseOutcome,
    truth: Sequence[GroundTruthEntry],
    spec: SubgroupSpec,
) -> dict[str, Scores]:
    """All four measures recomputed per band, on that band's messages only."""
    if spec.kind == "frequency":
        bands = frequency_subgroups(truth, spec.frequency_fraction)
    else:
        bands = complexity_subgroups(truth, spec.complexity_bounds)
    out: dict[str, Scores] = {}
    for label, templates in bands.items():
        wanted = set(templates)
        sub_truth = [entry for entry in truth if entry.template in wanted]
        if not sub_truth:
            continue
        line_ids = {entry.line_id for entry in sub_truth}
        out[label] = score_all(_restrict(pred, line_ids), sub_truth)
    return out


def evaluate(
    pred: ParseOutcome,
    truth: Sequence[GroundTruthEntry],
    subgroup: SubgroupSpec | None = None,
) -> EvaluationReport:
    """Compute the full report, optionally with one subgroup breakdown."""
    ga = grouping_accuracy(pred, truth)
    pa = parsing_accuracy(pred, truth)
    fga, fga_precision, fga_recall = f1_group_accuracy(pred, truth)
    fta, fta_precision, fta_recall = f1_template_accuracy(pred, truth)
    truth_groups, _ = _truth_maps(truth)
    return EvaluationReport(
        ga=ga,
        pa=pa,
        fga=fga,
        fga_precision=fga_precision,
        fga_recall=fga_recall,
        fta=fta,
        fta_precision=fta_precision,
        fta_recall=fta_recall,
        messages=len(truth),
        truth_templates=len(truth_groups),
        predicted_templates=len(pred.groups),
        subgroups=subgroup_breakdowns(pred, truth, subgroup) if subgroup else {},
    )


def report_to_dict(report: EvaluationReport) -> dict:
    return {
        "ga": report.ga,
        "pa": report.pa,
        "fga": report.fga,
        "fga_precision": report.fga_precision,
        "fga_recall": report.fga_recall,
        "fta": report.fta,
        "fta_precision": report.fta_precision,
        "fta_recall": report.fta_recall,
        "messages": report.messages,
        "truth_templates": report.truth_templates,
        "predicted_templates": report.predicted_templates,
        "subgroups": {
            label: {"ga": s.ga, "pa": s.pa, "fga": s.fga, "fta": s.fta}
            for label, s in report.subgroups.items()
        },
    }


def write_report_json(report: EvaluationReport, path) -> None:
    with open(path, "w", encoding="utf-8") as handle:
        json.dump(report_to_dict(report), handle, indent=2)
        handle.write("\n")


def write_report_csv(
    report: EvaluationReport, path, dataset: str = "", configuration: str = ""
) -> None:
    """Flat rows in table layout: GA, FGA, PA, FTA. Band rows follow the
    overall row when a breakdown is present."""
    with open(path, "w", newline="", encoding="utf-8") as handle:
        writer = csv.writer(handle)
        writer.writerow(["dataset", "configuration", "subgroup", "GA", "FGA", "PA", "FTA"])
        writer.writerow(
            [
                dataset,
                configuration,
                "",
                f"{report.ga:.6f}",
                f"{report.fga:.6f}",
                f"{report.pa:.6f}",
                f"{report.fta:.6f}",
            ]
        )
        for label, scores in report.subgroups.items():
            writer.writerow(
                [
                    dataset,
                    configuration,
                    label,
                    f"{scores.ga:.6f}",
                    f"{scores.fga:.6f}",
                    f"{scores.pa:.6f}",
                    f"{scores.fta:.6f}",
                ]
            )
