"""Shared parser surface: configuration, outcomes, and delimited exports."""

from __future__ import annotations

import csv
from dataclasses import dataclass, field
from typing import Iterable

from ..masker.rules import RuleCatalog

PARSER_KINDS = ("drain", "lfa")


class ConfigError(ValueError):
    """Invalid parser configuration."""


@dataclass(frozen=True)
class ParserConfig:
    """Which miner to run and its knobs. Drain fields are ignored by lfa."""

    parser_kind: str = "drain"
    drain_depth: int = 4
    drain_similarity_threshold: float = 0.4
    drain_max_children: int = 100

    def __post_init__(self) -> None:
        if self.parser_kind not in PARSER_KINDS:
            raise ConfigError(
                f"unknown parser {self.parser_kind!r}; expected one of {PARSER_KINDS}"
            )
        if self.drain_depth < 3:
            raise ConfigError("drain_depth must be >= 3")
        if not 0.0 < self.drain_similarity_threshold <= 1.0:
            raise ConfigError("drain_similarity_threshold must be in (0, 1]")
        if self.drain_max_children < 1:
            raise ConfigError("drain_max_children must be >= 1")


@dataclass
class ParseOutcome:
    """Template per line plus the line-id groups sharing each template.

    ``groups`` is keyed by template string, so clusters that converge on
    the same template merge here. ``catalog`` records the effective
    preprocessing catalog when the pipeline ran with one.
    """

    per_line_template: dict[int, str]
    groups: dict[str, set[int]]
    catalog: RuleCatalog | None = None

    @classmethod
    def from_assignments(
        cls,
        assignments: Iterable[tuple[int, str]],
        catalog: RuleCatalog | None = None,
    ) -> "ParseOutcome":
        per_line: dict[int, str] = {}
        groups: dict[str, set[int]] = {}
        for line_id, template in sorted(assignments):
            if line_id in per_line:
                raise ValueError(f"duplicate line id {line_id}")
            per_line[line_id] = template
            groups.setdefault(template, set()).add(line_id)
        return cls(per_line, groups, catalog)


def write_structured_csv(outcome: ParseOutcome, path) -> None:
    """One row per message, in line-id order."""
    with open(path, "w", newline="", encoding="utf-8") as handle:
        writer = csv.writer(handle)
        writer.writerow(["LineId", "EventTemplate"])
        for line_id, template in outcome.per_line_template.items():
            writer.writerow([line_id, template])


def write_templates_csv(outcome: ParseOutcome, path) -> None:
    """One row per distinct template with its group size."""
    with open(path, "w", newline="", encoding="utf-8") as handle:
        writer = csv.writer(handle)
        writer.writerow(["EventTemplate", "Occurrences"])
        for template, line_ids in outcome.groups.items():
            writer.writerow([template, len(line_ids)])


def load_structured_outcome(path) -> ParseOutcome:
    """Read back a file written by :func:`write_structured_csv`."""
    with open(path, newline="", encoding="utf-8") as handle:
        reader = csv.DictReader(handle)
        if not reader.fieldnames or "LineId" not in reader.fieldnames:
            raise ValueError(f"{path}: not a structured outcome file")
        assignments = [
            (int(row["LineId"]), row["EventTemplate"]) for row in reader
        ]
    return ParseOutcome.from_assignments(assignments)
