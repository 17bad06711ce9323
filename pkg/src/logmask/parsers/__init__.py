"""Statistic-based template miners behind one ``parse`` surface.

Two miners ship: the prefix-tree miner (``"drain"``) and the token
frequency miner (``"lfa"``). Both tokenize on whitespace, group messages
by token count, and emit one template per line; neither merges consecutive
wildcards, so ``"<*> <*>"`` stays two tokens.

Other classic miners can sit behind the same surface. Two known behaviors
to plan for when porting them: miners that split on punctuation delimiters
(not just whitespace) emit templates whose separators are gone, so their
output needs re-alignment before template-level scoring; and clustering
miners built around frequent patterns assume every real template occurs
often, so singleton templates get absorbed into their nearest big cluster.
Neither is included here.
"""

from __future__ import annotations

from typing import Iterable, Sequence

from ..masker.masking import apply_masks, estimate_applicability
from ..masker.rules import RuleCatalog
from .base import (
    PARSER_KINDS,
    ConfigError,
    ParseOutcome,
    ParserConfig,
    load_structured_outcome,
    write_structured_csv,
    write_templates_csv,
)
from .drain import DrainParser, parse_drain
from .lfa import parse_lfa

__all__ = [
    "PARSER_KINDS",
    "ConfigError",
    "DrainParser",
    "ParseOutcome",
    "ParserConfig",
    "load_structured_outcome",
    "parse",
    "parse_drain",
    "parse_lfa",
    "parse_with_preprocessing",
    "write_structured_csv",
    "write_templates_csv",
]


def parse(
    contents: Iterable[tuple[int, str]], config: ParserConfig | None = None
) -> ParseOutcome:
    """Run the configured miner over ``(line_id, content)`` pairs."""
    config = config or ParserConfig()
    items = list(contents)
    if not items:
        raise ConfigError("nothing to parse: empty input")
    if config.parser_kind == "drain":
        assignments = parse_drain(
            items,
            depth=config.drain_depth,
            similarity_threshold=config.drain_similarity_threshold,
            max_children=config.drain_max_children,
        )
    else:
        assignments = parse_lfa(items)
    return ParseOutcome.from_assignments(assignments)


def parse_with_preprocessing(
    records: Sequence,
    catalog: RuleCatalog,
    config: ParserConfig | None = None,
    *,
    applicability_prefix: int = 2000,
    applicability_filter: bool = True,
) -> ParseOutcome:
    """Mask every record's content, then parse the masked lines.

    ``records`` is anything with ``line_id`` and ``content`` attributes.
    When ``applicability_filter`` is on, rules that never fire in the first
    ``applicability_prefix`` raw lines are disabled first; the effective
    catalog is recorded on the outcome.
    """
    contents = [(record.line_id, record.content) for record in records]
    effective = catalog
    if applicability_filter:
        effective = estimate_applicability(
            [text for _, text in contents], catalog, applicability_prefix
        )
    masked = [(line_id, apply_masks(text, effective)) for line_id, text in contents]
    outcome = parse(masked, config)
    outcome.catalog = effective
    return outcome
