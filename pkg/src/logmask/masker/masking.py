"""Ordered application of masking rules with placeholder shielding.

Text that a rule has already masked (and any ``<*>`` present in the input)
is opaque to every later rule: rules only ever see the unmasked spans
between shields. That makes masking idempotent and makes rule order the
tie-breaker for contested text.
"""

from __future__ import annotations

import functools
import re
from dataclasses import replace
from typing import Sequence

from .rules import MASK, MaskRule, RuleCatalog


@functools.lru_cache(maxsize=256)
def _compiled(pattern: str) -> re.Pattern[str]:
    return re.compile(pattern)


def _seed_parts(content: str) -> list[tuple[str, bool]]:
    # (text, shielded); pre-existing placeholders start out shielded.
    parts: list[tuple[str, bool]] = []
    for i, piece in enumerate(content.split(MASK)):
        if i:
            parts.append((MASK, True))
        if piece:
            parts.append((piece, False))
    return parts


def apply_masks(content: str, catalog: RuleCatalog) -> str:
    """Apply every enabled rule in catalog order and return the masked text."""
    parts = _seed_parts(content)
    for rule in catalog.enabled_rules:
        pattern = _compiled(rule.pattern)
        next_parts: list[tuple[str, bool]] = []
        for text, shielded in parts:
            if shielded:
                next_parts.append((text, shielded))
                continue
            pos = 0
            for match in pattern.finditer(text):
                if match.end() == match.start():
                    continue
                if match.start() > pos:
                    next_parts.append((text[pos : match.start()], False))
                next_parts.append((rule.mask, True))
                pos = match.end()
            if pos < len(text):
                next_parts.append((text[pos:], False))
        parts = next_parts
    return "".join(text for text, _ in parts)


def collect_rule_matches(
    content: str, catalog: RuleCatalog
) -> list[tuple[str, int, int]]:
    """Match spans over the original content, honoring order and shielding.

    Returns ``(rule_name, start, end)`` triples sorted by position. Spans
    never overlap; pre-existing ``<*>`` text is shielded but not reported.
    """
    segments: list[tuple[int, int]] = []
    pos = 0
    for i, piece in enumerate(content.split(MASK)):
        if i:
            pos += len(MASK)
        if piece:
            segments.append((pos, pos + len(piece)))
            pos += len(piece)
    matches: list[tuple[str, int, int]] = []
    for rule in catalog.enabled_rules:
        pattern = _compiled(rule.pattern)
        next_segments: list[tuple[int, int]] = []
        for seg_start, seg_end in segments:
            text = content[seg_start:seg_end]
            cursor = 0
            for match in pattern.finditer(text):
                if match.end() == match.start():
                    continue
                matches.append(
                    (rule.name, seg_start + match.start(), seg_start + match.end())
                )
                if match.start() > cursor:
                    next_segments.append((seg_start + cursor, seg_start + match.start()))
                cursor = match.end()
            if cursor < seg_end - seg_start:
                next_segments.append((seg_start + cursor, seg_end))
        segments = next_segments
    matches.sort(key=lambda item: (item[1], item[2]))
    return matches


def estimate_applicability(
    lines: Sequence[str], catalog: RuleCatalog, prefix_size: int = 2000
) -> RuleCatalog:
    """Disable enabled rules that match nothing in the first lines.

    Each rule is searched independently against the raw (unmasked) prefix;
    a rule that never fires there is assumed inapplicable to the dataset
    and switched off. Rules already disabled stay disabled. On empty input
    the catalog comes back unchanged, with a warning recorded.
    """
    if prefix_size < 1:
        raise ValueError("prefix_size must be >= 1")
    if not lines:
        return replace(
            catalog,
            warnings=catalog.warnings
            + ("applicability estimation skipped: no input lines",),
        )
    prefix = lines[:prefix_size]
    new_rules: list[MaskRule] = []
    for rule in catalog.rules:
        if not rule.enabled:
            new_rules.append(rule)
            continue
        pattern = _compiled(rule.pattern)
        if any(pattern.search(line) for line in prefix):
            new_rules.append(rule)
        else:
            new_rules.append(replace(rule, enabled=False))
    return replace(catalog, rules=tuple(new_rules))
