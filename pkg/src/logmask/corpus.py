"""Loading log data and extracting variables from template annotations.

Two input shapes are supported: structured CSVs that carry a template per
message (columns ``LineId``, ``Content``, ``EventTemplate``) and raw ``.log``
files paired with a header format string such as
``"<Date> <Time> <Level> <Content>"``. Templates mark variable positions
with the ``<*>`` placeholder.
"""

from __future__ import annotations

import csv
import functools
import re
from dataclasses import dataclass, field
from typing import Sequence

PLACEHOLDER = "<*>"

_TEMPLATE_SPLIT = re.compile(r"(<\*>)")
_FORMAT_FIELD = re.compile(r"(<[^<>]+>)")
_WS_RUN = re.compile(r"(\s+)")

_REQUIRED_COLUMNS = ("LineId", "Content", "EventTemplate")


class SchemaError(ValueError):
    """Input file does not have the expected columns or row shape."""


class FormatError(ValueError):
    """A log-format string cannot be used to split header fields."""


@dataclass(frozen=True)
class VariableOccurrence:
    """One extracted variable: its text and half-open span in the content."""

    text: str
    start: int
    end: int
    placeholder_index: int

    @property
    def span(self) -> tuple[int, int]:
        return (self.start, self.end)


@dataclass(frozen=True)
class LogRecord:
    """A raw log line split into header fields and message content."""

    line_id: int
    raw_line: str
    content: str
    header_fields: dict[str, str] = field(default_factory=dict)


@dataclass(frozen=True)
class GroundTruthEntry:
    """Message content plus its oracle template and extracted variables.

    ``extraction_failed`` flags entries whose template does not match their
    own content; those keep an empty variable tuple and are reported rather
    than dropped, so callers can still group and score by template string.
    """

    line_id: int
    content: str
    template: str
    variables: tuple[VariableOccurrence, ...] = ()
    extraction_failed: bool = False


def count_placeholders(template: str) -> int:
    return template.count(PLACEHOLDER)


def _literal_regex(text: str) -> str:
    # Whitespace runs in the template are lenient: they match any run in
    # the content. Everything else must match exactly.
    parts = []
    for chunk in _WS_RUN.split(text):
        if not chunk:
            continue
        parts.append(r"\s+" if chunk.isspace() else re.escape(chunk))
    return "".join(parts)


@functools.lru_cache(maxsize=4096)
def template_to_matcher(template: str, greedy: bool = False) -> re.Pattern[str]:
    """Compile a template into a pattern with one capture group per ``<*>``.

    Captures are non-greedy by default (shortest fills first) and may be
    empty. Use with ``fullmatch`` so the whole content must be covered.
    """
    group = "(.*)" if greedy else "(.*?)"
    parts = [
        group if piece == PLACEHOLDER else _literal_regex(piece)
        for piece in _TEMPLATE_SPLIT.split(template)
        if piece
    ]
    return re.compile("".join(parts), re.DOTALL)


def extract_variables(content: str, template: str) -> list[VariableOccurrence] | None:
    """Recover one occurrence per placeholder, or None if nothing matches.

    Non-greedy extraction runs first; a greedy retry covers fills that a
    shortest-match split would leave misaligned. The result is always
    complete: one occurrence per placeholder, spans sorted by start.
    """
    for greedy in (False, True):
        match = template_to_matcher(template, greedy).fullmatch(content)
        if match is None:
            continue
        return [
            VariableOccurrence(
                text=match.group(i),
                start=match.start(i),
                end=match.end(i),
                placeholder_index=i - 1,
            )
            for i in range(1, match.re.groups + 1)
        ]
    return None


def reconstruct(template: str, variables: Sequence[str]) -> str:
    """Substitute variable texts back into the template, left to right."""
    pieces = template.split(PLACEHOLDER)
    if len(pieces) - 1 != len(variables):
        raise ValueError(
            f"template has {len(pieces) - 1} placeholders, "
            f"got {len(variables)} variables"
        )
    out = [pieces[0]]
    for text, piece in zip(variables, pieces[1:]):
        out.append(text)
        out.append(piece)
    return "".join(out)


def load_structured_csv(
    path, column_map: dict[str, str] | None = None
) -> list[GroundTruthEntry]:
    """Load a structured CSV into ground-truth entries.

    ``column_map`` renames required columns for files that deviate from the
    usual header, e.g. ``{"Content": "Message"}``. Extra columns are
    ignored. Rows whose template does not match their content come back
    flagged, never silently fixed.
    """
    mapping = {name: name for name in _REQUIRED_COLUMNS}
    if column_map:
        mapping.update(column_map)
    entries: list[GroundTruthEntry] = []
    with open(path, newline="", encoding="utf-8") as handle:
        reader = csv.DictReader(handle)
        header = reader.fieldnames or []
        for actual in mapping.values():
            if actual not in header:
                raise SchemaError(f"missing required column {actual!r} in {path}")
        for row_no, row in enumerate(reader, start=2):
            try:
                line_id = int(row[mapping["LineId"]])
                content = row[mapping["Content"]]
                template = row[mapping["EventTemplate"]]
            except (TypeError, ValueError) as exc:
                raise SchemaError(f"{path}: malformed row {row_no}") from exc
            if content is None or template is None:
                raise SchemaError(f"{path}: malformed row {row_no}")
            variables = extract_variables(content, template)
            entries.append(
                GroundTruthEntry(
                    line_id=line_id,
                    content=content,
                    template=template,
                    variables=tuple(variables) if variables is not None else (),
                    extraction_failed=variables is None,
                )
            )
    return entries


def build_format_pattern(log_format: str) -> re.Pattern[str]:
    """Compile a header format string into a line-matching pattern.

    ``<Name>`` fields become named non-greedy captures except ``<Content>``,
    which is greedy and must be the single last field. Text between fields
    passes through as regex, with spaces widened to whitespace runs.
    """
    fields: list[str] = []
    parts: list[str] = []
    for k, piece in enumerate(_FORMAT_FIELD.split(log_format)):
        if k % 2 == 0:
            parts.append(
                "".join(
                    r"\s+" if chunk.isspace() else chunk
                    for chunk in _WS_RUN.split(piece)
                    if chunk
                )
            )
            continue
        name = piece[1:-1]
        if not name.isidentifier():
            raise FormatError(f"invalid field name {piece!r} in log format")
        if name in fields:
            raise FormatError(f"duplicate field name {piece!r} in log format")
        fields.append(name)
        parts.append(f"(?P<{name}>.*)" if name == "Content" else f"(?P<{name}>.*?)")
    if fields.count("Content") != 1 or fields[-1] != "Content":
        raise FormatError(
            "log format must contain exactly one <Content> field, in last position"
        )
    try:
        return re.compile("^" + "".join(parts) + "$")
    except re.error as exc:
        raise FormatError(f"log format does not compile: {exc}") from exc


def parse_raw_log(path, log_format: str = "<Content>") -> tuple[list[LogRecord], int]:
    """Split a raw log file into records; returns ``(records, unparsed)``.

    Lines that do not fit the format are kept as content-only records and
    counted in ``unparsed`` instead of aborting the run.
    """
    pattern = build_format_pattern(log_format)
    records: list[LogRecord] = []
    unparsed = 0
    with open(path, encoding="utf-8", errors="replace") as handle:
        for line_id, raw in enumerate(handle, start=1):
            line = raw.rstrip("\r\n")
            match = pattern.match(line)
            if match is None:
                unparsed += 1
                records.append(LogRecord(line_id, line, line, {}))
                continue
            headers = {
                key: value
                for key, value in match.groupdict().items()
                if key != "Content"
            }
            records.append(LogRecord(line_id, line, match.group("Content"), headers))
    return records, unparsed


def dump_variables_csv(entries: Sequence[GroundTruthEntry], path) -> None:
    """Write extracted variables, one row per occurrence."""
    with open(path, "w", newline="", encoding="utf-8") as handle:
        writer = csv.writer(handle)
        writer.writerow(["line_id", "placeholder_index", "start", "end", "text"])
        for entry in entries:
            for occ in entry.variables:
                writer.writerow(
                    [entry.line_id, occ.placeholder_index, occ.start, occ.end, occ.text]
                )
