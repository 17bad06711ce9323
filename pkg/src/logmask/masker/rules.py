"""Masking rule catalogs.

A rule pairs a regex with a mask string and an order; catalogs apply rules
ascending by order, and earlier masks shield their text from later rules,
so ordering is part of the catalog contract (e.g. MAC addresses must be
taken before the hh:mm time rule or they decay into "<*>:<*>").

Three builtins ship: :func:`default_catalog` (the refined general-purpose
set), :func:`loghub_legacy_catalog` (the classic benchmark regexes, kept
verbatim with their known quirks), and :func:`domain_knowledge_catalog`
(the small per-dataset lists those benchmarks configured by hand).
Catalogs are plain data and round-trip through JSON, so projects can start
from a builtin, tweak patterns or masks, and check the result in.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field, replace

MASK = "<*>"

CATEGORIES = frozenset(
    {
        "hex_or_integer",
        "float_numeric",
        "time_duration",
        "block_id",
        "core_id",
        "ipv4",
        "ipv4_port",
        "ipv6",
        "mac_address",
        "memory_size",
        "package_or_domain",
        "assigned_value",
        "time",
        "datetime_words",
        "path",
        "url",
    }
)


class CatalogError(ValueError):
    """Catalog construction or validation failure."""


@dataclass(frozen=True)
class MaskRule:
    """One masking rule: what to match, what to emit, and when to run."""

    name: str
    category: str
    pattern: str
    mask: str = MASK
    order: int = 0
    enabled: bool = True

    def __post_init__(self) -> None:
        if not self.name:
            raise CatalogError("rule name must be non-empty")
        if self.category not in CATEGORIES:
            raise CatalogError(
                f"rule {self.name!r} has unknown category {self.category!r}"
            )
        if MASK not in self.mask:
            raise CatalogError(f"rule {self.name!r} mask must contain {MASK!r}")
        if self.order < 0:
            raise CatalogError(f"rule {self.name!r} order must be >= 0")
        try:
            re.compile(self.pattern)
        except re.error as exc:
            raise CatalogError(
                f"rule {self.name!r} pattern does not compile: {exc}"
            ) from exc


@dataclass(frozen=True)
class RuleCatalog:
    """An ordered set of masking rules.

    Rules are stored sorted by ``order``; orders and names must be unique.
    ``provenance`` records where the catalog came from ("default", "legacy",
    "domain:<dataset>", "user", ...) and ``warnings`` carries non-fatal
    notes from construction steps such as applicability estimation.
    """

    rules: tuple[MaskRule, ...]
    provenance: str = field(default="user", compare=False)
    warnings: tuple[str, ...] = field(default=(), compare=False)

    def __post_init__(self) -> None:
        orders = [rule.order for rule in self.rules]
        if len(set(orders)) != len(orders):
            seen: set[int] = set()
            dup = next(o for o in orders if o in seen or seen.add(o))
            raise CatalogError(f"duplicate rule order {dup}")
        names = [rule.name for rule in self.rules]
        if len(set(names)) != len(names):
            seen_names: set[str] = set()
            dup_name = next(n for n in names if n in seen_names or seen_names.add(n))
            raise CatalogError(f"duplicate rule name {dup_name!r}")
        object.__setattr__(
            self, "rules", tuple(sorted(self.rules, key=lambda rule: rule.order))
        )

    @property
    def enabled_rules(self) -> tuple[MaskRule, ...]:
        return tuple(rule for rule in self.rules if rule.enabled)

    def get(self, name: str) -> MaskRule:
        for rule in self.rules:
            if rule.name == name:
                return rule
        raise KeyError(name)

    def with_rule(self, name: str, **changes) -> "RuleCatalog":
        """Copy of the catalog with one rule's fields replaced."""
        target = self.get(name)
        rules = tuple(
            replace(rule, **changes) if rule is target else rule for rule in self.rules
        )
        return replace(self, rules=rules)


# The refined general-purpose rules. Specific shapes run before the broad
# numeric fallbacks; URL before path (a URL contains path-like tails),
# ipv4:port before bare ipv4, and MAC before hh:mm:ss time.
_DEFAULT_RULES = (
    MaskRule(
        name="url",
        category="url",
        pattern=r"\b(?:https?|ftp)://[^\s\"'<>]+",
        order=10,
    ),
    MaskRule(
        name="ipv6",
        category="ipv6",
        pattern=(
            r"\b(?:(?:[0-9A-Fa-f]{1,4}:){7}[0-9A-Fa-f]{1,4}"
            r"|(?:[0-9A-Fa-f]{1,4}:){1,6}:(?:[0-9A-Fa-f]{1,4}:){0,5}[0-9A-Fa-f]{1,4})\b"
        ),
        order=20,
    ),
    MaskRule(
        name="mac_address",
        category="mac_address",
        pattern=r"\b[0-9A-Fa-f]{2}(?::[0-9A-Fa-f]{2}){5}\b",
        order=30,
    ),
    MaskRule(
        name="datetime_weekday",
        category="datetime_words",
        pattern=(
            r"\b(?:Monday|Tuesday|Wednesday|Thursday|Friday|Saturday|Sunday"
            r"|Mon|Tues|Tue|Wed|Thurs|Thur|Thu|Fri|Sat|Sun)\b"
        ),
        order=40,
    ),
    MaskRule(
        name="datetime_month",
        category="datetime_words",
        pattern=(
            r"\b(?:January|February|March|April|May|June|July|August"
            r"|September|October|November|December"
            r"|Jan|Feb|Mar|Apr|Jun|Jul|Aug|Sept|Sep|Oct|Nov|Dec)\b"
        ),
        order=50,
    ),
    MaskRule(
        name="ipv4_port",
        category="ipv4_port",
        pattern=r"/?(?<![\w.])(?:\d{1,3}\.){3}\d{1,3}:\d{1,5}\b",
        order=60,
    ),
    MaskRule(
        name="ipv4",
        category="ipv4",
        pattern=r"/?(?<![\w.])(?:\d{1,3}\.){3}\d{1,3}(?![\d.])",
        order=70,
    ),
    MaskRule(
        name="time",
        category="time",
        pattern=r"\b\d{2}:\d{2}(?::\d{2})?(?:[.,]\d+)?\b",
        order=80,
    ),
    MaskRule(
        name="time_duration",
        category="time_duration",
        pattern=(
            r"\b\d+(?:\.\d+)?"
            r"(?:milliseconds?|millisecs?|msecs?|ms|seconds?|secs?|sec|s)\b"
        ),
        order=90,
    ),
    MaskRule(
        name="memory_size",
        category="memory_size",
        pattern=r"\b\d+(?:\.\d+)?\s?(?:[KkMmGgTtPp][Ii]?[Bb]|[Bb])\b",
        order=100,
    ),
    MaskRule(
        name="path",
        category="path",
        pattern=r"(?<![\w.])(?:/[\w.$+-]+)+/?",
        order=110,
    ),
    MaskRule(
        name="package_or_domain",
        category="package_or_domain",
        pattern=r"\b(?:[\w$-]+\.){2,}[\w$-]+(?::\d+)?",
        order=120,
    ),
    MaskRule(
        name="assigned_value",
        category="assigned_value",
        pattern=r"(?<==)[-+]?\d+(?:\.\d+)?\b",
        order=130,
    ),
    MaskRule(
        name="float_numeric",
        category="float_numeric",
        pattern=r"(?<![\d.])[-+]?\d+\.\d+(?:[eE][-+]?\d+)?(?![\d.])",
        order=140,
    ),
    MaskRule(
        name="hex_or_integer",
        category="hex_or_integer",
        pattern=(
            r"\b0[Xx][0-9A-Fa-f]+\b"
            r"|\b(?=[0-9A-Fa-f]{4,}\b)[A-Fa-f]*\d[0-9A-Fa-f]*\b"
            r"|(?<![\w.])[-+]?\d+(?![\w.])"
        ),
        order=150,
    ),
)

# System-specific identifiers, shipped disabled. They sort ahead of every
# general rule so that enabling one masks the whole id before the numeric
# fallbacks can carve it up.
_DEFAULT_RULES = (
    MaskRule(
        name="block_id",
        category="block_id",
        pattern=r"\bblk_-?\d+\b",
        order=1,
        enabled=False,
    ),
    MaskRule(
        name="core_id",
        category="core_id",
        pattern=r"\bcore\.\d+\b",
        order=2,
        enabled=False,
    ),
) + _DEFAULT_RULES


def default_catalog() -> RuleCatalog:
    """The refined builtin catalog: 15 enabled rules plus two disabled
    system-specific extras."""
    return RuleCatalog(rules=_DEFAULT_RULES, provenance="default")


def disabled_catalog() -> RuleCatalog:
    """The default rules with everything switched off (identity masking)."""
    rules = tuple(replace(rule, enabled=False) for rule in _DEFAULT_RULES)
    return RuleCatalog(rules=rules, provenance="disabled")


# The classic benchmark regexes, verbatim. Quirks and all: "=\d+" swallows
# the equals sign, the time rule's trailing "(:\d{2})*" can overrun, and
# "/.+?\s" eats up to the next space. Order here is ours (specific before
# general); the original tooling only ever enabled a few per dataset, so it
# never had to pick one.
_LEGACY_RULES = (
    MaskRule(
        name="legacy_block_id",
        category="block_id",
        pattern=r"blk_(|-)[0-9]+",
        order=10,
    ),
    MaskRule(
        name="legacy_core_id",
        category="core_id",
        pattern=r"core\.[0-9]*",
        order=20,
    ),
    MaskRule(
        name="legacy_duration",
        category="time_duration",
        pattern=r"<\d+\ssec",
        order=30,
    ),
    MaskRule(
        name="legacy_domain",
        category="package_or_domain",
        pattern=r"([\w-]+\.){2,}[\w-]+",
        order=40,
    ),
    MaskRule(
        name="legacy_ipv4",
        category="ipv4",
        pattern=r"(/|)(\d+\.){3}\d+(:\d+)?",
        order=50,
    ),
    MaskRule(
        name="legacy_time",
        category="time",
        pattern=r"\d{2}:\d{2}(:\d{2})*",
        order=60,
    ),
    MaskRule(
        name="legacy_path",
        category="path",
        pattern=r"(/.+?\s|(/[\w-]+)+)",
        order=70,
    ),
    MaskRule(
        name="legacy_size",
        category="memory_size",
        pattern=r"\b[KGTM]?B\b",
        order=80,
    ),
    MaskRule(
        name="legacy_assigned",
        category="assigned_value",
        pattern=r"=\d+",
        order=90,
    ),
    MaskRule(
        name="legacy_integer",
        category="hex_or_integer",
        pattern=r"\b(\-?\+?\d+)\b|0[Xx][a-fA-F\d]+|\b[a-fA-F\d]{4,}\b",
        order=100,
    ),
)


def loghub_legacy_catalog() -> RuleCatalog:
    """The ten classic benchmark regexes as one ordered catalog."""
    return RuleCatalog(rules=_LEGACY_RULES, provenance="legacy")


# Per-dataset regex lists as the classic benchmarks configured them. Keys
# are the usual 2k-sample dataset names.
_DOMAIN_KNOWLEDGE: dict[str, tuple[tuple[str, str], ...]] = {
    "HDFS": (
        ("block_id", r"blk_(|-)[0-9]+"),
        ("ipv4", r"(/|)(\d+\.){3}\d+(:\d+)?"),
    ),
    "Hadoop": (("ipv4", r"(\d+\.){3}\d+"),),
    "Spark": (
        ("ipv4", r"(\d+\.){3}\d+"),
        ("memory_size", r"\b[KGTM]?B\b"),
        ("package_or_domain", r"([\w-]+\.){2,}[\w-]+"),
    ),
    "Zookeeper": (("ipv4", r"(/|)(\d+\.){3}\d+(:\d+)?"),),
    "BGL": (("core_id", r"core\.\d+"),),
    "HPC": (("assigned_value", r"=\d+"),),
    "Thunderbird": (("ipv4", r"(\d+\.){3}\d+"),),
    "Windows": (("hex_or_integer", r"0x.*?\s"),),
    "Linux": (
        ("ipv4", r"(\d+\.){3}\d+"),
        ("time", r"\d{2}:\d{2}:\d{2}"),
    ),
    "Android": (
        ("path", r"(/[\w-]+)+"),
        ("package_or_domain", r"([\w-]+\.){2,}[\w-]+"),
        ("hex_or_integer", r"\b(\-?\+?\d+)\b|0[Xx][a-fA-F\d]+|\b[a-fA-F\d]{4,}\b"),
    ),
    "HealthApp": (),
    "Apache": (("ipv4", r"(\d+\.){3}\d+"),),
    "Proxifier": (
        ("time_duration", r"<\d+\ssec"),
        ("package_or_domain", r"([\w-]+\.)+[\w-]+(:\d+)?"),
        ("time", r"\d{2}:\d{2}(:\d{2})*"),
    ),
    "OpenSSH": (
        ("ipv4", r"(\d+\.){3}\d+"),
        ("package_or_domain", r"([\w-]+\.){2,}[\w-]+"),
    ),
    "OpenStack": (
        ("ipv4", r"((\d+\.){3}\d+,?)+"),
        ("path", r"/.+?\s"),
        ("hex_or_integer", r"\d+"),
    ),
    "Mac": (("package_or_domain", r"([\w-]+\.){2,}[\w-]+"),),
}

LOGHUB_DATASETS = tuple(sorted(_DOMAIN_KNOWLEDGE))


def domain_knowledge_catalog(dataset: str) -> RuleCatalog:
    """The hand-picked per-dataset regex list used by classic benchmarks."""
    try:
        specs = _DOMAIN_KNOWLEDGE[dataset]
    except KeyError:
        known = ", ".join(LOGHUB_DATASETS)
        raise CatalogError(f"unknown dataset {dataset!r}; expected one of {known}")
    rules = tuple(
        MaskRule(name=name, category=_category_for(name), pattern=pattern, order=k * 10)
        for k, (name, pattern) in enumerate(specs, start=1)
    )
    return RuleCatalog(rules=rules, provenance=f"domain:{dataset}")


def _category_for(name: str) -> str:
    base = name.rstrip("0123456789")
    return base if base in CATEGORIES else "hex_or_integer"


def save_catalog(catalog: RuleCatalog, path) -> None:
    """Write a catalog as a JSON array of rule objects."""
    payload = [
        {
            "name": rule.name,
            "category": rule.category,
            "pattern": rule.pattern,
            "mask": rule.mask,
            "order": rule.order,
            "enabled": rule.enabled,
        }
        for rule in catalog.rules
    ]
    with open(path, "w", encoding="utf-8") as handle:
        json.dump(payload, handle, indent=2)
        handle.write("\n")


def load_catalog(path) -> RuleCatalog:
    """Load a JSON rule array written by :func:`save_catalog` (or by hand)."""
    with open(path, encoding="utf-8") as handle:
        try:
            payload = json.load(handle)
        except json.JSONDecodeError as exc:
            raise CatalogError(f"{path}: not valid JSON: {exc}") from exc
    if not isinstance(payload, list):
        raise CatalogError(f"{path}: expected a JSON array of rules")
    rules = []
    for k, item in enumerate(payload):
        if not isinstance(item, dict):
            raise CatalogError(f"{path}: rule {k} is not an object")
        unknown = set(item) - {"name", "category", "pattern", "mask", "order", "enabled"}
        if unknown:
            raise CatalogError(
                f"{path}: rule {k} has unknown keys {sorted(unknown)}"
            )
        try:
            rules.append(
                MaskRule(
                    name=item["name"],
                    category=item["category"],
                    pattern=item["pattern"],
                    mask=item.get("mask", MASK),
                    order=int(item.get("order", (k + 1) * 10)),
                    enabled=bool(item.get("enabled", True)),
                )
            )
        except KeyError as exc:
            raise CatalogError(f"{path}: rule {k} is missing {exc}") from exc
    return RuleCatalog(rules=tuple(rules), provenance="user")
