"""Variable masking: rule catalogs, ordered application, match scoring."""

from .masking import apply_masks, collect_rule_matches, estimate_applicability
from .rules import (
    CATEGORIES,
    LOGHUB_DATASETS,
    MASK,
    CatalogError,
    MaskRule,
    RuleCatalog,
    default_catalog,
    disabled_catalog,
    domain_knowledge_catalog,
    load_catalog,
    loghub_legacy_catalog,
    save_catalog,
)
from .stats import (
    DatasetStats,
    MatchReport,
    RuleMatchCounts,
    macro_average,
    match_report_to_dict,
    match_statistics,
    write_match_report_csv,
    write_match_report_json,
)

__all__ = [
    "CATEGORIES",
    "LOGHUB_DATASETS",
    "MASK",
    "CatalogError",
    "DatasetStats",
    "MaskRule",
    "MatchReport",
    "RuleCatalog",
    "RuleMatchCounts",
    "apply_masks",
    "collect_rule_matches",
    "default_catalog",
    "disabled_catalog",
    "domain_knowledge_catalog",
    "estimate_applicability",
    "load_catalog",
    "loghub_legacy_catalog",
    "macro_average",
    "match_report_to_dict",
    "match_statistics",
    "save_catalog",
    "write_match_report_csv",
    "write_match_report_json",
]
