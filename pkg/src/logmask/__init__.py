"""logmask: regex-based variable masking for logs, template miners that
run on the masked text, and accuracy metrics for the results."""

from .corpus import (
    GroundTruthEntry,
    LogRecord,
    VariableOccurrence,
    count_placeholders,
    extract_variables,
    load_structured_csv,
    parse_raw_log,
    reconstruct,
    template_to_matcher,
)
from .masker import (
    MaskRule,
    MatchReport,
    RuleCatalog,
    apply_masks,
    default_catalog,
    disabled_catalog,
    domain_knowledge_catalog,
    estimate_applicability,
    load_catalog,
    loghub_legacy_catalog,
    match_statistics,
    save_catalog,
)
from .metrics import (
    EvaluationReport,
    SubgroupSpec,
    complexity_subgroups,
    evaluate,
    f1_group_accuracy,
    f1_template_accuracy,
    frequency_subgroups,
    grouping_accuracy,
    parsing_accuracy,
)
from .parsers import ParseOutcome, ParserConfig, parse, parse_with_preprocessing

__version__ = "0.1.0"

__all__ = [
    "EvaluationReport",
    "GroundTruthEntry",
    "LogRecord",
    "MaskRule",
    "MatchReport",
    "ParseOutcome",
    "ParserConfig",
    "RuleCatalog",
    "SubgroupSpec",
    "VariableOccurrence",
    "__version__",
    "apply_masks",
    "complexity_subgroups",
    "count_placeholders",
    "default_catalog",
    "disabled_catalog",
    "domain_knowledge_catalog",
    "estimate_applicability",
    "evaluate",
    "extract_variables",
    "f1_group_accuracy",
    "f1_template_accuracy",
    "frequency_subgroups",
    "grouping_accuracy",
    "load_catalog",
    "load_structured_csv",
    "loghub_legacy_catalog",
    "match_statistics",
    "parse",
    "parse_raw_log",
    "parse_with_preprocessing",
    "parsing_accuracy",
    "reconstruct",
    "save_catalog",
    "template_to_matcher",
]
