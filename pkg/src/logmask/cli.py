"""Command-line pipeline around the library.

Five subcommands: ``preprocess`` (mask a log), ``parse`` (mask + mine
templates), ``evaluate`` (mine + score against ground truth),
``match-stats`` (score a catalog's matches against ground-truth variable
spans), and ``subgroup-report`` (evaluate with a per-band breakdown).
Report commands write JSON or CSV plus a rendered PNG chart.

Exit codes: 0 success, 1 I/O failure, 2 configuration problem, 3
evaluation-input mismatch.

Defaults can come from a JSON config file (``--config``) whose keys mirror
the run-configuration fields; explicit flags win over the file.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
import time
from dataclasses import dataclass, field
from pathlib import Path

from . import corpus, figures, metrics
from .masker import (
    CatalogError,
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
    write_match_report_csv,
    write_match_report_json,
)
from .parsers import ConfigError, ParserConfig, parse, parse_with_preprocessing
from .parsers.base import write_structured_csv, write_templates_csv

EXIT_OK = 0
EXIT_IO = 1
EXIT_CONFIG = 2
EXIT_MISMATCH = 3

log = logging.getLogger("logmask")

_CONFIG_KEYS = {
    "dataset_path",
    "ground_truth_path",
    "log_format",
    "catalog",
    "parser_kind",
    "drain_depth",
    "drain_similarity_threshold",
    "drain_max_children",
    "applicability_prefix",
    "applicability_filter",
    "subgroup_kind",
    "frequency_fraction",
    "output_dir",
    "report_format",
}


@dataclass
class RunConfig:
    """One resolved pipeline run; flags override config-file values."""

    dataset_path: str
    ground_truth_path: str | None = None
    log_format: str | None = None
    catalog: str | None = None
    parser: ParserConfig = field(default_factory=ParserConfig)
    applicability_prefix: int = 2000
    applicability_filter: bool = True
    subgroup: metrics.SubgroupSpec | None = None
    output_dir: str = "out"
    report_format: str = "json"


def _load_config_file(path: str | None) -> dict:
    if not path:
        return {}
    with open(path, encoding="utf-8") as handle:
        try:
            payload = json.load(handle)
        except json.JSONDecodeError as exc:
            raise ConfigError(f"{path}: not valid JSON: {exc}") from exc
    if not isinstance(payload, dict):
        raise ConfigError(f"{path}: expected a JSON object")
    unknown = set(payload) - _CONFIG_KEYS
    if unknown:
        raise ConfigError(f"{path}: unknown config keys {sorted(unknown)}")
    return payload


def _build_run_config(args: argparse.Namespace, need_subgroup: bool = False) -> RunConfig:
    file_cfg = _load_config_file(getattr(args, "config", None))

    def pick(flag_name: str, key: str, default):
        value = getattr(args, flag_name, None)
        if value is not None:
            return value
        return file_cfg.get(key, default)

    dataset_path = pick("input", "dataset_path", None)
    if not dataset_path:
        raise ConfigError("an input file is required (--input or dataset_path)")
    applicability_filter = True
    if getattr(args, "no_applicability_filter", None):
        applicability_filter = False
    elif "applicability_filter" in file_cfg:
        applicability_filter = bool(file_cfg["applicability_filter"])
    parser_config = ParserConfig(
        parser_kind=pick("parser", "parser_kind", "drain"),
        drain_depth=int(pick("drain_depth", "drain_depth", 4)),
        drain_similarity_threshold=float(
            pick("drain_st", "drain_similarity_threshold", 0.4)
        ),
        drain_max_children=int(pick("drain_max_children", "drain_max_children", 100)),
    )
    subgroup = None
    subgroup_kind = pick("subgroup", "subgroup_kind", None)
    if need_subgroup and subgroup_kind is None:
        subgroup_kind = "frequency"
    if subgroup_kind is not None:
        try:
            subgroup = metrics.SubgroupSpec(
                kind=subgroup_kind,
                frequency_fraction=float(pick("fraction", "frequency_fraction", 0.10)),
            )
        except ValueError as exc:
            raise ConfigError(str(exc)) from exc
    prefix = int(pick("prefix", "applicability_prefix", 2000))
    if prefix < 1:
        raise ConfigError("--prefix must be >= 1")
    report_format = pick("format", "report_format", "json")
    return RunConfig(
        dataset_path=str(dataset_path),
        ground_truth_path=pick("truth", "ground_truth_path", None),
        log_format=pick("log_format", "log_format", None),
        catalog=pick("catalog", "catalog", None),
        parser=parser_config,
        applicability_prefix=prefix,
        applicability_filter=applicability_filter,
        subgroup=subgroup,
        output_dir=str(pick("out", "output_dir", "out")),
        report_format=report_format,
    )


def _resolve_catalog(value: str | None) -> RuleCatalog:
    if value is None or value == "default":
        return default_catalog()
    if value == "legacy":
        return loghub_legacy_catalog()
    if value == "none":
        return disabled_catalog()
    if value.startswith("domain:"):
        return domain_knowledge_catalog(value.split(":", 1)[1])
    return load_catalog(value)


def _load_records(cfg: RunConfig) -> list[corpus.LogRecord]:
    path = Path(cfg.dataset_path)
    if path.suffix.lower() == ".csv":
        entries = corpus.load_structured_csv(path)
        return [
            corpus.LogRecord(entry.line_id, entry.content, entry.content, {})
            for entry in entries
        ]
    records, unparsed = corpus.parse_raw_log(path, cfg.log_format or "<Content>")
    if unparsed:
        log.warning("%d line(s) did not fit the log format", unparsed)
    return records


def _load_truth(cfg: RunConfig) -> list[corpus.GroundTruthEntry]:
    truth_path = cfg.ground_truth_path
    if truth_path is None and Path(cfg.dataset_path).suffix.lower() == ".csv":
        truth_path = cfg.dataset_path
    if truth_path is None:
        raise ConfigError("ground truth is required (--truth)")
    entries = corpus.load_structured_csv(truth_path)
    failed = sum(1 for entry in entries if entry.extraction_failed)
    if failed:
        log.warning(
            "%d entr%s with templates that do not match their content",
            failed,
            "y" if failed == 1 else "ies",
        )
    return entries


def _out_dir(cfg: RunConfig) -> Path:
    out = Path(cfg.output_dir)
    out.mkdir(parents=True, exist_ok=True)
    return out


def cmd_preprocess(args: argparse.Namespace) -> int:
    cfg = _build_run_config(args)
    records = _load_records(cfg)
    catalog = _resolve_catalog(cfg.catalog)
    if cfg.applicability_filter:
        catalog = estimate_applicability(
            [record.content for record in records], catalog, cfg.applicability_prefix
        )
    for warning in catalog.warnings:
        log.warning("%s", warning)
    out = _out_dir(cfg)
    started = time.perf_counter()
    masked_path = out / "masked.log"
    with open(masked_path, "w", encoding="utf-8") as handle:
        for record in records:
            handle.write(apply_masks(record.content, catalog))
            handle.write("\n")
    save_catalog(catalog, out / "effective_catalog.json")
    log.info(
        "masked %d line(s) in %.2fs", len(records), time.perf_counter() - started
    )
    print(f"masked {len(records)} line(s) -> {masked_path}")
    enabled = sum(1 for rule in catalog.rules if rule.enabled)
    print(f"effective catalog: {enabled}/{len(catalog.rules)} rule(s) enabled")
    return EXIT_OK


def cmd_parse(args: argparse.Namespace) -> int:
    cfg = _build_run_config(args)
    records = _load_records(cfg)
    catalog = _resolve_catalog(cfg.catalog)
    out = _out_dir(cfg)
    started = time.perf_counter()
    outcome = parse_with_preprocessing(
        records,
        catalog,
        cfg.parser,
        applicability_prefix=cfg.applicability_prefix,
        applicability_filter=cfg.applicability_filter,
    )
    log.info(
        "parsed %d line(s) into %d template(s) in %.2fs",
        len(records),
        len(outcome.groups),
        time.perf_counter() - started,
    )
    write_structured_csv(outcome, out / "structured.csv")
    write_templates_csv(outcome, out / "templates.csv")
    if outcome.catalog is not None:
        save_catalog(outcome.catalog, out / "effective_catalog.json")
    print(f"{len(records)} line(s), {len(outcome.groups)} template(s) -> {out}")
    return EXIT_OK


def _run_evaluation(args: argparse.Namespace, need_subgroup: bool) -> int:
    cfg = _build_run_config(args, need_subgroup=need_subgroup)
    truth = _load_truth(cfg)
    records = _load_records(cfg)
    catalog = _resolve_catalog(cfg.catalog)
    started = time.perf_counter()
    outcome = parse_with_preprocessing(
        records,
        catalog,
        cfg.parser,
        applicability_prefix=cfg.applicability_prefix,
        applicability_filter=cfg.applicability_filter,
    )
    report = metrics.evaluate(outcome, truth, cfg.subgroup)
    log.info("evaluated %d line(s) in %.2fs", len(truth), time.perf_counter() - started)
    out = _out_dir(cfg)
    stem = "subgroups" if need_subgroup else "evaluation"
    dataset_name = Path(cfg.dataset_path).stem
    configuration = f"{cfg.parser.parser_kind}+{catalog.provenance}"
    if cfg.report_format == "csv":
        metrics.write_report_csv(
            report, out / f"{stem}.csv", dataset=dataset_name, configuration=configuration
        )
    else:
        metrics.write_report_json(report, out / f"{stem}.json")
    if report.subgroups:
        figures.render_subgroup_bars(
            report.subgroups, out / f"{stem}.png", title=dataset_name
        )
    else:
        figures.render_metric_bars(report, out / f"{stem}.png", title=dataset_name)
    print(
        f"GA {report.ga:.4f}  FGA {report.fga:.4f}  "
        f"PA {report.pa:.4f}  FTA {report.fta:.4f}"
    )
    for label, scores in report.subgroups.items():
        print(
            f"  [{label}] GA {scores.ga:.4f}  FGA {scores.fga:.4f}  "
            f"PA {scores.pa:.4f}  FTA {scores.fta:.4f}"
        )
    return EXIT_OK


def cmd_evaluate(args: argparse.Namespace) -> int:
    return _run_evaluation(args, need_subgroup=False)


def cmd_subgroup_report(args: argparse.Namespace) -> int:
    return _run_evaluation(args, need_subgroup=True)


def cmd_match_stats(args: argparse.Namespace) -> int:
    cfg = _build_run_config(args)
    truth = _load_truth(cfg)
    # The catalog is scored exactly as given; no applicability filtering.
    catalog = _resolve_catalog(cfg.catalog)
    started = time.perf_counter()
    report = match_statistics(truth, catalog)
    log.info(
        "scored %d rule(s) over %d entr%s in %.2fs",
        len(catalog.rules),
        len(truth),
        "y" if len(truth) == 1 else "ies",
        time.perf_counter() - started,
    )
    out = _out_dir(cfg)
    if cfg.report_format == "csv":
        write_match_report_csv(report, out / "match_stats.csv")
    else:
        write_match_report_json(report, out / "match_stats.json")
    figures.render_rule_match_bars(
        report, out / "match_stats.png", title=Path(cfg.dataset_path).stem
    )
    stats = report.dataset
    print(
        f"precision {stats.precision:.4f}  recall {stats.recall:.4f}  "
        f"({stats.matched_variables}/{stats.total_variables} variables matched)"
    )
    return EXIT_OK


def _add_common(parser: argparse.ArgumentParser, *, truth: bool, parsing: bool) -> None:
    parser.add_argument("--input", help="log file (.log raw, .csv structured)")
    parser.add_argument("--config", help="JSON config file with defaults")
    parser.add_argument("--log-format", dest="log_format", help="header format, e.g. \"<Date> <Time> <Content>\"")
    parser.add_argument(
        "--catalog",
        help="rule catalog: default, legacy, none, domain:<dataset>, or a JSON file",
    )
    parser.add_argument("--prefix", type=int, help="lines scanned for applicability (default 2000)")
    parser.add_argument(
        "--no-applicability-filter",
        action="store_true",
        default=None,
        help="apply the catalog as-is, skipping the zero-match filter",
    )
    parser.add_argument("--out", help="output directory (default ./out)")
    parser.add_argument("--format", choices=["json", "csv"], help="report file format")
    if truth:
        parser.add_argument("--truth", help="structured CSV with EventTemplate ground truth")
    if parsing:
        parser.add_argument("--parser", choices=["drain", "lfa"], help="template miner")
        parser.add_argument("--drain-depth", dest="drain_depth", type=int)
        parser.add_argument("--drain-st", dest="drain_st", type=float)
        parser.add_argument(
            "--drain-max-children", dest="drain_max_children", type=int
        )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="logmask",
        description="Mask variables in logs, mine templates, and score the results.",
    )
    parser.add_argument("-v", "--verbose", action="store_true", help="log progress")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("preprocess", help="mask variables, write masked.log")
    _add_common(p, truth=False, parsing=False)
    p.set_defaults(func=cmd_preprocess)

    p = sub.add_parser("parse", help="mask then mine templates")
    _add_common(p, truth=False, parsing=True)
    p.set_defaults(func=cmd_parse)

    p = sub.add_parser("evaluate", help="parse and score against ground truth")
    _add_common(p, truth=True, parsing=True)
    p.add_argument("--subgroup", choices=["frequency", "complexity"])
    p.add_argument("--fraction", type=float, help="frequency band size (default 0.10)")
    p.set_defaults(func=cmd_evaluate)

    p = sub.add_parser("match-stats", help="score catalog matches against variable spans")
    _add_common(p, truth=True, parsing=False)
    p.set_defaults(func=cmd_match_stats)

    p = sub.add_parser("subgroup-report", help="evaluate with a per-band breakdown")
    _add_common(p, truth=True, parsing=True)
    p.add_argument("--subgroup", choices=["frequency", "complexity"])
    p.add_argument("--fraction", type=float, help="frequency band size (default 0.10)")
    p.set_defaults(func=cmd_subgroup_report)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        format="%(levelname)s %(message)s",
        stream=sys.stderr,
    )
    try:
        return args.func(args)
    except metrics.EvaluationInputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_MISMATCH
    except (CatalogError, ConfigError, corpus.FormatError, corpus.SchemaError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
