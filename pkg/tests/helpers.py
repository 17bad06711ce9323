"""Shared test utilities: synthetic corpora and independent metric oracles.

The oracle implementations here deliberately avoid the library's set-based
shortcuts: they recompute everything with nested loops over sorted ids so
the two paths can disagree if either is wrong.
"""

from __future__ import annotations

import random

from logmask.corpus import GroundTruthEntry, LogRecord, reconstruct

# Static vocabulary safe from every default rule: lowercase, no digits,
# at least one letter outside a-f, not a weekday/month word.
VOCAB = (
    "queue",
    "worker",
    "online",
    "reply",
    "signal",
    "route",
    "gateway",
    "session",
    "thread",
    "policy",
    "window",
    "report",
    "sync",
    "probe",
    "handler",
    "buffer",
    "commit",
    "replica",
    "lookup",
    "rotate",
)


def _ipv4(rng: random.Random) -> str:
    return f"10.{rng.randint(0, 255)}.{rng.randint(0, 255)}.{rng.randint(1, 254)}"


def _ipv4_port(rng: random.Random) -> str:
    return f"{_ipv4(rng)}:{rng.randint(1024, 65535)}"


def _mac(rng: random.Random) -> str:
    return ":".join(f"{rng.randint(0, 255):02x}" for _ in range(6))


def _hexid(rng: random.Random) -> str:
    return f"0x{rng.randrange(16 ** 6):06x}"


def _integer(rng: random.Random) -> str:
    return str(rng.randint(0, 99999))


def _floatval(rng: random.Random) -> str:
    return f"{rng.randint(0, 999)}.{rng.randint(0, 999999):06d}"


def _duration(rng: random.Random) -> str:
    return f"{rng.randint(1, 10000)}ms"


def _size(rng: random.Random) -> str:
    return f"{rng.randint(1, 65536)}MB"


def _path(rng: random.Random) -> str:
    return "/" + "/".join(rng.choice(VOCAB) for _ in range(3))


def _url(rng: random.Random) -> str:
    return f"https://{rng.choice(VOCAB)}.example.org/{rng.choice(VOCAB)}"


def _domain(rng: random.Random) -> str:
    return (
        f"{rng.choice(VOCAB)}{rng.randint(0, 9)}.{rng.choice(VOCAB)}."
        f"example{rng.randint(0, 9)}.net"
    )


def _ipv6(rng: random.Random) -> str:
    return ":".join(f"{rng.randrange(1, 65536):x}" for _ in range(8))


def _version(rng: random.Random) -> str:
    return f"{rng.randint(0, 9)}.{rng.randint(0, 20)}.{rng.randint(0, 99)}"


FILL_KINDS = {
    "ipv4": _ipv4,
    "ipv4_port": _ipv4_port,
    "mac": _mac,
    "hex": _hexid,
    "integer": _integer,
    "float": _floatval,
    "duration": _duration,
    "size": _size,
    "path": _path,
    "url": _url,
    "domain": _domain,
    "ipv6": _ipv6,
    "version": _version,
}


def make_fill(rng: random.Random, kind: str) -> str:
    return FILL_KINDS[kind](rng)


def _first_token(index: int) -> str:
    # Unique alpha-only head token per template keeps tree branches apart.
    return f"{VOCAB[index % len(VOCAB)]}_{VOCAB[(index // len(VOCAB)) % len(VOCAB)]}{'x' * (index // len(VOCAB) ** 2)}"


def make_template(rng: random.Random, index: int, n_params: int, n_statics: int = 4):
    """Build a template string and its per-placeholder fill kinds."""
    tokens = [_first_token(index)]
    body = ["<*>"] * n_params + [rng.choice(VOCAB) for _ in range(max(n_statics - 1, 1))]
    rng.shuffle(body)
    tokens.extend(body)
    kinds = tuple(rng.choice(sorted(FILL_KINDS)) for _ in range(n_params))
    return " ".join(tokens), kinds


def build_corpus(
    rng: random.Random,
    template_specs: list[tuple[int, int]],
) -> tuple[list[LogRecord], list[GroundTruthEntry]]:
    """Build records and truth entries from ``(n_params, n_messages)`` specs.

    Every placeholder is filled with text the default catalog masks to one
    ``<*>``, so the masked content of each message equals its template.
    """
    templates = []
    for index, (n_params, n_messages) in enumerate(template_specs):
        template, kinds = make_template(rng, index, n_params)
        templates.append((template, kinds, n_messages))
    lines: list[tuple[str, str]] = []
    for template, kinds, n_messages in templates:
        for _ in range(n_messages):
            fills = [make_fill(rng, kind) for kind in kinds]
            lines.append((reconstruct(template, fills), template))
    rng.shuffle(lines)
    records = []
    truth = []
    for line_id, (content, template) in enumerate(lines, start=1):
        records.append(LogRecord(line_id, content, content, {}))
        truth.append(GroundTruthEntry(line_id, content, template))
    return records, truth


def band_specs(rng: random.Random) -> list[tuple[int, int]]:
    """Template specs with all three complexity bands populated and at
    least one singleton high-parameter template."""
    specs: list[tuple[int, int]] = []
    for _ in range(rng.randint(2, 4)):
        specs.append((0, rng.randint(2, 6)))
    for _ in range(rng.randint(2, 4)):
        specs.append((rng.randint(1, 4), rng.randint(1, 6)))
    specs.append((rng.randint(5, 8), 1))
    for _ in range(rng.randint(2, 3)):
        specs.append((rng.randint(5, 8), rng.randint(1, 5)))
    return specs


def normalize(text: str) -> str:
    return " ".join(text.split())


def oracle_scores(
    per_line_pred: dict[int, str], per_line_truth: dict[int, str]
) -> dict[str, float]:
    """Recompute GA/PA/FGA/FTA (and the F components) the slow way."""
    ids = sorted(per_line_truth)
    ga_correct = 0
    for i in ids:
        pred_peers = sorted(j for j in ids if per_line_pred[j] == per_line_pred[i])
        truth_peers = sorted(j for j in ids if per_line_truth[j] == per_line_truth[i])
        if pred_peers == truth_peers:
            ga_correct += 1
    pa_correct = sum(
        1 for i in ids if normalize(per_line_pred[i]) == normalize(per_line_truth[i])
    )

    pred_templates: list[str] = []
    for i in ids:
        if per_line_pred[i] not in pred_templates:
            pred_templates.append(per_line_pred[i])
    truth_templates: list[str] = []
    for i in ids:
        if per_line_truth[i] not in truth_templates:
            truth_templates.append(per_line_truth[i])

    group_correct = 0
    template_correct = 0
    for pred_template in pred_templates:
        members = [i for i in ids if per_line_pred[i] == pred_template]
        matched = None
        for truth_template in truth_templates:
            truth_members = [i for i in ids if per_line_truth[i] == truth_template]
            if truth_members == members:
                matched = truth_template
                break
        if matched is None:
            continue
        group_correct += 1
        if normalize(pred_template) == normalize(matched):
            template_correct += 1

    fga_precision = group_correct / len(pred_templates) if pred_templates else 0.0
    fga_recall = group_correct / len(truth_templates) if truth_templates else 0.0
    fta_precision = template_correct / len(pred_templates) if pred_templates else 0.0
    fta_recall = template_correct / len(truth_templates) if truth_templates else 0.0

    def f1(precision: float, recall: float) -> float:
        if precision + recall == 0.0:
            return 0.0
        return 2 * precision * recall / (precision + recall)

    return {
        "ga": ga_correct / len(ids),
        "pa": pa_correct / len(ids),
        "fga": f1(fga_precision, fga_recall),
        "fga_precision": fga_precision,
        "fga_recall": fga_recall,
        "fta": f1(fta_precision, fta_recall),
        "fta_precision": fta_precision,
        "fta_recall": fta_recall,
    }


def perturb_prediction(
    rng: random.Random, per_line_truth: dict[int, str]
) -> dict[int, str]:
    """Random merges, splits, and renames of a perfect prediction."""
    per_line = dict(per_line_truth)
    ids = sorted(per_line)
    for _ in range(rng.randint(0, 4)):
        templates = sorted(set(per_line.values()))
        op = rng.choice(("merge", "split", "rename", "noop"))
        if op == "merge" and len(templates) >= 2:
            survivor, absorbed = rng.sample(templates, 2)
            for i in ids:
                if per_line[i] == absorbed:
                    per_line[i] = survivor
        elif op == "split":
            target = rng.choice(templates)
            members = [i for i in ids if per_line[i] == target]
            if len(members) >= 2:
                moved = rng.sample(members, rng.randint(1, len(members) - 1))
                fresh = f"{target} split{rng.randint(0, 99)}"
                for i in moved:
                    per_line[i] = fresh
        elif op == "rename":
            target = rng.choice(templates)
            if "<*>" in target:
                fresh = target.replace("<*>", "CONST", 1)
            else:
                fresh = target + " <*>"
            for i in ids:
                if per_line[i] == target:
                    per_line[i] = fresh
    return per_line


def truth_from_assignments(per_line: dict[int, str]) -> list[GroundTruthEntry]:
    return [
        GroundTruthEntry(line_id, f"content {line_id}", template)
        for line_id, template in sorted(per_line.items())
    ]
