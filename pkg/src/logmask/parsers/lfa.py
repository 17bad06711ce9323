"""Token-frequency template miner.

Frequencies are tallied per message length over the whole input, counting
every occurrence. Within one message, a token whose frequency sits at or
below the midpoint of that message's min/max frequency becomes a wildcard;
if all tokens share one frequency the message stays literal. Ties go to
"variable", which is what lets two rare messages of the same shape collapse
into one mostly-wildcard template.
"""

from __future__ import annotations

from collections import Counter, defaultdict
from typing import Iterable

WILDCARD = "<*>"


def parse_lfa(items: Iterable[tuple[int, str]]) -> list[tuple[int, str]]:
    tokenized = [(line_id, content.split()) for line_id, content in items]
    freq_by_length: dict[int, Counter[str]] = defaultdict(Counter)
    for _, tokens in tokenized:
        freq_by_length[len(tokens)].update(tokens)
    out: list[tuple[int, str]] = []
    for line_id, tokens in tokenized:
        if not tokens:
            out.append((line_id, ""))
            continue
        counts = freq_by_length[len(tokens)]
        freqs = [counts[token] for token in tokens]
        low, high = min(freqs), max(freqs)
        if low == high:
            template = tokens
        else:
            threshold = (low + high) / 2
            template = [
                WILDCARD if freq <= threshold else token
                for token, freq in zip(tokens, freqs)
            ]
        out.append((line_id, " ".join(template)))
    return out
