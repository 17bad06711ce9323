import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import helpers
from logmask.corpus import load_structured_csv
from logmask.masker import (
    apply_masks,
    collect_rule_matches,
    default_catalog,
    estimate_applicability,
)


class TestApplyMasks:
    def test_mac_masks_single_placeholder(self):
        catalog = default_catalog()
        assert apply_masks("00:00:00:12:34:56", catalog) == "<*>"

    def test_mac_time_order_swap_changes_output(self):
        catalog = default_catalog()
        swapped = catalog.with_rule("mac_address", order=999)
        default_out = apply_masks("00:00:00:12:34:56", catalog)
        swapped_out = apply_masks("00:00:00:12:34:56", swapped)
        assert default_out == "<*>"
        assert swapped_out == "<*>:<*>"
        assert default_out != swapped_out

    def test_static_text_unchanged(self):
        assert (
            apply_masks("no variables here", default_catalog()) == "no variables here"
        )

    def test_comma_delimited_addresses_masked_separately(self):
        masked = apply_masks("synchronized to 10.100.22.250, stratum 3", default_catalog())
        assert masked == "synchronized to <*>, stratum <*>"

    def test_existing_placeholders_shielded(self):
        # text already containing <*> is opaque to every rule
        assert apply_masks("a <*> 5", default_catalog()) == "a <*> <*>"
        assert apply_masks("<*>", default_catalog()) == "<*>"

    def test_mask_output_shielded_from_later_rules(self):
        # ipv4 inserts <*>; the later integer rule must not touch it
        masked = apply_masks("host 10.0.0.1 port 80", default_catalog())
        assert masked == "host <*> port <*>"

    def test_fixture_lines_idempotent(self, fixture_csv):
        catalog = default_catalog()
        for entry in load_structured_csv(fixture_csv):
            once = apply_masks(entry.content, catalog)
            assert apply_masks(once, catalog) == once

    @given(st.data())
    @settings(max_examples=120, deadline=None)
    def test_generated_lines_idempotent(self, data):
        rng = random.Random(data.draw(st.integers(0, 2**32 - 1)))
        kinds = sorted(helpers.FILL_KINDS)
        tokens = []
        for _ in range(rng.randint(1, 10)):
            if rng.random() < 0.5:
                tokens.append(rng.choice(helpers.VOCAB))
            else:
                tokens.append(helpers.make_fill(rng, rng.choice(kinds)))
        line = " ".join(tokens)
        catalog = default_catalog()
        once = apply_masks(line, catalog)
        assert apply_masks(once, catalog) == once

    def test_fills_mask_to_single_placeholder(self, rng):
        catalog = default_catalog()
        for kind in sorted(helpers.FILL_KINDS):
            for _ in range(25):
                fill = helpers.make_fill(rng, kind)
                assert apply_masks(fill, catalog) == "<*>", (kind, fill)

    def test_vocab_words_never_masked(self):
        catalog = default_catalog()
        for word in helpers.VOCAB:
            assert apply_masks(word, catalog) == word

    def test_disabled_rules_contribute_nothing(self):
        catalog = default_catalog()
        # underscore-glued digits are invisible to the numeric fallbacks,
        # while the negative form exposes digits after the hyphen
        assert apply_masks("blk_4044139911", catalog) == "blk_4044139911"
        assert apply_masks("blk_-1608999687919862906", catalog) == "blk_-<*>"
        enabled = catalog.with_rule("block_id", enabled=True)
        assert apply_masks("blk_4044139911", enabled) == "<*>"
        assert apply_masks("blk_-1608999687919862906", enabled) == "<*>"


class TestCollectRuleMatches:
    def test_spans_index_original_content(self):
        content = "host 10.0.0.1 port 80"
        matches = collect_rule_matches(content, default_catalog())
        assert ("ipv4", 5, 13) in matches
        assert ("hex_or_integer", 19, 21) in matches
        for _, start, end in matches:
            assert 0 <= start < end <= len(content)

    def test_spans_never_overlap(self, fixture_csv):
        catalog = default_catalog()
        for entry in load_structured_csv(fixture_csv):
            matches = collect_rule_matches(entry.content, catalog)
            spans = sorted((start, end) for _, start, end in matches)
            for (_, prev_end), (next_start, _) in zip(spans, spans[1:]):
                assert next_start >= prev_end

    def test_preexisting_placeholders_not_reported(self):
        matches = collect_rule_matches("a <*> b", default_catalog())
        assert matches == []


class TestEstimateApplicability:
    def test_zero_match_rules_disabled(self):
        lines = ["plain message one", "plain message two"]
        estimated = estimate_applicability(lines, default_catalog())
        assert estimated.enabled_rules == ()

    def test_matching_rules_stay_enabled(self):
        lines = ["peer 10.0.0.1 joined"]
        estimated = estimate_applicability(lines, default_catalog())
        names = {rule.name for rule in estimated.enabled_rules}
        assert "ipv4" in names
        assert "mac_address" not in names

    def test_prefix_cutoff(self):
        # rule evidence past the prefix is invisible
        lines = ["plain line"] * 2499 + ["addr fe80::1 seen"] + ["plain line"] * 500
        at_2000 = estimate_applicability(lines, default_catalog(), prefix_size=2000)
        at_3000 = estimate_applicability(lines, default_catalog(), prefix_size=3000)
        assert not at_2000.get("ipv6").enabled
        assert at_3000.get("ipv6").enabled

    def test_disabled_rules_stay_disabled(self):
        lines = ["blk_123 replicated"]
        estimated = estimate_applicability(lines, default_catalog())
        assert not estimated.get("block_id").enabled

    def test_empty_input_warns_and_keeps_catalog(self):
        catalog = default_catalog()
        estimated = estimate_applicability([], catalog)
        assert estimated.rules == catalog.rules
        assert any("no input" in warning for warning in estimated.warnings)

    def test_bad_prefix_size(self):
        with pytest.raises(ValueError):
            estimate_applicability(["x"], default_catalog(), prefix_size=0)

    def test_estimation_only_disables(self):
        lines = [
            "peer 10.0.0.1:80 at 12:00:00 got 5MB in 30ms from /var/run caf3d 1.5 x=2"
        ]
        estimated = estimate_applicability(lines, default_catalog())
        before = {rule.name for rule in default_catalog().enabled_rules}
        after = {rule.name for rule in estimated.enabled_rules}
        assert after <= before
