import random
from fractions import Fraction

import numpy as np
import pytest

from lawlint.corpus import tokenize
from lawlint.dupex import ReportedPhrase
from lawlint.entities import (
    PLACEHOLDERS,
    committee_profiles,
    entity_density,
    extract_entities,
    extract_from_text,
    substitute_placeholders,
    substituted_tokens,
)

from conftest import element, make_snapshot


def by_type(mentions):
    out = {}
    for m in mentions:
        out.setdefault(m.type, []).append(m)
    return out


class TestExtraction:
    def test_money(self):
        (m,) = extract_from_text("$1,000")
        assert m.type == "money" and m.normalized == 1000

    def test_percentage(self):
        (m,) = extract_from_text("50 percent")
        assert m.type == "percentage" and m.normalized == Fraction(1, 2)
        (m,) = extract_from_text("12.5%")
        assert m.normalized == Fraction(1, 8)

    def test_period(self):
        (m,) = extract_from_text("30 days")
        assert m.type == "time_period" and m.normalized == (30, "day")

    def test_point(self):
        (m,) = extract_from_text("January 1")
        assert m.type == "time_point" and m.normalized == ("january", 1, None)
        (m,) = extract_from_text("March 4, 1999")
        assert m.normalized == ("march", 4, 1999)

    def test_committee(self):
        text = "the committee on homeland security and governmental affairs of the senate"
        mentions = by_type(extract_from_text(text))
        (m,) = mentions["committee"]
        assert m.normalized == (
            "homeland security and governmental affairs",
            "senate",
        )

    def test_term(self):
        (m,) = [x for x in extract_from_text("the term 'small entity' means") if x.type == "term"]
        assert m.normalized == "small entity"

    def test_reference(self):
        mentions = by_type(extract_from_text("as provided in section 1395ww of title 42"))
        (m,) = mentions["reference"]
        assert m.normalized == "section 1395ww of title 42"

    def test_normalized_reserializes_matchably(self):
        samples = ["$2,500", "75 percent", "14 days", "July 4, 1976"]
        for text in samples:
            (m,) = extract_from_text(text)
            again = extract_from_text(m.raw)
            assert [a.normalized for a in again] == [m.normalized]

    def test_document_order(self, toy_document):
        mentions = extract_entities(toy_document)
        order = toy_document.document_order()
        keys = [(order[m.element_id], m.span) for m in mentions]
        assert keys == sorted(keys)


class TestSubstitution:
    def test_period_and_date(self):
        text = "not later than 30 days after January 1"
        out, side = substitute_placeholders(text, extract_from_text(text))
        assert out == "not later than {period} after {date}"
        assert [m.type for m in side] == ["time_period", "time_point"]

    def test_no_mentions(self):
        text = "nothing to see here"
        out, side = substitute_placeholders(text, [])
        assert out == text and side == []

    def test_term_placeholder(self):
        text = "the term 'X' means"
        out, _ = substitute_placeholders(text, extract_from_text(text))
        assert out == "the term {term} means"

    def test_placeholder_is_single_token(self):
        for placeholder in PLACEHOLDERS.values():
            assert tokenize(placeholder).tokens == (placeholder,)

    def test_placeholder_count_matches_mentions(self):
        rng = random.Random(0)
        pieces = [
            "$1,500", "20 percent", "90 days", "June 30", "the term 'gadget' means",
            "plain words here",
        ]
        for _ in range(100):
            text = " and ".join(rng.choice(pieces) for _ in range(rng.randrange(1, 8)))
            mentions = extract_from_text(text)
            out, side = substitute_placeholders(text, mentions)
            tokens = tokenize(out).tokens
            for kind, placeholder in PLACEHOLDERS.items():
                expected = sum(1 for m in side if m.type == kind)
                assert tokens.count(placeholder) == expected


class TestDensity:
    def test_arithmetic(self):
        text = "pay $100 now and $200 later " + "w " * 3994  # 4,000 tokens
        s = make_snapshot([element("r", "title", text)], ["r"])
        density = entity_density(s)
        assert s.total_tokens() == 4000
        assert density["cells"]["r"]["money"] == pytest.approx(0.5)

    def test_empty_scope_absent(self):
        s = make_snapshot(
            [element("r1", "title", "ten percent of it"), element("r2", "title", "")],
            ["r1", "r2"],
        )
        density = entity_density(s)
        assert density["cells"]["r2"]["money"] is None
        assert density["cells"]["r1"]["percentage"] is not None

    def test_matches_brute_force(self, toy_document):
        density = entity_density(toy_document)
        mentions = extract_entities(
            toy_document, ("money", "percentage", "time_period", "time_point")
        )
        tokens = toy_document.token_index_inclusive["X"]
        for kind in ("money", "percentage", "time_period", "time_point"):
            brute = sum(1 for m in mentions if m.type == kind) / tokens * 1000
            assert density["cells"]["X"][kind] == pytest.approx(brute)


def committee_phrase(parent, topic, count):
    text = f"the committee on {topic} of the {parent}"
    return ReportedPhrase(tuple(text.split()), count, 0.0, 0.0)


class TestCommitteeProfiles:
    def snapshot_with_scopes(self, n=4):
        elements = [
            element(f"t{i}", "title", "w " * 1000) for i in range(n)
        ]
        return make_snapshot(elements, [f"t{i}" for i in range(n)])

    def test_single_cell(self):
        s = self.snapshot_with_scopes(1)
        profile = committee_profiles(
            {"t0": [committee_phrase("senate", "finance", 5)]}, s
        )
        assert profile.committees == ["S: finance"]
        assert profile.scopes == ["t0"]
        assert profile.row_linkage is None

    def test_collinear_columns_merge_at_zero(self):
        s = self.snapshot_with_scopes(2)
        phrases = {
            "t0": [committee_phrase("senate", "finance", 2),
                   committee_phrase("house of representatives", "rules", 4)],
            "t1": [committee_phrase("senate", "finance", 1),
                   committee_phrase("house of representatives", "rules", 2)],
        }
        profile = committee_profiles(phrases, s)
        assert profile.col_linkage[0, 2] == pytest.approx(0.0, abs=1e-12)

    def test_block_matrix_recovered(self):
        s = self.snapshot_with_scopes(4)
        phrases = {
            "t0": [committee_phrase("senate", "alpha", 10),
                   committee_phrase("senate", "beta", 9)],
            "t1": [committee_phrase("senate", "alpha", 11),
                   committee_phrase("senate", "beta", 10)],
            "t2": [committee_phrase("house of representatives", "gamma", 10),
                   committee_phrase("house of representatives", "delta", 9)],
            "t3": [committee_phrase("house of representatives", "gamma", 12),
                   committee_phrase("house of representatives", "delta", 11)],
        }
        profile = committee_profiles(phrases, s)
        first_two_cols = {frozenset(map(int, profile.col_linkage[i, :2])) for i in range(2)}
        t = {sc: i for i, sc in enumerate(profile.scopes)}
        assert first_two_cols == {
            frozenset({t["t0"], t["t1"]}),
            frozenset({t["t2"], t["t3"]}),
        }

    def test_zero_rows_dropped(self):
        s = self.snapshot_with_scopes(2)
        profile = committee_profiles(
            {"t0": [committee_phrase("senate", "finance", 3)], "t1": []}, s
        )
        assert profile.scopes == ["t0"]
        assert (profile.matrix > 0).all()

    def test_defunct_flag(self):
        s = self.snapshot_with_scopes(1)
        registry = [
            {"abbrev": "SGA", "full_name": "governmental affairs",
             "parent": "senate", "active_from": "1977", "active_to": "2005"},
        ]
        profile = committee_profiles(
            {"t0": [committee_phrase("senate", "governmental affairs", 2)]},
            s,
            registry=registry,
        )
        assert profile.defunct["S: governmental affairs"] is True


class TestSubstitutedTokens:
    def test_stream_contains_placeholders(self, toy_document):
        tokens = substituted_tokens(toy_document)
        assert "{money}" in tokens and "{date}" in tokens and "{term}" in tokens
