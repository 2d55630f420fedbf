import collections
import csv
import random

import pytest

from lawlint.syntax import (
    default_catalog,
    find_matches,
    load_catalog,
    match_text,
    pattern_counts,
    sample_candidates,
    write_review_sheet,
)

from conftest import element, make_snapshot

RULEMAKING = (
    "Such rulemaking shall relate to unfair or deceptive acts or practices "
    "regarding mortgage loans, which may include unfair or deceptive acts or "
    "practices involving loan modification and foreclosure rescue services."
)


def catalog_by_name():
    return {p.name: p for p in default_catalog()}


class TestPatterns:
    def test_rulemaking_sentence(self):
        cat = catalog_by_name()
        assert match_text(RULEMAKING, cat["or...or"])
        assert match_text(RULEMAKING, cat["and...or|or...and"])

    def test_single_operator_no_match(self):
        cat = catalog_by_name()
        assert match_text("apples and pears", cat["and...and"]) == []

    @pytest.mark.parametrize("gap_chars,expected", [(50, 1), (51, 0)])
    def test_gap_boundary(self, gap_chars, expected):
        # between-anchor budget is exactly 50 characters
        filler = " " + "x" * (gap_chars - 2) + " "
        text = f"A and{filler}or C"
        cat = catalog_by_name()
        assert len(match_text(text, cat["and...or|or...and"])) == expected

    def test_and_slash_or(self):
        cat = catalog_by_name()
        assert match_text("interstate and/or foreign commerce", cat["and/or"])
        assert match_text("interstate and / or foreign commerce", cat["and/or"])

    def test_or_both(self):
        cat = catalog_by_name()
        text = (
            "shall be fined not more than $5,000, or imprisoned not more than "
            "one year or both"
        )
        assert match_text(text, cat[", or ... or both"])

    def test_negation_and_opposition(self):
        cat = catalog_by_name()
        assert match_text("no person may act and no entity", cat["no...(and|or)"])
        assert match_text("fruit or vegetables except tomatoes", cat["(and|or)...except"])

    def test_word_boundaries(self):
        cat = catalog_by_name()
        assert match_text("sand or gravel for borders", cat["and...or|or...and"]) == []

    def test_nonoverlap_within_pattern(self):
        cat = catalog_by_name()
        matches = match_text("a or b or c or d or e", cat["or...or"])
        spans = [m.span for m in matches]
        for (s1, e1), (s2, e2) in zip(spans, spans[1:]):
            assert e1 <= s2

    def test_gap_budget_is_exact(self):
        # Every match under a narrow budget still matches (in isolation)
        # under a wider one, and no match ever exceeds its budget. Match
        # *counts* are not monotone in the gap because matches consume text.
        rng = random.Random(0)
        words = ["and", "or", "no", "cat", "dog", "runs", ","]
        for _ in range(20):
            text = " ".join(rng.choice(words) for _ in range(60))
            for pattern in default_catalog(50):
                if pattern.literal:
                    continue
                narrow_pattern = type(pattern)(
                    name=pattern.name, pairs=pattern.pairs, gap=20, klass=pattern.klass
                )
                for m in match_text(text, narrow_pattern):
                    segment = text[m.span[0] : m.span[1]]
                    assert match_text(segment, pattern)

    def test_spans_rematch_in_isolation(self):
        cat = catalog_by_name()
        for m in match_text(RULEMAKING, cat["or...or"]):
            segment = RULEMAKING[m.span[0] : m.span[1]]
            assert match_text(segment, cat["or...or"])


class TestFindMatches:
    def test_document_order(self, toy_document):
        matches = find_matches(toy_document)
        order = toy_document.document_order()
        keys = [(order[m.element_id], m.span) for m in matches]
        assert keys == sorted(keys)

    def test_toy_hits(self, toy_document):
        matches = find_matches(toy_document)
        by_pattern = collections.Counter(m.pattern for m in matches)
        assert by_pattern["or...or"] >= 1  # "Apples or pears or plums"
        assert by_pattern["and/or"] >= 1  # s9


class TestCounts:
    def test_empty_corpus(self):
        s = make_snapshot([element("r", "title", "")], ["r"])
        counts = pattern_counts(s)
        assert all(v["abs"] == 0 for v in counts.values())
        assert all(v["per_1000_tokens"] is None for v in counts.values())

    def test_arithmetic(self):
        text = "one or two or " + "word " * 1996  # 2,000 tokens total
        s = make_snapshot([element("r", "section", text)], ["r"])
        counts = pattern_counts(s)
        assert counts["or...or"]["abs"] == 1
        assert counts["or...or"]["per_1000_tokens"] == pytest.approx(0.5)

    def test_counts_match_find_matches(self, toy_document):
        matches = find_matches(toy_document)
        counts = pattern_counts(toy_document, matches=matches)
        tally = collections.Counter(m.pattern for m in matches)
        for name, entry in counts.items():
            assert entry["abs"] == tally.get(name, 0)


class TestSample:
    def test_returns_all_when_few(self, toy_document):
        matches = find_matches(toy_document)
        assert sample_candidates(matches, n=100, seed=1) == matches

    def test_deterministic(self):
        matches = find_matches_many()
        assert sample_candidates(matches, 10, seed=7) == sample_candidates(
            matches, 10, seed=7
        )

    def test_approximately_uniform(self):
        matches = find_matches_many()
        hits = collections.Counter()
        trials, k = 10_000, 5
        for seed in range(trials):
            for m in sample_candidates(matches, k, seed=seed):
                hits[m.span] += 1
        n = len(matches)
        expected = trials * k / n
        sigma = (trials * (k / n) * (1 - k / n)) ** 0.5
        for count in hits.values():
            assert abs(count - expected) < 3.5 * sigma

    def test_empty_rejected(self):
        with pytest.raises(ValueError):
            sample_candidates([], 5, seed=0)


def find_matches_many():
    text = " ".join(f"alpha or beta{i} or gamma." for i in range(20))
    s = make_snapshot([element("r", "section", text)], ["r"])
    return find_matches(s)


class TestCatalogConfig:
    def test_load_and_match(self, tmp_path):
        path = tmp_path / "catalog.json"
        path.write_text(
            '[{"name": "and...or|or...and", "left": "and", "right": "or", "gap": 50},'
            ' {"name": "and...or|or...and", "left": "or", "right": "and", "gap": 50}]'
        )
        catalog = load_catalog(str(path))
        assert len(catalog) == 1
        assert match_text("this and that or other", catalog[0])


class TestReviewSheet:
    def test_columns_and_empty_verdict(self, toy_document, tmp_path):
        matches = find_matches(toy_document)
        path = tmp_path / "sheet.csv"
        write_review_sheet(matches, str(path))
        with open(path, newline="") as fh:
            rows = list(csv.reader(fh))
        assert rows[0] == ["pattern", "location", "excerpt", "verdict"]
        assert len(rows) == len(matches) + 1
        assert all(row[3] == "" for row in rows[1:])
