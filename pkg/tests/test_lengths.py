import random

import pytest

from lawlint.lengths import (
    LengthRecord,
    LengthRule,
    ccdf,
    flag_long_absolute,
    flag_long_relative,
    icicle_tree,
    measure_lengths,
    nearest_rank_quantile,
)

from conftest import element, make_snapshot


def record(eid, tokens):
    return LengthRecord(eid, "section", tokens, None, ())


class TestMeasure:
    def test_single_section(self):
        s = make_snapshot(
            [element("r", "title", children=["s1"]),
             element("s1", "section", "one two three four five six seven")],
            ["r"],
        )
        records = measure_lengths(s, "section")
        assert [r.inclusive_tokens for r in records] == [7]

    def test_inclusive_sum(self):
        s = make_snapshot(
            [element("r", "title", children=["s1"]),
             element("s1", "section", "a b c", children=["s1a"]),
             element("s1a", "subsection", "d e f g")],
            ["r"],
        )
        assert measure_lengths(s, "section")[0].inclusive_tokens == 7

    def test_toy_sections_in_preorder(self, toy_document):
        records = measure_lengths(toy_document, "section")
        assert [r.element_id for r in records] == [f"s{i}" for i in range(1, 10)]

    def test_unknown_kind_warns(self, toy_document):
        with pytest.warns(UserWarning):
            assert measure_lengths(toy_document, "article") == []


class TestAbsoluteFlag:
    def test_boundary_strict(self):
        records = [record("a", 500), record("b", 501)]
        findings = flag_long_absolute(records, 500)
        assert [f.element_id for f in findings] == ["b"]

    def test_severity_is_length(self):
        findings = flag_long_absolute([record("a", 900)], 500)
        assert findings[0].inclusive_tokens == 900

    def test_monotone_in_threshold(self):
        rng = random.Random(0)
        records = [record(f"e{i}", rng.randrange(1, 2000)) for i in range(200)]
        flagged_lo = {f.element_id for f in flag_long_absolute(records, 300)}
        flagged_hi = {f.element_id for f in flag_long_absolute(records, 600)}
        assert flagged_hi <= flagged_lo

    def test_threshold_must_be_positive(self):
        with pytest.raises(ValueError):
            flag_long_absolute([], 0)


class TestCcdf:
    def test_hand_counts(self):
        assert ccdf([1, 2, 3]) == [(1, 2 / 3), (2, 1 / 3), (3, 0.0)]

    def test_all_equal(self):
        assert ccdf([5, 5, 5]) == [(5, 0.0)]

    def test_against_brute_force(self):
        rng = random.Random(1)
        lengths = [rng.randrange(1, 50) for _ in range(100)]
        for value, fraction in ccdf(lengths):
            brute = sum(1 for x in lengths if x > value) / len(lengths)
            assert fraction == pytest.approx(brute)

    def test_nonincreasing(self):
        rng = random.Random(2)
        lengths = [rng.randrange(1, 30) for _ in range(60)]
        fractions = [f for _, f in ccdf(lengths)]
        assert fractions == sorted(fractions, reverse=True)

    def test_empty_rejected(self):
        with pytest.raises(ValueError):
            ccdf([])


class TestQuantile:
    def test_nearest_rank_is_realized(self):
        values = [10, 10, 10, 1000]
        # rank floor(0.9*4)=3: the largest value below the top-10% tail
        assert nearest_rank_quantile(values, 0.9) == 10
        assert nearest_rank_quantile(values, 1.0) == 1000
        assert nearest_rank_quantile(values, 0.5) == 10

    def test_quantile_in_observed_multiset(self):
        rng = random.Random(3)
        values = [rng.randrange(100) for _ in range(37)]
        for q in (0.1, 0.25, 0.5, 0.75, 0.9, 1.0):
            assert nearest_rank_quantile(values, q) in values


def grouped_snapshot():
    return make_snapshot(
        [
            element("r", "title", children=["c1", "c2"]),
            element("c1", "chapter", children=["a1", "a2", "a3", "a4"]),
            element("c2", "chapter", children=["b1"]),
            element("a1", "section", "w " * 10),
            element("a2", "section", "w " * 10),
            element("a3", "section", "w " * 10),
            element("a4", "section", "w " * 1000),
            element("b1", "section", "w " * 40),
        ],
        ["r"],
    )


class TestRelativeFlag:
    def test_quantile_rule(self):
        s = grouped_snapshot()
        records = measure_lengths(s, "section")
        findings = flag_long_relative(s, records, "chapter", LengthRule(quantile=0.9))
        assert [f.element_id for f in findings] == ["a4"]

    def test_token_rule_matches_absolute_within_groups(self):
        s = grouped_snapshot()
        records = measure_lengths(s, "section")
        relative = flag_long_relative(s, records, "chapter", LengthRule(tokens=500))
        absolute = flag_long_absolute(records, 500)
        assert [f.element_id for f in relative] == [f.element_id for f in absolute]

    def test_max_of_both(self):
        s = grouped_snapshot()
        records = measure_lengths(s, "section")
        findings = flag_long_relative(
            s, records, "chapter", LengthRule(quantile=0.5, tokens=500)
        )
        # max(group median, 500) flags only the 1000-token outlier
        assert [f.element_id for f in findings] == ["a4"]

    def test_missing_ancestor_rejected(self):
        s = grouped_snapshot()
        records = measure_lengths(s, "section")
        with pytest.raises(ValueError):
            flag_long_relative(s, records, "part", LengthRule(tokens=5))


class TestIcicle:
    def test_leaf(self):
        s = make_snapshot([element("r", "section", "a b c")], ["r"])
        node = icicle_tree(s, "r")
        assert node.children == [] and node.size == 3

    def test_toy_layers(self, toy_document):
        tree = icicle_tree(toy_document, "X")
        assert {c.id for c in tree.children} == {"A", "B"}
        chapter_ids = {c.id for child in tree.children for c in child.children}
        assert {"I", "II"} <= chapter_ids

    def test_child_sizes_bounded_random(self):
        rng = random.Random(4)
        for _ in range(100):
            n = rng.randrange(2, 12)
            elements = [element("e0", "title", "w " * rng.randrange(5))]
            for i in range(1, n):
                parent = rng.randrange(i)
                elements[parent]["children"].append(f"e{i}")
                elements.append(element(f"e{i}", "section", "w " * rng.randrange(5)))
            s = make_snapshot(elements, ["e0"])
            stack = [icicle_tree(s, "e0")]
            while stack:
                node = stack.pop()
                assert node.size >= sum(c.size for c in node.children)
                stack.extend(node.children)

    def test_unknown_root(self, toy_document):
        with pytest.raises(KeyError):
            icicle_tree(toy_document, "zz")

    def test_serialization(self, toy_document):
        d = icicle_tree(toy_document, "X").to_dict()
        assert set(d) == {"id", "heading", "size", "children"}
