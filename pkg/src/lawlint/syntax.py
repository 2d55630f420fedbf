"""Ambiguous and redundant operator syntax detection.

A pattern is an anchored pair of operator sets with a character budget
between them ("and ... or" with at most 50 characters in between). The
catalog is data-driven so users can refine patterns against false
positives. Matching runs on raw lowercased element text because the gap
budget is character-denominated.
"""

from __future__ import annotations

import csv
import json
import random
import re
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from .corpus import Snapshot

__all__ = [
    "SyntaxPattern",
    "SyntaxMatch",
    "default_catalog",
    "load_catalog",
    "find_matches",
    "pattern_counts",
    "sample_candidates",
    "write_review_sheet",
]

DEFAULT_GAP = 50
EXCERPT_CONTEXT = 40


@dataclass(frozen=True)
class SyntaxPattern:
    name: str
    # Alternative (left, right) anchor pairs; an entry is a whole-word
    # operator phrase unless ``literal`` marks it as a raw regex.
    pairs: tuple[tuple[str, str], ...]
    gap: int = DEFAULT_GAP
    klass: str = "cooccurrence"  # cooccurrence | negation | opposition | redundant
    literal: Optional[str] = None  # raw regex overriding the pair machinery

    def regex(self) -> re.Pattern:
        if self.literal is not None:
            return re.compile(self.literal, re.DOTALL)
        alts = []
        for left, right in self.pairs:
            left_re = r"\b" + re.escape(left) + r"\b"
            right_re = r"\b" + re.escape(right) + r"\b"
            alts.append(f"{left_re}.{{0,{self.gap}}}?{right_re}")
        return re.compile("|".join(f"(?:{a})" for a in alts), re.DOTALL)


@dataclass(frozen=True)
class SyntaxMatch:
    pattern: str
    element_id: str
    span: tuple[int, int]
    excerpt: str
    snapshot: str


def default_catalog(gap: int = DEFAULT_GAP) -> list[SyntaxPattern]:
    def p(name, pairs, klass):
        return SyntaxPattern(name=name, pairs=tuple(pairs), gap=gap, klass=klass)

    ops = ["and", "or"]
    return [
        p("and...and", [("and", "and")], "cooccurrence"),
        p("or...or", [("or", "or")], "cooccurrence"),
        p("and...or|or...and", [("and", "or"), ("or", "and")], "cooccurrence"),
        p("no...(and|or)", [("no", o) for o in ops], "negation"),
        p("not...(and|or)", [("not", o) for o in ops], "negation"),
        p("notwithstanding...(and|or)", [("notwithstanding", o) for o in ops], "negation"),
        p("(and|or)...but not", [(o, "but not") for o in ops], "opposition"),
        p("(and|or)...except", [(o, "except") for o in ops], "opposition"),
        p("(and|or)...unless", [(o, "unless") for o in ops], "opposition"),
        SyntaxPattern(
            name="and/or",
            pairs=(),
            gap=gap,
            klass="redundant",
            literal=r"\band\s*/\s*or\b",
        ),
        SyntaxPattern(
            name=", or ... or both",
            pairs=(),
            gap=gap,
            klass="redundant",
            literal=rf",\s*or\b.{{0,{gap}}}?\bor both\b",
        ),
    ]


def load_catalog(path: str) -> list[SyntaxPattern]:
    """Catalog config: JSON list of {name, left, right, gap, class} entries;
    left/right may be strings or lists (cross product of alternatives).
    Entries sharing a name form one pattern."""
    with open(path, encoding="utf-8") as fh:
        rows = json.load(fh)
    grouped: dict[str, dict] = {}
    for row in rows:
        name = row["name"]
        entry = grouped.setdefault(
            name,
            {"pairs": [], "gap": row.get("gap", DEFAULT_GAP),
             "class": row.get("class", "cooccurrence"), "literal": row.get("literal")},
        )
        lefts = row.get("left", [])
        rights = row.get("right", [])
        if isinstance(lefts, str):
            lefts = [lefts]
        if isinstance(rights, str):
            rights = [rights]
        entry["pairs"].extend((l, r) for l in lefts for r in rights)
    return [
        SyntaxPattern(
            name=name,
            pairs=tuple(e["pairs"]),
            gap=e["gap"],
            klass=e["class"],
            literal=e["literal"],
        )
        for name, e in grouped.items()
    ]


def match_text(
    text: str, pattern: SyntaxPattern, element_id: str = "", snapshot: str = ""
) -> list[SyntaxMatch]:
    """Non-overlapping left-to-right matches of one pattern in one text."""
    lowered = text.lower()
    out: list[SyntaxMatch] = []
    for m in pattern.regex().finditer(lowered):
        start, end = m.span()
        excerpt = text[max(0, start - EXCERPT_CONTEXT) : end + EXCERPT_CONTEXT]
        out.append(
            SyntaxMatch(
                pattern=pattern.name,
                element_id=element_id,
                span=(start, end),
                excerpt=excerpt,
                snapshot=snapshot,
            )
        )
    return out


def find_matches(
    s: Snapshot, catalog: Optional[Sequence[SyntaxPattern]] = None
) -> list[SyntaxMatch]:
    """Scan every element's own text; document order, then offset."""
    if catalog is None:
        catalog = default_catalog()
    matches: list[SyntaxMatch] = []
    for eid in s.iter_preorder():
        text = s.elements[eid].own_text
        if not text:
            continue
        per_element: list[SyntaxMatch] = []
        for pattern in catalog:
            per_element.extend(match_text(text, pattern, eid, s.label))
        per_element.sort(key=lambda m: (m.span, m.pattern))
        matches.extend(per_element)
    return matches


def pattern_counts(
    s: Snapshot,
    catalog: Optional[Sequence[SyntaxPattern]] = None,
    matches: Optional[Sequence[SyntaxMatch]] = None,
    per_scope: bool = False,
) -> dict[str, dict[str, Optional[float]]]:
    """Per-pattern {abs, per_1000_tokens}; optionally keyed by top-level
    ancestor scope. Zero-token scopes report per_1000 as None."""
    if catalog is None:
        catalog = default_catalog()
    if matches is None:
        matches = find_matches(s, catalog)
    names = [p.name for p in catalog]

    def tally(subset: Sequence[SyntaxMatch], tokens: int) -> dict:
        out: dict[str, dict[str, Optional[float]]] = {}
        for name in names:
            n = sum(1 for m in subset if m.pattern == name)
            out[name] = {
                "abs": n,
                "per_1000_tokens": (n / tokens * 1000.0) if tokens else None,
            }
        return out

    if not per_scope:
        return tally(matches, s.total_tokens())
    result: dict[str, dict] = {}
    for root in s.roots:
        subset = [m for m in matches if s.top_ancestor(m.element_id) == root]
        result[root] = tally(subset, s.token_index_inclusive[root])
    return result


def sample_candidates(
    matches: Sequence[SyntaxMatch], n: int = 100, seed: int = 0
) -> list[SyntaxMatch]:
    """Uniform sample without replacement for manual review; reproducible."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if not matches:
        raise ValueError("no matches to sample from")
    if len(matches) <= n:
        return list(matches)
    rng = random.Random(seed)
    indices = sorted(rng.sample(range(len(matches)), n))
    return [matches[i] for i in indices]


def write_review_sheet(matches: Iterable[SyntaxMatch], path: str) -> None:
    """CSV review sheet with an empty verdict column for human judgment."""
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, quoting=csv.QUOTE_ALL)
        writer.writerow(["pattern", "location", "excerpt", "verdict"])
        for m in matches:
            location = f"{m.snapshot}:{m.element_id}:{m.span[0]}-{m.span[1]}"
            writer.writerow([m.pattern, location, m.excerpt, ""])
