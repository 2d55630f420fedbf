"""Typed-entity extraction (natural language obsession) and placeholder
substitution for parametrized phrase mining.

Patterns are deliberately simple and conservative; every count downstream
is a lower bound. The catalog is user-extensible via a config file.
"""

from __future__ import annotations

import csv
import json
import logging
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Union

import numpy as np
from scipy.cluster.hierarchy import leaves_list, linkage

from .corpus import Snapshot
from .dupex import ReportedPhrase

__all__ = [
    "EntityMention",
    "CommitteeProfile",
    "ENTITY_TYPES",
    "SUBSTITUTION_PRIORITY",
    "PLACEHOLDERS",
    "extract_from_text",
    "extract_entities",
    "substitute_placeholders",
    "substituted_element_text",
    "entity_density",
    "committee_profiles",
    "load_committee_registry",
]

logger = logging.getLogger(__name__)

ENTITY_TYPES = (
    "money",
    "percentage",
    "time_period",
    "time_point",
    "term",
    "reference",
    "committee",
)

# Overlap resolution when substituting placeholders across types.
SUBSTITUTION_PRIORITY = (
    "reference",
    "term",
    "money",
    "percentage",
    "time_period",
    "time_point",
)

PLACEHOLDERS = {
    "money": "{money}",
    "percentage": "{percentage}",
    "time_period": "{period}",
    "time_point": "{date}",
    "term": "{term}",
    "reference": "{reference}",
}

_MONTHS = (
    "january february march april may june july august september october "
    "november december".split()
)
_MONTH_RE = "|".join(_MONTHS)

_PATTERNS: dict[str, re.Pattern] = {
    "money": re.compile(r"\$\d+(?:,\d{3})*(?:\.\d+)?"),
    "percentage": re.compile(
        r"\b\d+(?:\.\d+)?(?:\s*%|\s+percent(?:um)?\b|\s+per\s+centum\b)", re.IGNORECASE
    ),
    "time_period": re.compile(
        r"\b\d+(?:,\d{3})*\s+(day|week|month|year)s?\b", re.IGNORECASE
    ),
    "time_point": re.compile(
        rf"\b(?:{_MONTH_RE})\s+\d{{1,2}}\b(?:,\s*\d{{4}})?", re.IGNORECASE
    ),
    "term": re.compile(r"\bthe\s+term\s+(['‘\"“]([^'’\"”]+)['’\"”])", re.IGNORECASE),
    "reference": re.compile(
        r"\b(section|chapter|subchapter|part|title)s?\s+[0-9][\w.\-()]*"
        r"(?:\s+of\s+title\s+\d+)?",
        re.IGNORECASE,
    ),
    "committee": re.compile(
        r"\bcommittee\s+on\s+(.+?)\s+of\s+the\s+(senate|house\s+of\s+representatives)\b",
        re.IGNORECASE,
    ),
}

Normalized = Union[int, Fraction, tuple, str]


@dataclass(frozen=True)
class EntityMention:
    type: str
    element_id: str
    span: tuple[int, int]
    raw: str
    normalized: Normalized


def _normalize(kind: str, m: re.Match) -> Normalized:
    text = m.group(0)
    if kind == "money":
        digits = text[1:].split(".")[0].replace(",", "")
        return int(digits)
    if kind == "percentage":
        number = re.match(r"\d+(?:\.\d+)?", text).group(0)
        return Fraction(number) / 100
    if kind == "time_period":
        value = int(re.match(r"[\d,]+", text).group(0).replace(",", ""))
        unit = m.group(1).lower()
        return (value, unit)
    if kind == "time_point":
        month = re.match(r"[a-z]+", text.lower()).group(0)
        day = int(re.search(r"\s(\d{1,2})", text).group(1))
        year_match = re.search(r",\s*(\d{4})", text)
        year = int(year_match.group(1)) if year_match else None
        return (month, day, year)
    if kind == "term":
        return m.group(2)
    if kind == "reference":
        return " ".join(text.lower().split())
    if kind == "committee":
        topic = " ".join(m.group(1).lower().split())
        parent = " ".join(m.group(2).lower().split())
        return (topic, parent)
    raise ValueError(f"unknown entity type: {kind}")


def extract_from_text(
    text: str, element_id: str = "", types: Sequence[str] = ENTITY_TYPES
) -> list[EntityMention]:
    """All mentions in one text, document order; longest match wins within
    a type (regex alternations are already longest-first)."""
    mentions: list[EntityMention] = []
    for kind in types:
        pattern = _PATTERNS[kind]
        # The term pattern anchors on "the term" but the mention (and the
        # placeholder it becomes) is only the quoted span.
        span_group = 1 if kind == "term" else 0
        taken_until = -1
        for m in pattern.finditer(text):
            if m.start(span_group) < taken_until:
                continue  # overlap within one type: keep the earlier match
            taken_until = m.end(span_group)
            mentions.append(
                EntityMention(
                    type=kind,
                    element_id=element_id,
                    span=m.span(span_group),
                    raw=m.group(span_group),
                    normalized=_normalize(kind, m),
                )
            )
    mentions.sort(key=lambda e: (e.span, e.type))
    return mentions


def extract_entities(
    s: Snapshot, types: Sequence[str] = ENTITY_TYPES
) -> list[EntityMention]:
    mentions: list[EntityMention] = []
    for eid in s.iter_preorder():
        text = s.elements[eid].own_text
        if text:
            mentions.extend(extract_from_text(text, eid, types))
    return mentions


def substitute_placeholders(
    text: str, mentions: Sequence[EntityMention]
) -> tuple[str, list[EntityMention]]:
    """Replace mention spans with single placeholder tokens.

    Returns the parametrized text and the substituted mentions in order (the
    side table mapping placeholder instances back to values). Overlaps
    across types resolve by SUBSTITUTION_PRIORITY; committee mentions are
    never substituted.
    """
    rank = {t: i for i, t in enumerate(SUBSTITUTION_PRIORITY)}
    eligible = sorted(
        (m for m in mentions if m.type in PLACEHOLDERS),
        key=lambda m: (rank[m.type], m.span),
    )
    chosen: list[EntityMention] = []
    occupied: list[tuple[int, int]] = []
    for m in eligible:
        s0, e0 = m.span
        clash = next((o for o in occupied if s0 < o[1] and o[0] < e0), None)
        if clash is not None:
            logger.debug(
                "dropping %s mention %r overlapping span %s", m.type, m.raw, clash
            )
            continue
        occupied.append(m.span)
        chosen.append(m)
    chosen.sort(key=lambda m: m.span)
    out: list[str] = []
    pos = 0
    for m in chosen:
        out.append(text[pos : m.span[0]])
        out.append(PLACEHOLDERS[m.type])
        pos = m.span[1]
    out.append(text[pos:])
    return "".join(out), chosen


def substituted_element_text(s: Snapshot, eid: str) -> str:
    text = s.elements[eid].own_text
    if not text:
        return text
    return substitute_placeholders(text, extract_from_text(text, eid))[0]


def substituted_tokens(s: Snapshot, root: Optional[str] = None) -> list[str]:
    """Placeholder-substituted, tokenized stream for phrase mining."""
    from .corpus import tokenize

    ids = s.iter_preorder(root) if root else s.iter_preorder()
    tokens: list[str] = []
    for eid in ids:
        text = substituted_element_text(s, eid)
        if text:
            tokens.extend(tokenize(text).tokens)
    return tokens


def entity_density(
    s: Snapshot,
    types: Sequence[str] = ("money", "percentage", "time_period", "time_point"),
    mentions: Optional[Sequence[EntityMention]] = None,
) -> dict:
    """Mentions per 1,000 tokens, scoped by top-level ancestor.

    Zero-token scopes are reported as None (white fields); the 99th
    percentile of cell values is included as the display colormap cap.
    """
    if mentions is None:
        mentions = extract_entities(s, types)
    cells: dict[str, dict[str, Optional[float]]] = {}
    values: list[float] = []
    for root in s.roots:
        tokens = s.token_index_inclusive[root]
        row: dict[str, Optional[float]] = {}
        for kind in types:
            if tokens == 0:
                row[kind] = None
                continue
            n = sum(
                1
                for m in mentions
                if m.type == kind and s.top_ancestor(m.element_id) == root
            )
            row[kind] = n / tokens * 1000.0
            values.append(row[kind])
        cells[root] = row
    cap = float(np.percentile(values, 99)) if values else None
    return {"cells": cells, "colormap_cap": cap}


@dataclass
class CommitteeProfile:
    committees: list[str]  # row labels, parent initial + topic
    scopes: list[str]
    matrix: np.ndarray  # mentions per 1,000 scope tokens
    defunct: dict[str, bool]
    row_linkage: Optional[np.ndarray] = None
    col_linkage: Optional[np.ndarray] = None
    row_order: Optional[list[int]] = None
    col_order: Optional[list[int]] = None

    def to_dict(self) -> dict:
        return {
            "committees": self.committees,
            "scopes": self.scopes,
            "matrix": self.matrix.tolist(),
            "defunct": self.defunct,
            "row_linkage": None if self.row_linkage is None else self.row_linkage.tolist(),
            "col_linkage": None if self.col_linkage is None else self.col_linkage.tolist(),
            "row_order": self.row_order,
            "col_order": self.col_order,
        }


def load_committee_registry(path: str) -> list[dict]:
    """CSV registry: abbrev, full_name, parent, active_from, active_to."""
    with open(path, encoding="utf-8", newline="") as fh:
        return list(csv.DictReader(fh))


def _correlation_linkage(matrix: np.ndarray) -> tuple[np.ndarray, list[int]]:
    # Pearson-correlation distance with a guard for constant vectors.
    n = matrix.shape[0]
    dist = []
    for i in range(n):
        for j in range(i + 1, n):
            a, b = matrix[i], matrix[j]
            if np.ptp(a) == 0 or np.ptp(b) == 0:
                dist.append(1.0)
                continue
            r = np.corrcoef(a, b)[0, 1]
            dist.append(max(0.0, 1.0 - r))
    merges = linkage(np.asarray(dist), method="average")
    return merges, leaves_list(merges).tolist()


def committee_profiles(
    phrases_per_scope: dict[str, Sequence[ReportedPhrase]],
    s: Snapshot,
    registry: Optional[Sequence[dict]] = None,
) -> CommitteeProfile:
    """Committee mention densities counted inside duplicated phrases only.

    A committee mentioned k times in a phrase duplicated c times counts
    k * c; cells are normalized per 1,000 scope tokens. All-zero rows and
    columns are dropped before clustering both axes with correlation
    distance and average linkage.
    """
    counts: dict[str, dict[str, float]] = {}
    for scope, phrases in phrases_per_scope.items():
        scope_tokens = s.token_index_inclusive.get(scope, 0)
        if scope_tokens == 0:
            continue
        for p in phrases:
            text = " ".join(p.expansion)
            for m in _PATTERNS["committee"].finditer(text):
                topic = " ".join(m.group(1).lower().split())
                parent = " ".join(m.group(2).lower().split())
                key = f"{parent[0].upper()}: {topic}"
                counts.setdefault(key, {})
                counts[key][scope] = (
                    counts[key].get(scope, 0.0) + p.abs_count / scope_tokens * 1000.0
                )

    committees = sorted(counts)
    scopes = sorted({sc for row in counts.values() for sc in row})
    matrix = np.zeros((len(committees), len(scopes)))
    for i, c in enumerate(committees):
        for j, sc in enumerate(scopes):
            matrix[i, j] = counts[c].get(sc, 0.0)

    # Drop all-zero rows/columns (committees or scopes with no mentions).
    row_keep = matrix.sum(axis=1) > 0
    col_keep = matrix.sum(axis=0) > 0
    committees = [c for c, k in zip(committees, row_keep) if k]
    scopes = [sc for sc, k in zip(scopes, col_keep) if k]
    matrix = matrix[np.ix_(row_keep, col_keep)]

    defunct = {c: False for c in committees}
    if registry:
        active: dict[str, bool] = {}
        for row in registry:
            key = f"{row['parent'][0].upper()}: {row['full_name'].lower()}"
            active[key] = not row.get("active_to", "").strip()
        for c in committees:
            if c in active:
                defunct[c] = not active[c]

    profile = CommitteeProfile(
        committees=committees, scopes=scopes, matrix=matrix, defunct=defunct
    )
    if len(committees) >= 2 and len(scopes) >= 2:
        profile.row_linkage, profile.row_order = _correlation_linkage(matrix)
        profile.col_linkage, profile.col_order = _correlation_linkage(matrix.T)
    return profile
