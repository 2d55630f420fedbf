"""Element length statistics: long-element flags, CCDFs, icicle export."""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from typing import Optional, Sequence

from .corpus import Snapshot

__all__ = [
    "LengthRecord",
    "IcicleNode",
    "LengthRule",
    "measure_lengths",
    "flag_long_absolute",
    "flag_long_relative",
    "ccdf",
    "nearest_rank_quantile",
    "icicle_tree",
]

DEFAULT_PAGE_TOKENS = 500  # tokens on a typical printed page


@dataclass(frozen=True)
class LengthRecord:
    element_id: str
    kind: str
    inclusive_tokens: int
    heading: Optional[str]
    ancestors: tuple[str, ...]  # root-first path of ancestor ids


@dataclass
class IcicleNode:
    id: str
    heading: Optional[str]
    size: int
    children: list["IcicleNode"] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "id": self.id,
            "heading": self.heading,
            "size": self.size,
            "children": [c.to_dict() for c in self.children],
        }


@dataclass(frozen=True)
class LengthFinding:
    element_id: str
    inclusive_tokens: int
    threshold: int
    heading: Optional[str]
    scope: Optional[str] = None  # ancestor group for relative flags
    annotation: str = ""  # free-text verbosity category, never auto-filled


def measure_lengths(s: Snapshot, kind: str) -> list[LengthRecord]:
    """One record per element of ``kind``, in document order."""
    records: list[LengthRecord] = []
    for eid in s.iter_preorder():
        e = s.elements[eid]
        if e.kind != kind:
            continue
        path: list[str] = []
        cur = e
        while cur.parent is not None:
            path.append(cur.parent)
            cur = s.elements[cur.parent]
        records.append(
            LengthRecord(
                element_id=eid,
                kind=kind,
                inclusive_tokens=s.token_index_inclusive[eid],
                heading=e.heading,
                ancestors=tuple(reversed(path)),
            )
        )
    if not records:
        warnings.warn(f"no elements of kind {kind!r} in snapshot {s.label!r}")
    return records


def flag_long_absolute(
    records: Sequence[LengthRecord], threshold_tokens: int = DEFAULT_PAGE_TOKENS
) -> list[LengthFinding]:
    """Flag records strictly longer than the threshold (a 500-token element
    is exactly one page, not long)."""
    if threshold_tokens <= 0:
        raise ValueError("threshold must be positive")
    return [
        LengthFinding(r.element_id, r.inclusive_tokens, threshold_tokens, r.heading)
        for r in records
        if r.inclusive_tokens > threshold_tokens
    ]


def ccdf(lengths: Sequence[int]) -> list[tuple[int, float]]:
    """Pairs (L, fraction strictly longer than L) at every distinct length."""
    if not lengths:
        raise ValueError("ccdf of empty input")
    values = sorted(lengths)
    n = len(values)
    out: list[tuple[int, float]] = []
    i = 0
    while i < n:
        j = i
        while j < n and values[j] == values[i]:
            j += 1
        out.append((values[i], (n - j) / n))
        i = j
    return out


def nearest_rank_quantile(values: Sequence[int], q: float) -> int:
    """Nearest-rank quantile: always a realized value, no interpolation."""
    if not values:
        raise ValueError("quantile of empty input")
    if not 0.0 < q <= 1.0:
        raise ValueError("q must be in (0, 1]")
    # Rank floor(q*n) (at least 1): the returned value is the largest
    # observed length not yet in the top (1-q) tail, so strictly-greater
    # flagging catches exactly that tail.
    ordered = sorted(values)
    rank = max(1, math.floor(q * len(ordered)))
    return ordered[rank - 1]


@dataclass(frozen=True)
class LengthRule:
    """Relative-length rule: a quantile, a token count, or the max of both."""

    quantile: Optional[float] = None
    tokens: Optional[int] = None

    def threshold(self, group_lengths: Sequence[int]) -> int:
        if self.quantile is None and self.tokens is None:
            raise ValueError("rule needs a quantile, a token count, or both")
        thresholds = []
        if self.quantile is not None:
            thresholds.append(nearest_rank_quantile(group_lengths, self.quantile))
        if self.tokens is not None:
            thresholds.append(self.tokens)
        return max(thresholds)


def flag_long_relative(
    s: Snapshot,
    records: Sequence[LengthRecord],
    scope_kind: str,
    rule: LengthRule,
) -> list[LengthFinding]:
    """Group records by their ``scope_kind`` ancestor and flag within groups."""
    groups: dict[str, list[LengthRecord]] = {}
    for r in records:
        scope = s.ancestor_of_kind(r.element_id, scope_kind)
        if scope is None:
            raise ValueError(
                f"element {r.element_id!r} has no ancestor of kind {scope_kind!r}"
            )
        groups.setdefault(scope, []).append(r)
    findings: list[LengthFinding] = []
    for scope, members in groups.items():
        threshold = rule.threshold([m.inclusive_tokens for m in members])
        findings.extend(
            LengthFinding(
                m.element_id, m.inclusive_tokens, threshold, m.heading, scope=scope
            )
            for m in members
            if m.inclusive_tokens > threshold
        )
    order = s.document_order()
    findings.sort(key=lambda f: order[f.element_id])
    return findings


def icicle_tree(s: Snapshot, root: str) -> IcicleNode:
    """Full subtree with inclusive token sizes, ready for the viewer."""
    if root not in s.elements:
        raise KeyError(f"unknown root: {root!r}")

    def build(eid: str) -> IcicleNode:
        e = s.elements[eid]
        return IcicleNode(
            id=eid,
            heading=e.heading,
            size=s.token_index_inclusive[eid],
            children=[build(c) for c in e.children],
        )

    return build(root)
