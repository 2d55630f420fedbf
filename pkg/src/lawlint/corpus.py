"""Document model for hierarchically structured legal corpora.

A corpus snapshot is a forest of labeled elements (titles, chapters,
sections, ...) plus a list of resolved cross-references between elements.
Snapshots are immutable after loading; every downstream detector reads
from them concurrently without locking.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Callable, Iterator, Optional

__all__ = [
    "Element",
    "Reference",
    "Snapshot",
    "TokenStream",
    "LoadReport",
    "CorpusError",
    "tokenize",
    "load_snapshot",
    "parse_snapshot",
    "snapshot_to_dict",
    "save_snapshot",
]


class CorpusError(ValueError):
    """Malformed corpus input: bad schema, duplicate ids, cycles, dangling refs."""


@dataclass(frozen=True)
class Element:
    id: str
    kind: str
    label: str
    heading: Optional[str]
    own_text: str
    children: tuple[str, ...]
    parent: Optional[str]


@dataclass(frozen=True)
class Reference:
    source: str
    target: str
    raw: str


@dataclass(frozen=True)
class TokenStream:
    """Lowercased tokens with character spans into ``source_text``."""

    tokens: tuple[str, ...]
    spans: tuple[tuple[int, int], ...]
    origin: str
    source_text: str = ""

    def __len__(self) -> int:
        return len(self.tokens)


@dataclass(frozen=True)
class LoadReport:
    dropped_references: int = 0


# Characters that always become standalone tokens, except a comma sitting
# between two digits ("5,000" stays whole so money amounts survive).
_PUNCT = set('.,;:!?()[]"\'/§–—-')


def tokenize(text: str, origin: str = "") -> TokenStream:
    """Split ``text`` into lowercased tokens with source spans.

    Whitespace separates tokens; each punctuation character in ``_PUNCT``
    is its own token; digit runs with internal commas stay together.
    Pure and deterministic.
    """
    tokens: list[str] = []
    spans: list[tuple[int, int]] = []
    n = len(text)
    i = 0
    while i < n:
        c = text[i]
        if c.isspace():
            i += 1
            continue
        if c in _PUNCT:
            tokens.append(c.lower())
            spans.append((i, i + 1))
            i += 1
            continue
        start = i
        while i < n:
            c = text[i]
            if c.isspace():
                break
            if c in _PUNCT:
                if (
                    c == ","
                    and i > start
                    and text[i - 1].isdigit()
                    and i + 1 < n
                    and text[i + 1].isdigit()
                ):
                    i += 1
                    continue
                break
            i += 1
        tokens.append(text[start:i].lower())
        spans.append((start, i))
    return TokenStream(tuple(tokens), tuple(spans), origin, text)


@dataclass
class Snapshot:
    label: str
    roots: tuple[str, ...]
    elements: dict[str, Element]
    references: tuple[Reference, ...]
    token_index_own: dict[str, int] = field(default_factory=dict)
    token_index_inclusive: dict[str, int] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if not self.token_index_own:
            self._build_token_index()

    def _build_token_index(self) -> None:
        own = {eid: len(tokenize(e.own_text)) for eid, e in self.elements.items()}
        inclusive: dict[str, int] = {}
        for eid in reversed(list(self.iter_preorder())):
            e = self.elements[eid]
            inclusive[eid] = own[eid] + sum(inclusive[c] for c in e.children)
        self.token_index_own = own
        self.token_index_inclusive = inclusive

    def iter_preorder(self, root: Optional[str] = None) -> Iterator[str]:
        """Document order: pre-order traversal of each root in turn."""
        stack = list(reversed(self.roots if root is None else (root,)))
        while stack:
            eid = stack.pop()
            yield eid
            stack.extend(reversed(self.elements[eid].children))

    def document_order(self) -> dict[str, int]:
        return {eid: i for i, eid in enumerate(self.iter_preorder())}

    def top_ancestor(self, eid: str) -> str:
        e = self.elements[eid]
        while e.parent is not None:
            e = self.elements[e.parent]
        return e.id

    def ancestor_of_kind(self, eid: str, kind: str) -> Optional[str]:
        e = self.elements[eid]
        while e.parent is not None:
            e = self.elements[e.parent]
            if e.kind == kind:
                return e.id
        return None

    def element_tokens(self, eid: str, include_descendants: bool = True) -> TokenStream:
        """Tokens of an element's own text, optionally with all descendants
        in pre-order. Spans index into the concatenated source text."""
        if eid not in self.elements:
            raise KeyError(f"unknown element id: {eid!r}")
        ids = list(self.iter_preorder(eid)) if include_descendants else [eid]
        parts: list[str] = []
        tokens: list[str] = []
        spans: list[tuple[int, int]] = []
        offset = 0
        for part_id in ids:
            text = self.elements[part_id].own_text
            stream = tokenize(text)
            tokens.extend(stream.tokens)
            spans.extend((s + offset, e + offset) for s, e in stream.spans)
            parts.append(text)
            offset += len(text) + 1  # joined with "\n"
        return TokenStream(tuple(tokens), tuple(spans), eid, "\n".join(parts))

    def total_tokens(self) -> int:
        return sum(self.token_index_inclusive[r] for r in self.roots)


def _require(cond: bool, msg: str) -> None:
    if not cond:
        raise CorpusError(msg)


def parse_snapshot(data: dict, on_dangling: str = "error") -> tuple[Snapshot, LoadReport]:
    """Validate a corpus document and build a Snapshot.

    ``on_dangling`` is "error" (reject references whose endpoint is missing)
    or "drop" (remove them and count them in the load report).
    """
    if on_dangling not in ("error", "drop"):
        raise ValueError(f"on_dangling must be 'error' or 'drop', got {on_dangling!r}")
    _require(isinstance(data, dict), "corpus document must be an object")
    for key in ("label", "roots", "elements"):
        _require(key in data, f"missing corpus field: {key}")

    elements: dict[str, Element] = {}
    children_of: dict[str, tuple[str, ...]] = {}
    for raw in data["elements"]:
        _require(isinstance(raw, dict), "element entries must be objects")
        _require("id" in raw and "kind" in raw, "element needs id and kind")
        eid = str(raw["id"])
        _require(eid not in elements, f"duplicate element id: {eid!r}")
        children = tuple(str(c) for c in raw.get("children", ()))
        elements[eid] = Element(
            id=eid,
            kind=str(raw["kind"]),
            label=str(raw.get("label", eid)),
            heading=raw.get("heading"),
            own_text=str(raw.get("text", "")),
            children=children,
            parent=None,
        )
        children_of[eid] = children

    # Wire parent links and reject multi-parent or cyclic hierarchies.
    parent_of: dict[str, str] = {}
    for eid, children in children_of.items():
        for child in children:
            _require(child in elements, f"unknown child id {child!r} of {eid!r}")
            _require(child not in parent_of, f"element {child!r} has two parents")
            parent_of[child] = eid
    elements = {
        eid: Element(
            e.id, e.kind, e.label, e.heading, e.own_text, e.children, parent_of.get(eid)
        )
        for eid, e in elements.items()
    }

    roots = tuple(str(r) for r in data["roots"])
    for r in roots:
        _require(r in elements, f"unknown root id: {r!r}")
        _require(r not in parent_of, f"root {r!r} has a parent")

    # Every element must be reachable from exactly one root (forest, no cycles).
    seen: set[str] = set()
    for r in roots:
        stack = [r]
        while stack:
            eid = stack.pop()
            _require(eid not in seen, f"hierarchy cycle or shared element at {eid!r}")
            seen.add(eid)
            stack.extend(elements[eid].children)
    _require(
        seen == set(elements),
        "elements unreachable from any root: "
        + ", ".join(sorted(set(elements) - seen)[:5]),
    )

    references: list[Reference] = []
    dropped = 0
    for raw in data.get("references", ()):
        src, tgt = str(raw["source"]), str(raw["target"])
        text = str(raw.get("raw", ""))
        if src in elements and tgt in elements:
            references.append(Reference(src, tgt, text))
        elif on_dangling == "drop":
            dropped += 1
        else:
            raise CorpusError(f"dangling reference {src!r} -> {tgt!r}")

    snapshot = Snapshot(
        label=str(data["label"]),
        roots=roots,
        elements=elements,
        references=tuple(references),
    )
    return snapshot, LoadReport(dropped_references=dropped)


def load_snapshot(path: str, on_dangling: str = "error") -> tuple[Snapshot, LoadReport]:
    """Load one corpus file (see docs/corpus-schema.json) into a Snapshot."""
    with open(path, encoding="utf-8") as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise CorpusError(f"malformed corpus file {path}: {exc}") from exc
    return parse_snapshot(data, on_dangling=on_dangling)


def snapshot_to_dict(s: Snapshot) -> dict:
    """Inverse of parse_snapshot; load -> serialize -> load round-trips."""
    return {
        "label": s.label,
        "roots": list(s.roots),
        "elements": [
            {
                "id": e.id,
                "kind": e.kind,
                "label": e.label,
                "heading": e.heading,
                "text": e.own_text,
                "children": list(e.children),
            }
            for e in (s.elements[eid] for eid in s.iter_preorder())
        ],
        "references": [
            {"source": r.source, "target": r.target, "raw": r.raw}
            for r in s.references
        ],
    }


def save_snapshot(s: Snapshot, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(snapshot_to_dict(s), fh, ensure_ascii=False, indent=2)
        fh.write("\n")
