"""Reference multigraph preparation and BFS reference trees.

Preparation removes nodes too large to be read in one sitting, then lowers
references aimed at container elements down to their text-wrapping
descendants. Trees are breadth-first, so chain depths are the best
possible worst case for a reader resolving every reference.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Optional

from .corpus import Snapshot

__all__ = [
    "TreeConfig",
    "MultiGraph",
    "ReferenceTree",
    "TreeFinding",
    "build_prepared_graph",
    "reference_tree",
    "scan_trees",
]

DEFAULT_MAX_NODE_TOKENS = 1000  # roughly one large monitor of content
DEFAULT_CHAIN_THRESHOLD = 3  # impatient readers; 6 for patient ones


@dataclass(frozen=True)
class TreeConfig:
    max_node_tokens: int = DEFAULT_MAX_NODE_TOKENS
    chain_threshold: int = DEFAULT_CHAIN_THRESHOLD
    size_threshold: Optional[int] = None

    def __post_init__(self) -> None:
        if self.max_node_tokens <= 0 or self.chain_threshold <= 0:
            raise ValueError("thresholds must be positive")
        if self.size_threshold is not None and self.size_threshold <= 0:
            raise ValueError("thresholds must be positive")


@dataclass
class MultiGraph:
    snapshot: Snapshot
    # Outgoing reference edges after pruning and lowering; multiplicity
    # preserved, targets in document order.
    out_edges: dict[str, list[str]]
    pruned: set[str]

    def nodes_with_references(self) -> list[str]:
        order = self.snapshot.document_order()
        return sorted((n for n, e in self.out_edges.items() if e), key=order.__getitem__)


@dataclass
class ReferenceTree:
    root: str
    nodes: list[str]  # BFS visit order, root first
    edges: list[tuple[str, str]]  # first-visit tree edges
    depths: dict[str, int]
    cycle_edges: int
    weight: int  # total own tokens over nodes
    diversity_sequence: int  # distinct sequence-level ancestors
    diversity_top: int  # distinct top-level ancestors

    @property
    def size(self) -> int:
        """Edges plus references closing cycles: every reference a reader
        would traverse counts once per multiplicity."""
        return len(self.edges) + self.cycle_edges

    @property
    def depth(self) -> int:
        return max(self.depths.values(), default=0)


def build_prepared_graph(s: Snapshot, cfg: TreeConfig = TreeConfig()) -> MultiGraph:
    """Prune nodes over the token budget, then lower container references."""
    pruned = {
        eid for eid, n in s.token_index_inclusive.items() if n > cfg.max_node_tokens
    }
    order = s.document_order()

    wraps_text: dict[str, bool] = {
        eid: bool(e.own_text.strip()) for eid, e in s.elements.items()
    }

    def lowered_targets(target: str) -> list[str]:
        e = s.elements[target]
        if not e.children:
            return [target]
        # One edge per surviving descendant that directly wraps text, in
        # document order; the container itself is not a reading target.
        return [
            d
            for d in s.iter_preorder(target)
            if d != target and d not in pruned and wraps_text[d]
        ]

    out_edges: dict[str, list[str]] = {eid: [] for eid in s.elements if eid not in pruned}
    for ref in s.references:
        if ref.source == ref.target:
            continue  # self-loops add no navigation cost
        if ref.source in pruned or ref.target in pruned:
            continue
        out_edges[ref.source].extend(lowered_targets(ref.target))
    for edges in out_edges.values():
        edges.sort(key=order.__getitem__)
    return MultiGraph(snapshot=s, out_edges=out_edges, pruned=pruned)


def reference_tree(g: MultiGraph, root: str) -> ReferenceTree:
    """BFS tree over reference edges, neighbor order = document order.

    A traversed reference to an already-visited node counts as a cycle
    edge; parallel references each count once per multiplicity."""
    if root in g.pruned:
        raise KeyError(f"root {root!r} was pruned from the graph")
    if root not in g.out_edges:
        raise KeyError(f"unknown root: {root!r}")
    s = g.snapshot
    depths = {root: 0}
    order: list[str] = [root]
    edges: list[tuple[str, str]] = []
    cycle_edges = 0
    queue = deque([root])
    while queue:
        u = queue.popleft()
        for v in g.out_edges[u]:
            if v in depths:
                cycle_edges += 1
            else:
                depths[v] = depths[u] + 1
                edges.append((u, v))
                order.append(v)
                queue.append(v)
    weight = sum(s.token_index_own[n] for n in order)
    seq_ancestors = set()
    top_ancestors = set()
    for n in order:
        top_ancestors.add(s.top_ancestor(n))
        e = s.elements[n]
        seq = n if e.kind == "section" else s.ancestor_of_kind(n, "section")
        if seq is not None:
            seq_ancestors.add(seq)
    return ReferenceTree(
        root=root,
        nodes=order,
        edges=edges,
        depths=depths,
        cycle_edges=cycle_edges,
        weight=weight,
        diversity_sequence=len(seq_ancestors),
        diversity_top=len(top_ancestors),
    )


@dataclass(frozen=True)
class TreeFinding:
    kind: str  # large_reference_tree | long_reference_chain
    root: str
    size: int
    depth: int
    threshold: int


@dataclass
class TreeScan:
    trees: list[ReferenceTree]
    large_trees: list[TreeFinding]
    long_chains: list[TreeFinding]
    histogram: dict[tuple[str, int], int] = field(default_factory=dict)  # (scope, size) -> count


def scan_trees(g: MultiGraph, cfg: TreeConfig = TreeConfig()) -> TreeScan:
    """Build a tree per node with outgoing references; flag and bin sizes."""
    s = g.snapshot
    trees: list[ReferenceTree] = []
    large: list[TreeFinding] = []
    chains: list[TreeFinding] = []
    histogram: dict[tuple[str, int], int] = {}
    for root in g.nodes_with_references():
        t = reference_tree(g, root)
        trees.append(t)
        if cfg.size_threshold is not None and t.size > cfg.size_threshold:
            large.append(
                TreeFinding("large_reference_tree", root, t.size, t.depth, cfg.size_threshold)
            )
        if t.depth > cfg.chain_threshold:
            chains.append(
                TreeFinding("long_reference_chain", root, t.size, t.depth, cfg.chain_threshold)
            )
        key = (s.top_ancestor(root), t.size)
        histogram[key] = histogram.get(key, 0) + 1
    return TreeScan(trees=trees, large_trees=large, long_chains=chains, histogram=histogram)
