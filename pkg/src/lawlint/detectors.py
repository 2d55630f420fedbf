"""Estimator-style wrappers around the smell detectors.

Each detector follows the scikit-learn convention: constructor parameters
mirror the configuration surface (inspectable via get_params), fit() runs
the detection over a Snapshot (or token stream for the phrase miner), and
results land in trailing-underscore attributes. This keeps detectors
composable with the wider ecosystem and gives the CLI one uniform driver.
"""

from __future__ import annotations

from typing import Optional

from sklearn.base import BaseEstimator

from . import dupex, entities, lengths, refgraph, syntax
from .report import SmellFinding
from .validation import check_fitted, check_snapshot, check_tokens

__all__ = [
    "PhraseMiner",
    "LongElementDetector",
    "SyntaxDetector",
    "ReferenceTreeDetector",
    "EntityDetector",
]


class PhraseMiner(BaseEstimator):
    """MDL duplicated-phrase miner over a token stream."""

    def __init__(
        self,
        max_failures: int = 10_000,
        min_pair_count: int = 2,
        min_report_len: int = 2,
        seed: int = 0,
    ):
        self.max_failures = max_failures
        self.min_pair_count = min_pair_count
        self.min_report_len = min_report_len
        self.seed = seed

    def _config(self) -> dupex.DupexConfig:
        return dupex.DupexConfig(
            max_failures=self.max_failures,
            min_pair_count=self.min_pair_count,
            min_report_len=self.min_report_len,
            seed=self.seed,
        )

    def fit(self, X, y=None):
        tokens = check_tokens(X)
        self.result_ = dupex.run_dupex(tokens, self._config())
        self.phrases_ = self.result_.phrases
        self.compression_percent_ = self.result_.compression_percent
        return self

    def findings(self, snapshot_label: str, element_id: str) -> list[SmellFinding]:
        check_fitted(self, "result_")
        return [
            SmellFinding(
                kind="duplicated_phrase",
                snapshot=snapshot_label,
                element_id=element_id,
                span=None,
                metrics={
                    "abs_count": p.abs_count,
                    "rel_per_1000": p.rel_per_1000,
                    "bits_gained": p.bits_gained,
                    "length": len(p.expansion),
                },
                excerpt=" ".join(p.expansion),
            )
            for p in self.phrases_
        ]


class LongElementDetector(BaseEstimator):
    """Absolute (page-based) and optional relative long-element flags."""

    def __init__(
        self,
        kind: str = "section",
        page_tokens: int = lengths.DEFAULT_PAGE_TOKENS,
        scope_kind: Optional[str] = None,
        quantile: Optional[float] = None,
    ):
        self.kind = kind
        self.page_tokens = page_tokens
        self.scope_kind = scope_kind
        self.quantile = quantile

    def fit(self, X, y=None):
        s = check_snapshot(X)
        self.records_ = lengths.measure_lengths(s, self.kind)
        if self.scope_kind is not None:
            rule = lengths.LengthRule(quantile=self.quantile, tokens=self.page_tokens)
            flags = lengths.flag_long_relative(s, self.records_, self.scope_kind, rule)
        else:
            flags = lengths.flag_long_absolute(self.records_, self.page_tokens)
        self.findings_ = [
            SmellFinding(
                kind="long_element",
                snapshot=s.label,
                element_id=f.element_id,
                span=None,
                metrics={
                    "inclusive_tokens": f.inclusive_tokens,
                    "threshold": f.threshold,
                },
                excerpt=f.heading or "",
            )
            for f in flags
        ]
        self.ccdf_ = lengths.ccdf([r.inclusive_tokens for r in self.records_]) if self.records_ else []
        return self


class SyntaxDetector(BaseEstimator):
    """Pattern-catalog scan for ambiguous and redundant operator syntax."""

    def __init__(self, catalog: Optional[list] = None, gap: int = syntax.DEFAULT_GAP):
        self.catalog = catalog
        self.gap = gap

    def _catalog(self):
        return self.catalog if self.catalog is not None else syntax.default_catalog(self.gap)

    def fit(self, X, y=None):
        s = check_snapshot(X)
        cat = self._catalog()
        self.matches_ = syntax.find_matches(s, cat)
        self.counts_ = syntax.pattern_counts(s, cat, matches=self.matches_)
        self.findings_ = [
            SmellFinding(
                kind="ambiguous_syntax",
                snapshot=s.label,
                element_id=m.element_id,
                span=m.span,
                metrics={"gap": self.gap},
                excerpt=m.excerpt,
                annotation=m.pattern,
            )
            for m in self.matches_
        ]
        return self


class ReferenceTreeDetector(BaseEstimator):
    """Large reference trees and long reference chains."""

    def __init__(
        self,
        max_node_tokens: int = refgraph.DEFAULT_MAX_NODE_TOKENS,
        chain_threshold: int = refgraph.DEFAULT_CHAIN_THRESHOLD,
        size_threshold: Optional[int] = None,
    ):
        self.max_node_tokens = max_node_tokens
        self.chain_threshold = chain_threshold
        self.size_threshold = size_threshold

    def fit(self, X, y=None):
        s = check_snapshot(X)
        cfg = refgraph.TreeConfig(
            max_node_tokens=self.max_node_tokens,
            chain_threshold=self.chain_threshold,
            size_threshold=self.size_threshold,
        )
        self.graph_ = refgraph.build_prepared_graph(s, cfg)
        self.scan_ = refgraph.scan_trees(self.graph_, cfg)
        self.findings_ = [
            SmellFinding(
                kind=f.kind,
                snapshot=s.label,
                element_id=f.root,
                span=None,
                metrics={"size": f.size, "depth": f.depth, "threshold": f.threshold},
            )
            for f in self.scan_.large_trees + self.scan_.long_chains
        ]
        return self


class EntityDetector(BaseEstimator):
    """Typed-entity extraction with per-scope density profiles."""

    def __init__(self, types: tuple = ("money", "percentage", "time_period", "time_point")):
        self.types = types

    def fit(self, X, y=None):
        s = check_snapshot(X)
        self.mentions_ = entities.extract_entities(s, self.types)
        self.density_ = entities.entity_density(s, self.types, mentions=self.mentions_)
        self.findings_ = [
            SmellFinding(
                kind="nlo",
                snapshot=s.label,
                element_id=m.element_id,
                span=m.span,
                metrics={"count": 1},
                excerpt=m.raw,
                annotation=m.type,
            )
            for m in self.mentions_
        ]
        return self

    def transform(self, text: str) -> str:
        """Placeholder-substituted text for phrase mining."""
        mentions = entities.extract_from_text(text)
        return entities.substitute_placeholders(text, mentions)[0]
