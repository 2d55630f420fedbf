"""Duplicated-phrase mining by MDL compression.

The miner greedily merges adjacent symbol pairs in a cover of the token
stream, keeping a merge only if the total encoded length (data part plus
code-table part) strictly decreases. Phrases that fall out of use after a
later merge are pruned from the table, so the final table holds only
phrases that pay for themselves.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional, Sequence, Union

import numpy as np
from scipy.cluster.hierarchy import leaves_list, linkage
from scipy.spatial.distance import pdist

from .corpus import TokenStream

__all__ = [
    "Phrase",
    "CodeTable",
    "Cover",
    "DupexResult",
    "DupexConfig",
    "PhraseClustering",
    "encoded_length",
    "baseline_length",
    "nonoverlapping_count",
    "run_dupex",
    "cluster_phrases",
    "compression_series",
]

Symbol = Union[str, int]  # base term or phrase id


@dataclass(frozen=True)
class Phrase:
    id: int
    terms: tuple[str, ...]  # base terms only; phrases never nest

    def __post_init__(self) -> None:
        if len(self.terms) < 2:
            raise ValueError("a phrase has at least 2 terms")


@dataclass
class CodeTable:
    phrases: dict[int, Phrase] = field(default_factory=dict)
    base_freq: dict[str, int] = field(default_factory=dict)
    total_base: int = 0

    @classmethod
    def for_stream(cls, tokens: Sequence[str]) -> "CodeTable":
        freq: dict[str, int] = {}
        for t in tokens:
            freq[t] = freq.get(t, 0) + 1
        return cls(phrases={}, base_freq=freq, total_base=len(tokens))

    def phrase_cost(self, terms: Sequence[str]) -> float:
        """Table bits for one phrase: a length code plus one code per term."""
        bits = 2.0 * math.log2(len(terms) + 1) + 1.0
        for t in terms:
            f = self.base_freq.get(t)
            if not f:
                raise KeyError(f"phrase term not in base frequency table: {t!r}")
            bits += math.log2(self.total_base / f)
        return bits


@dataclass
class Cover:
    symbols: list[Symbol]

    def usage(self) -> dict[Symbol, int]:
        counts: dict[Symbol, int] = {}
        for s in self.symbols:
            counts[s] = counts.get(s, 0) + 1
        return counts

    def expand(self, table: CodeTable) -> list[str]:
        out: list[str] = []
        for s in self.symbols:
            if isinstance(s, int):
                out.extend(table.phrases[s].terms)
            else:
                out.append(s)
        return out


def _data_bits(usage: dict[Symbol, int]) -> float:
    total = sum(usage.values())
    if total == 0:
        return 0.0
    return sum(n * math.log2(total / n) for n in usage.values() if n > 0)


def encoded_length(cover: Cover, table: CodeTable) -> float:
    """Total bits: Shannon code over cover symbols + code-table description."""
    bits = _data_bits(cover.usage())
    for p in table.phrases.values():
        bits += table.phrase_cost(p.terms)
    return bits


def baseline_length(stream: Union[TokenStream, Sequence[str]]) -> float:
    """Encoded length of the raw stream under an empty code table."""
    tokens = stream.tokens if isinstance(stream, TokenStream) else list(stream)
    return encoded_length(Cover(list(tokens)), CodeTable.for_stream(tokens))


def nonoverlapping_count(tokens: Sequence[str], terms: Sequence[str]) -> int:
    """Greedy left-to-right occurrence count; a match consumes its tokens."""
    if isinstance(tokens, TokenStream):
        tokens = tokens.tokens
    terms = tuple(terms)
    if not terms:
        raise ValueError("empty phrase")
    k = len(terms)
    count = 0
    i = 0
    n = len(tokens)
    while i <= n - k:
        if tuple(tokens[i : i + k]) == terms:
            count += 1
            i += k
        else:
            i += 1
    return count


@dataclass(frozen=True)
class DupexConfig:
    max_failures: int = 10_000
    min_pair_count: int = 2
    min_report_len: int = 2
    seed: int = 0  # reserved; the search itself is deterministic


@dataclass(frozen=True)
class ReportedPhrase:
    expansion: tuple[str, ...]
    abs_count: int
    rel_per_1000: float
    bits_gained: float


@dataclass
class DupexResult:
    phrases: list[ReportedPhrase]
    baseline_bits: float
    final_bits: float
    compression_percent: float
    accepted_lengths: list[float] = field(default_factory=list)
    cover: Optional[Cover] = None
    table: Optional[CodeTable] = None


def _pair_counts(symbols: list[Symbol], min_count: int) -> dict[tuple[Symbol, Symbol], int]:
    """Greedy non-overlapping adjacent-pair counts (a a a counts (a,a) once)."""
    counts: dict[tuple[Symbol, Symbol], int] = {}
    blocked_until: dict[tuple[Symbol, Symbol], int] = {}
    for i in range(len(symbols) - 1):
        pair = (symbols[i], symbols[i + 1])
        if blocked_until.get(pair, 0) > i:
            continue
        counts[pair] = counts.get(pair, 0) + 1
        blocked_until[pair] = i + 2
    return {p: c for p, c in counts.items() if c >= min_count}


def _merge_pair(symbols: list[Symbol], pair: tuple[Symbol, Symbol], new_id: int) -> tuple[list[Symbol], int]:
    """Replace greedy left-to-right occurrences of an adjacent pair."""
    a, b = pair
    out: list[Symbol] = []
    merged = 0
    i = 0
    n = len(symbols)
    while i < n:
        if i + 1 < n and symbols[i] == a and symbols[i + 1] == b:
            out.append(new_id)
            merged += 1
            i += 2
        else:
            out.append(symbols[i])
            i += 1
    return out, merged


def run_dupex(
    stream: Union[TokenStream, Sequence[str]], cfg: DupexConfig = DupexConfig()
) -> DupexResult:
    """Mine duplicated phrases from a token stream.

    Candidate pairs are ranked by greedy count (ties: lexicographically
    smaller expansion first); the best not-yet-tried candidate is merged
    tentatively and kept only if the exact total encoded length strictly
    decreases. Stops after ``max_failures`` consecutive rejections or when
    no untried candidate remains. Deterministic.
    """
    tokens = list(stream.tokens if isinstance(stream, TokenStream) else stream)
    if not tokens:
        raise ValueError("run_dupex requires a non-empty stream")

    table = CodeTable.for_stream(tokens)
    symbols: list[Symbol] = list(tokens)
    usage: dict[Symbol, int] = Cover(symbols).usage()
    table_bits = 0.0
    total = _data_bits(usage)
    baseline = total
    accepted_lengths: list[float] = []

    expansions: dict[int, tuple[str, ...]] = {}  # phrase id -> base terms
    phrase_costs: dict[int, float] = {}
    tried: set[tuple[str, ...]] = set()
    next_id = 0
    failures = 0

    def expand_sym(s: Symbol) -> tuple[str, ...]:
        return expansions[s] if isinstance(s, int) else (s,)

    while failures < cfg.max_failures:
        counts = _pair_counts(symbols, cfg.min_pair_count)
        candidates = sorted(
            (
                (-c, expand_sym(p[0]) + expand_sym(p[1]), p)
                for p, c in counts.items()
            ),
        )
        progressed = False
        for neg_count, expansion, pair in candidates:
            if expansion in tried:
                continue
            tried.add(expansion)
            m = -neg_count
            # Exact incremental evaluation from usage counts: merging m
            # occurrences removes m of each side and adds m of the phrase.
            new_usage = dict(usage)
            a, b = pair
            new_usage[a] -= m
            new_usage[b] -= m
            new_usage[next_id] = m
            new_cost = table.phrase_cost(expansion)
            # Phrases that drop to zero usage would be pruned on acceptance.
            pruned = [
                s
                for s, n in new_usage.items()
                if n == 0 and isinstance(s, int) and s != next_id
            ]
            new_table_bits = table_bits + new_cost - sum(phrase_costs[s] for s in pruned)
            new_total = _data_bits(new_usage) + new_table_bits

            if new_total < total:
                merged_symbols, merged = _merge_pair(symbols, pair, next_id)
                assert merged == m, "pair count / merge mismatch"
                symbols = merged_symbols
                expansions[next_id] = expansion
                phrase_costs[next_id] = new_cost
                for s in pruned:
                    del new_usage[s]
                    del expansions[s]
                    del phrase_costs[s]
                usage = {s: n for s, n in new_usage.items() if n > 0 or not isinstance(s, int)}
                table_bits = new_table_bits
                total = new_total
                accepted_lengths.append(total)
                next_id += 1
                failures = 0
                progressed = True
                break
            failures += 1
            if failures >= cfg.max_failures:
                break
        if not progressed:
            # Cover unchanged and every candidate tried (or budget spent):
            # no new candidates can appear, so stop.
            break

    table.phrases = {pid: Phrase(pid, terms) for pid, terms in expansions.items()}
    cover = Cover(symbols)
    final_total = _data_bits(cover.usage()) + sum(
        table.phrase_cost(p.terms) for p in table.phrases.values()
    )

    stream_len = len(tokens)
    reported: list[ReportedPhrase] = []
    for pid in sorted(table.phrases):
        terms = table.phrases[pid].terms
        if len(terms) < cfg.min_report_len:
            continue
        abs_count = nonoverlapping_count(tokens, terms)
        # Bits saved by keeping this phrase: re-encode with its occurrences
        # expanded back to base terms and its table entry dropped.
        without_usage = dict(cover.usage())
        occ = without_usage.pop(pid, 0)
        for t in terms:
            without_usage[t] = without_usage.get(t, 0) + occ
        without_bits = _data_bits(without_usage) + sum(
            table.phrase_cost(p.terms) for q, p in table.phrases.items() if q != pid
        )
        reported.append(
            ReportedPhrase(
                expansion=terms,
                abs_count=abs_count,
                rel_per_1000=abs_count / stream_len * 1000.0,
                bits_gained=without_bits - final_total,
            )
        )
    reported.sort(key=lambda r: (-r.abs_count * len(r.expansion), r.expansion))

    compression = 0.0
    if baseline > 0:
        compression = 100.0 * (1.0 - final_total / baseline)
    return DupexResult(
        phrases=reported,
        baseline_bits=baseline,
        final_bits=final_total,
        compression_percent=compression,
        accepted_lengths=accepted_lengths,
        cover=cover,
        table=table,
    )


@dataclass
class PhraseClustering:
    merges: np.ndarray  # scipy linkage matrix
    leaf_order: list[int]  # indices into ``phrases``
    phrases: list[tuple[str, ...]]


def cluster_phrases(
    phrases: Sequence[ReportedPhrase],
    min_len: int = 5,
    min_count: int = 10,
) -> PhraseClustering:
    """Ward-linkage clustering of term-count vectors under cosine distance.

    Input is filtered to long and frequent phrases; the returned leaf order
    drives display for manual review.
    """
    kept = [
        p for p in phrases if len(p.expansion) >= min_len and p.abs_count >= min_count
    ]
    if len(kept) < 2:
        raise ValueError("need at least 2 phrases after filtering")
    vocab = sorted({t for p in kept for t in p.expansion})
    index = {t: i for i, t in enumerate(vocab)}
    vectors = np.zeros((len(kept), len(vocab)))
    for row, p in enumerate(kept):
        for t in p.expansion:
            vectors[row, index[t]] += 1.0
    dist = pdist(vectors, metric="cosine")
    dist = np.clip(dist, 0.0, None)  # guard tiny negative rounding
    merges = linkage(dist, method="ward")
    order = leaves_list(merges).tolist()
    return PhraseClustering(
        merges=merges, leaf_order=order, phrases=[p.expansion for p in kept]
    )


def compression_series(streams: dict[str, Optional[Sequence[str]]],
                       cfg: DupexConfig = DupexConfig()) -> dict[str, Optional[float]]:
    """compression_percent per snapshot label; None marks a gap (scope missing
    or empty in that snapshot)."""
    series: dict[str, Optional[float]] = {}
    for label, tokens in streams.items():
        if not tokens:
            series[label] = None
            continue
        series[label] = run_dupex(tokens, cfg).compression_percent
    return series
