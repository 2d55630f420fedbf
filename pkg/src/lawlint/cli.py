"""Command-line entry point.

Subcommands: ingest (validate corpora), detect (run smells and write the
report), report (re-export an existing report), sample (syntax review
sheet), icicle (export one icicle tree). Data goes to files; progress goes
to stderr. Exit codes: 0 success, 1 findings over a --fail-on budget,
2 input errors.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass, field

from . import dupex, entities, lengths, refgraph, report as report_mod, syntax
from .corpus import CorpusError, load_snapshot
from .detectors import (
    EntityDetector,
    LongElementDetector,
    PhraseMiner,
    ReferenceTreeDetector,
    SyntaxDetector,
)

ALL_SMELLS = (
    "duplicated_phrase",
    "long_element",
    "ambiguous_syntax",
    "large_reference_tree",
    "long_reference_chain",
    "nlo",
)

DEFAULTS = {
    "smells": list(ALL_SMELLS),
    "page_tokens": lengths.DEFAULT_PAGE_TOKENS,
    "max_node_tokens": refgraph.DEFAULT_MAX_NODE_TOKENS,
    "chain_x": refgraph.DEFAULT_CHAIN_THRESHOLD,
    "tree_size_x": None,
    "max_failures": 10_000,
    "gap": syntax.DEFAULT_GAP,
    "cluster_min_len": 5,
    "cluster_min_count": 10,
    "sequence_kind": "section",
    "seed": 0,
    "syntax_catalog": None,
    "entity_catalog": None,
    "committee_registry": None,
    "on_dangling": "error",
}


@dataclass
class RunConfig:
    corpora: list[dict] = field(default_factory=list)  # {label, path}
    output_dir: str = "out"
    options: dict = field(default_factory=lambda: dict(DEFAULTS))

    def effective(self) -> dict:
        cfg = dict(self.options)
        cfg["corpora"] = [c["label"] for c in self.corpora]
        return cfg


def _merge_config(args: argparse.Namespace) -> RunConfig:
    """flag > config file > default."""
    options = dict(DEFAULTS)
    corpora: list[dict] = []
    output_dir = os.environ.get("LAWLINT_OUT", "out")
    if getattr(args, "config", None):
        with open(args.config, encoding="utf-8") as fh:
            file_cfg = json.load(fh)
        corpora = list(file_cfg.get("corpora", []))
        output_dir = file_cfg.get("output_dir", output_dir)
        for key in DEFAULTS:
            if key in file_cfg:
                options[key] = file_cfg[key]
    for key in DEFAULTS:
        value = getattr(args, key, None)
        if value is not None:
            options[key] = value
    if getattr(args, "corpus", None):
        corpora = []
        for spec in args.corpus:
            if "=" in spec:
                label, path = spec.split("=", 1)
            else:
                label, path = os.path.splitext(os.path.basename(spec))[0], spec
            corpora.append({"label": label, "path": path})
    if getattr(args, "output_dir", None):
        output_dir = args.output_dir
    return RunConfig(corpora=corpora, output_dir=output_dir, options=options)


def _load_corpora(cfg: RunConfig):
    snapshots = []
    for entry in cfg.corpora:
        snapshot, load_report = load_snapshot(
            entry["path"], on_dangling=cfg.options["on_dangling"]
        )
        snapshot.label = entry["label"]
        if load_report.dropped_references:
            print(
                f"[{entry['label']}] dropped {load_report.dropped_references} "
                "dangling references",
                file=sys.stderr,
            )
        snapshots.append(snapshot)
    if not snapshots:
        raise CorpusError("no corpora given (use --corpus label=path or a config file)")
    return snapshots


def _syntax_catalog(cfg: RunConfig):
    if cfg.options["syntax_catalog"]:
        return syntax.load_catalog(cfg.options["syntax_catalog"])
    return syntax.default_catalog(cfg.options["gap"])


def run_detection(cfg: RunConfig) -> dict:
    """Run enabled smells over every snapshot and build the report object."""
    snapshots = _load_corpora(cfg)
    opts = cfg.options
    smells = set(opts["smells"])
    findings: list[report_mod.SmellFinding] = []
    compression: dict = {}
    pattern_series: dict = {}
    density_series: dict = {}
    tree_hist: dict = {}
    icicles: dict = {}
    profiles_section: dict = {}
    lengths_section: dict = {}
    trees_section: dict = {}

    for s in snapshots:
        print(f"[{s.label}] {len(s.elements)} elements", file=sys.stderr)
        if "long_element" in smells:
            det = LongElementDetector(
                kind=opts["sequence_kind"], page_tokens=opts["page_tokens"]
            ).fit(s)
            findings.extend(det.findings_)
            lengths_section[s.label] = [
                [r.element_id, r.inclusive_tokens] for r in det.records_
            ]
        if "ambiguous_syntax" in smells:
            det = SyntaxDetector(catalog=_syntax_catalog(cfg), gap=opts["gap"]).fit(s)
            findings.extend(det.findings_)
            pattern_series[s.label] = det.counts_
        if "large_reference_tree" in smells or "long_reference_chain" in smells:
            det = ReferenceTreeDetector(
                max_node_tokens=opts["max_node_tokens"],
                chain_threshold=opts["chain_x"],
                size_threshold=opts["tree_size_x"],
            ).fit(s)
            findings.extend(f for f in det.findings_ if f.kind in smells)
            tree_hist[s.label] = [
                [scope, size, count]
                for (scope, size), count in sorted(det.scan_.histogram.items())
            ]
            trees_section[s.label] = [
                [t.root, t.size, t.depth] for t in det.scan_.trees
            ]
        if "nlo" in smells:
            det = EntityDetector().fit(s)
            findings.extend(det.findings_)
            density_series[s.label] = det.density_
        if "duplicated_phrase" in smells:
            tokens = entities.substituted_tokens(s)
            if tokens:
                miner = PhraseMiner(
                    max_failures=opts["max_failures"], seed=opts["seed"]
                ).fit(tokens)
                findings.extend(miner.findings(s.label, s.roots[0] if s.roots else ""))
                compression[s.label] = miner.compression_percent_
            else:
                compression[s.label] = None
        if "duplicated_phrase" in smells and "nlo" in smells:
            registry = None
            if opts["committee_registry"]:
                registry = entities.load_committee_registry(opts["committee_registry"])
            per_scope = {}
            for root in s.roots:
                scope_tokens = entities.substituted_tokens(s, root)
                if scope_tokens:
                    per_scope[root] = dupex.run_dupex(
                        scope_tokens,
                        dupex.DupexConfig(
                            max_failures=opts["max_failures"], seed=opts["seed"]
                        ),
                    ).phrases
            profile = entities.committee_profiles(per_scope, s, registry)
            profiles_section[s.label] = (
                profile.to_dict() if profile.committees else None
            )
        for root in s.roots:
            icicles[f"{s.label}:{root}"] = lengths.icicle_tree(s, root).to_dict()

    config = cfg.effective()
    return report_mod.build_report(
        snapshot_labels=[s.label for s in snapshots],
        findings=findings,
        config=config,
        series={
            "compression": compression,
            "pattern_counts": pattern_series,
            "entity_density": density_series,
            "tree_size_histogram": tree_hist,
        },
        icicles=icicles,
        profiles=profiles_section,
        lengths=lengths_section,
        trees=trees_section,
    )


def _check_fail_on(report: dict, budgets: list[str]) -> int:
    status = 0
    counts: dict[str, int] = {}
    for f in report["findings"]:
        counts[f["kind"]] = counts.get(f["kind"], 0) + 1
    for budget in budgets:
        try:
            smell, limit = budget.rsplit(":", 1)
            limit = int(limit)
        except ValueError:
            raise SystemExit2(f"bad --fail-on spec: {budget!r} (want smell:count)")
        if smell not in ALL_SMELLS:
            raise SystemExit2(f"unknown smell in --fail-on: {smell!r}")
        if counts.get(smell, 0) > limit:
            print(
                f"fail-on budget exceeded: {smell} {counts.get(smell, 0)} > {limit}",
                file=sys.stderr,
            )
            status = 1
    return status


class SystemExit2(Exception):
    """Input error; mapped to exit code 2."""


def _cmd_ingest(args) -> int:
    cfg = _merge_config(args)
    for s in _load_corpora(cfg):
        print(
            f"[{s.label}] ok: {len(s.elements)} elements, "
            f"{len(s.references)} references, {s.total_tokens()} tokens",
            file=sys.stderr,
        )
    return 0


def _cmd_detect(args) -> int:
    cfg = _merge_config(args)
    rep = run_detection(cfg)
    for fmt in args.format or ["json"]:
        paths = report_mod.export(rep, fmt, cfg.output_dir)
        for p in paths:
            print(f"wrote {p}", file=sys.stderr)
    if args.fail_on:
        return _check_fail_on(rep, args.fail_on)
    return 0


def _cmd_report(args) -> int:
    rep = report_mod.load_report(args.report)
    outdir = args.output_dir or os.path.dirname(os.path.abspath(args.report))
    for fmt in args.format or ["html"]:
        for p in report_mod.export(rep, fmt, outdir):
            print(f"wrote {p}", file=sys.stderr)
    return 0


def _cmd_sample(args) -> int:
    cfg = _merge_config(args)
    snapshots = _load_corpora(cfg)
    catalog = _syntax_catalog(cfg)
    matches = []
    for s in snapshots:
        matches.extend(syntax.find_matches(s, catalog))
    if args.pattern:
        matches = [m for m in matches if m.pattern == args.pattern]
    if not matches:
        raise SystemExit2("no syntax matches to sample")
    sample = syntax.sample_candidates(matches, n=args.n, seed=cfg.options["seed"])
    os.makedirs(cfg.output_dir, exist_ok=True)
    path = os.path.join(cfg.output_dir, "review_sheet.csv")
    syntax.write_review_sheet(sample, path)
    print(f"wrote {path} ({len(sample)} candidates)", file=sys.stderr)
    return 0


def _cmd_icicle(args) -> int:
    cfg = _merge_config(args)
    snapshots = _load_corpora(cfg)
    by_label = {s.label: s for s in snapshots}
    s = by_label.get(args.snapshot, snapshots[-1])
    if args.root not in s.elements:
        raise SystemExit2(f"unknown root element: {args.root!r}")
    tree = lengths.icicle_tree(s, args.root)
    os.makedirs(cfg.output_dir, exist_ok=True)
    path = os.path.join(cfg.output_dir, f"icicle_{args.root}.json")
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(report_mod.canonical_json(tree.to_dict()))
        fh.write("\n")
    print(f"wrote {path}", file=sys.stderr)
    return 0


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", help="JSON config file (flags override it)")
    p.add_argument(
        "--corpus",
        action="append",
        metavar="LABEL=PATH",
        help="corpus file for one snapshot; repeatable",
    )
    p.add_argument("--output-dir", dest="output_dir")
    p.add_argument("--seed", type=int)
    p.add_argument("--on-dangling", dest="on_dangling", choices=["error", "drop"])


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lawlint", description="Law smell detection for legal corpora"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("ingest", help="validate corpus files")
    _add_common(p)
    p.set_defaults(func=_cmd_ingest)

    p = sub.add_parser("detect", help="run smell detectors and export a report")
    _add_common(p)
    p.add_argument("--smell", action="append", dest="smells", choices=ALL_SMELLS)
    p.add_argument("--page-tokens", dest="page_tokens", type=int)
    p.add_argument("--max-node-tokens", dest="max_node_tokens", type=int)
    p.add_argument("--chain-x", dest="chain_x", type=int)
    p.add_argument("--tree-size-x", dest="tree_size_x", type=int)
    p.add_argument("--max-failures", dest="max_failures", type=int)
    p.add_argument("--gap", type=int)
    p.add_argument("--sequence-kind", dest="sequence_kind")
    p.add_argument("--syntax-catalog", dest="syntax_catalog")
    p.add_argument("--committee-registry", dest="committee_registry")
    p.add_argument("--format", action="append", choices=["json", "csv-bundle", "html"])
    p.add_argument(
        "--fail-on",
        action="append",
        metavar="SMELL:COUNT",
        help="exit 1 if a smell exceeds its budget; repeatable",
    )
    p.set_defaults(func=_cmd_detect)

    p = sub.add_parser("report", help="re-export an existing report")
    p.add_argument("report", help="path to report.json")
    p.add_argument("--output-dir", dest="output_dir")
    p.add_argument("--format", action="append", choices=["json", "csv-bundle", "html"])
    p.set_defaults(func=_cmd_report)

    p = sub.add_parser("sample", help="sample syntax candidates for review")
    _add_common(p)
    p.add_argument("--n", type=int, default=100)
    p.add_argument("--pattern", help="restrict to one pattern name")
    p.add_argument("--gap", type=int)
    p.add_argument("--syntax-catalog", dest="syntax_catalog")
    p.set_defaults(func=_cmd_sample)

    p = sub.add_parser("icicle", help="export the icicle tree for a root")
    _add_common(p)
    p.add_argument("--snapshot", help="snapshot label (default: last)")
    p.add_argument("--root", required=True)
    p.set_defaults(func=_cmd_icicle)
    return parser


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        return args.func(args)
    except (CorpusError, SystemExit2, FileNotFoundError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
