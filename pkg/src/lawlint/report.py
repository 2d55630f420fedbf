"""Report assembly and export (JSON / CSV bundle / self-contained HTML).

Serialization is canonical: sorted keys, UTF-8, shortest round-trip float
formatting. Equal reports are byte-equal, which makes full-run determinism
testable at the file level.
"""

from __future__ import annotations

import csv
import hashlib
import html as html_mod
import importlib.resources
import json
import os
from dataclasses import dataclass
from typing import Optional, Sequence

__all__ = [
    "SmellFinding",
    "SMELL_KINDS",
    "build_report",
    "canonical_json",
    "config_fingerprint",
    "export",
    "load_report",
]

TOOL_VERSION = "0.1.0"

SMELL_KINDS = (
    "duplicated_phrase",
    "long_element",
    "ambiguous_syntax",
    "large_reference_tree",
    "long_reference_chain",
    "nlo",
)


@dataclass(frozen=True)
class SmellFinding:
    kind: str
    snapshot: str
    element_id: str
    span: Optional[tuple[int, int]]
    metrics: dict
    excerpt: str = ""
    annotation: str = ""

    def __post_init__(self) -> None:
        if self.kind not in SMELL_KINDS:
            raise ValueError(f"unknown smell kind: {self.kind!r}")

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "snapshot": self.snapshot,
            "element_id": self.element_id,
            "span": list(self.span) if self.span else None,
            "metrics": self.metrics,
            "excerpt": self.excerpt,
            "annotation": self.annotation,
        }


def canonical_json(data) -> str:
    return json.dumps(data, sort_keys=True, ensure_ascii=False, separators=(",", ":"))


def config_fingerprint(config: dict) -> str:
    """Hash over every threshold and catalog in effect; output paths are
    excluded so runs into different directories stay comparable."""
    relevant = {k: v for k, v in config.items() if k not in ("output_dir",)}
    return hashlib.sha256(canonical_json(relevant).encode("utf-8")).hexdigest()


def build_report(
    snapshot_labels: Sequence[str],
    findings: Sequence[SmellFinding],
    config: dict,
    series: Optional[dict] = None,
    icicles: Optional[dict] = None,
    profiles: Optional[dict] = None,
    lengths: Optional[dict] = None,
    trees: Optional[dict] = None,
) -> dict:
    """Assemble the versioned report object.

    Findings are ordered by (snapshot, smell kind, document position) where
    document position is the order findings were produced in; series are
    keyed by snapshot label with explicit null gaps.
    """
    fingerprints = {f.snapshot for f in findings} - set(snapshot_labels)
    if fingerprints:
        raise ValueError(f"findings reference unknown snapshots: {sorted(fingerprints)}")
    kind_order = {k: i for i, k in enumerate(SMELL_KINDS)}
    label_order = {l: i for i, l in enumerate(snapshot_labels)}
    indexed = sorted(
        enumerate(findings),
        key=lambda item: (label_order[item[1].snapshot], kind_order[item[1].kind], item[0]),
    )
    return {
        "tool_version": TOOL_VERSION,
        "config_fingerprint": config_fingerprint(config),
        "config": {k: v for k, v in config.items() if k != "output_dir"},
        "snapshots": list(snapshot_labels),
        "findings": [f.to_dict() for _, f in indexed],
        "series": series or {},
        "icicles": icicles or {},
        "profiles": profiles or {},
        "lengths": lengths or {},
        "trees": trees or {},
    }


def load_report(path: str) -> dict:
    with open(path, encoding="utf-8") as fh:
        return json.load(fh)


def _write_csv(path: str, header: list[str], rows: list[list]) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, quoting=csv.QUOTE_NONNUMERIC)
        writer.writerow(header)
        writer.writerows(rows)


def _export_csv_bundle(report: dict, outdir: str) -> list[str]:
    written: list[str] = []
    for kind in SMELL_KINDS:
        rows = [
            [
                f["snapshot"],
                f["element_id"],
                "" if f["span"] is None else f"{f['span'][0]}-{f['span'][1]}",
                canonical_json(f["metrics"]),
                f["excerpt"],
                f["annotation"],
            ]
            for f in report["findings"]
            if f["kind"] == kind
        ]
        path = os.path.join(outdir, f"findings_{kind}.csv")
        _write_csv(path, ["snapshot", "element_id", "span", "metrics", "excerpt", "annotation"], rows)
        written.append(path)
    for name, by_label in report.get("series", {}).items():
        path = os.path.join(outdir, f"series_{name}.csv")
        rows = []
        for label, value in by_label.items():
            rows.append([label, canonical_json(value)])
        _write_csv(path, ["snapshot", "value"], rows)
        written.append(path)
    return written


_FALLBACK_VIEWER = """
(function () {
  var report = window.LAWLINT_REPORT;
  var root = document.getElementById('app');
  var pre = document.createElement('pre');
  pre.textContent = 'lawlint report (viewer bundle not built)\\n\\n'
    + JSON.stringify(report, null, 2).slice(0, 20000);
  root.appendChild(pre);
})();
"""


def _viewer_bundle() -> str:
    try:
        asset = importlib.resources.files("lawlint").joinpath("assets/viewer.js")
        return asset.read_text(encoding="utf-8")
    except (FileNotFoundError, ModuleNotFoundError):
        return _FALLBACK_VIEWER


def _export_html(report: dict, path: str) -> None:
    # Everything inline: the page must open with no network access.
    data = canonical_json(report).replace("</", "<\\/")
    title = html_mod.escape(f"lawlint report {report['config_fingerprint'][:12]}")
    page = f"""<!DOCTYPE html>
<html lang="en">
<head>
<meta charset="utf-8">
<title>{title}</title>
<style>
  body {{ font-family: system-ui, sans-serif; margin: 0; }}
  #app {{ padding: 12px; }}
</style>
</head>
<body>
<div id="app"></div>
<script>window.LAWLINT_REPORT = {data};</script>
<script>{_viewer_bundle()}</script>
</body>
</html>
"""
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(page)


def export(report: dict, fmt: str, outdir: str) -> list[str]:
    """Write the report in one of {json, csv-bundle, html}; returns paths."""
    os.makedirs(outdir, exist_ok=True)
    if fmt == "json":
        path = os.path.join(outdir, "report.json")
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(canonical_json(report))
            fh.write("\n")
        return [path]
    if fmt == "csv-bundle":
        return _export_csv_bundle(report, outdir)
    if fmt == "html":
        path = os.path.join(outdir, "report.html")
        _export_html(report, path)
        return [path]
    raise ValueError(f"unknown export format: {fmt!r}")
