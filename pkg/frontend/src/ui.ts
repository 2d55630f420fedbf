/**
 * DOM rendering for the report viewer. All state lives in a ViewState
 * object; every render function rebuilds its container from the report
 * plus that state, so handlers just mutate state and re-render.
 */

import {
  Finding,
  IcicleTree,
  Report,
  Thresholds,
  exportConfigFragment,
  findPath,
  heatmapView,
  largeTreeCount,
  layoutIcicle,
  longChainCount,
  longElementCount,
} from "./model";

export interface ViewState {
  icicleKey: string | null;
  focusId: string | null;
  thresholds: Thresholds;
}

export function initialState(report: Report): ViewState {
  const keys = Object.keys(report.icicles).sort();
  const icicleKey = keys.length ? keys[0] : null;
  const cfg = report.config as Record<string, unknown>;
  return {
    icicleKey,
    focusId: icicleKey ? report.icicles[icicleKey].id : null,
    thresholds: {
      page_tokens: typeof cfg.page_tokens === "number" ? cfg.page_tokens : 500,
      tree_size_x: typeof cfg.tree_size_x === "number" ? cfg.tree_size_x : null,
      chain_x: typeof cfg.chain_x === "number" ? cfg.chain_x : 3,
    },
  };
}

const LAYER_HEIGHT = 34;
const ICICLE_WIDTH = 960;
const PALETTE = ["#3b6ea5", "#5b8fc9", "#8fb3dd", "#c4d6ec"];

function el<K extends keyof HTMLElementTagNameMap>(
  doc: Document,
  tag: K,
  text?: string,
  className?: string,
): HTMLElementTagNameMap[K] {
  const node = doc.createElement(tag);
  if (text !== undefined) node.textContent = text;
  if (className) node.className = className;
  return node;
}

export function renderIcicle(
  container: HTMLElement,
  report: Report,
  state: ViewState,
  rerender: () => void,
): void {
  container.textContent = "";
  const doc = container.ownerDocument;
  container.appendChild(el(doc, "h2", "Length explorer"));
  if (!state.icicleKey) {
    container.appendChild(el(doc, "p", "No icicle trees in this report."));
    return;
  }
  const keys = Object.keys(report.icicles).sort();
  if (keys.length > 1) {
    const select = el(doc, "select");
    for (const key of keys) {
      const opt = el(doc, "option", key);
      opt.value = key;
      if (key === state.icicleKey) opt.selected = true;
      select.appendChild(opt);
    }
    select.addEventListener("change", () => {
      state.icicleKey = select.value;
      state.focusId = report.icicles[select.value].id;
      rerender();
    });
    container.appendChild(select);
  }

  const tree = report.icicles[state.icicleKey];
  const focusId = state.focusId ?? tree.id;
  const path = findPath(tree, focusId) ?? [tree];

  const nav = el(doc, "div", undefined, "icicle-nav");
  const up = el(doc, "button", "↑ up");
  (up as HTMLButtonElement).disabled = path.length < 2;
  up.addEventListener("click", () => {
    if (path.length >= 2) {
      state.focusId = path[path.length - 2].id;
      rerender();
    }
  });
  nav.appendChild(up);
  nav.appendChild(el(doc, "span", " " + path.map((n) => n.id).join(" / ")));
  container.appendChild(nav);

  const rects = layoutIcicle(tree, focusId, ICICLE_WIDTH, 3);
  const chart = el(doc, "div", undefined, "icicle");
  chart.style.position = "relative";
  chart.style.width = `${ICICLE_WIDTH}px`;
  chart.style.height = `${3 * LAYER_HEIGHT}px`;
  for (const r of rects) {
    const cell = el(doc, "div", undefined, "icicle-cell");
    cell.dataset.id = r.id;
    cell.dataset.depth = String(r.depth);
    cell.style.position = "absolute";
    cell.style.left = `${r.x}px`;
    cell.style.top = `${r.depth * LAYER_HEIGHT}px`;
    cell.style.width = `${Math.max(0, r.width - 1)}px`;
    cell.style.height = `${LAYER_HEIGHT - 2}px`;
    cell.style.background = PALETTE[Math.min(r.depth, PALETTE.length - 1)];
    cell.style.overflow = "hidden";
    cell.style.cursor = "pointer";
    cell.title = `${r.id}${r.heading ? " — " + r.heading : ""} (${r.size} tokens)`;
    if (r.width > 40) {
      cell.appendChild(el(doc, "span", ` ${r.heading ?? r.id}`));
    }
    cell.addEventListener("click", () => {
      state.focusId = r.id;
      rerender();
    });
    chart.appendChild(cell);
  }
  container.appendChild(chart);
}

export function renderThresholds(
  container: HTMLElement,
  report: Report,
  state: ViewState,
  rerender: () => void,
): void {
  container.textContent = "";
  const doc = container.ownerDocument;
  container.appendChild(el(doc, "h2", "Threshold preview"));
  const snapshots = report.snapshots;

  const sliders: [string, keyof Thresholds, number, number, number | null][] = [
    ["Long element (tokens per element)", "page_tokens", 0, 5000, state.thresholds.page_tokens],
    ["Large reference tree (size)", "tree_size_x", 0, 2000, state.thresholds.tree_size_x],
    ["Long reference chain (depth)", "chain_x", 0, 30, state.thresholds.chain_x],
  ];
  for (const [label, key, min, max, value] of sliders) {
    const row = el(doc, "div", undefined, "slider-row");
    row.appendChild(el(doc, "label", label + ": "));
    const input = el(doc, "input") as HTMLInputElement;
    input.type = "range";
    input.min = String(min);
    input.max = String(max);
    input.value = String(value ?? max);
    input.dataset.threshold = key;
    input.addEventListener("input", () => {
      (state.thresholds as unknown as Record<string, number | null>)[key] = Number(input.value);
      rerender();
    });
    row.appendChild(input);
    row.appendChild(el(doc, "span", value === null ? "off" : String(value)));
    container.appendChild(row);
  }

  const counts = el(doc, "table", undefined, "counts");
  const head = el(doc, "tr");
  for (const h of ["snapshot", "long_element", "large_reference_tree", "long_reference_chain"]) {
    head.appendChild(el(doc, "th", h));
  }
  counts.appendChild(head);
  for (const snap of snapshots) {
    const tr = el(doc, "tr");
    tr.appendChild(el(doc, "td", snap));
    const cells = [
      longElementCount(report, snap, state.thresholds.page_tokens),
      largeTreeCount(report, snap, state.thresholds.tree_size_x),
      longChainCount(report, snap, state.thresholds.chain_x),
    ];
    for (const [i, c] of cells.entries()) {
      const td = el(doc, "td", String(c));
      td.dataset.count = ["long_element", "large_reference_tree", "long_reference_chain"][i];
      td.dataset.snapshot = snap;
      tr.appendChild(td);
    }
    counts.appendChild(tr);
  }
  container.appendChild(counts);

  const exportBtn = el(doc, "button", "Export config fragment");
  exportBtn.id = "export-config";
  exportBtn.addEventListener("click", () => {
    const fragment = exportConfigFragment(state.thresholds);
    const blob = new Blob([fragment], { type: "application/json" });
    const a = el(doc, "a") as HTMLAnchorElement;
    a.href = URL.createObjectURL(blob);
    a.download = "lawlint-config-fragment.json";
    a.click();
    URL.revokeObjectURL(a.href);
  });
  container.appendChild(exportBtn);
  const preview = el(doc, "pre", exportConfigFragment(state.thresholds));
  preview.id = "config-fragment";
  container.appendChild(preview);
}

export function renderFindings(container: HTMLElement, report: Report): void {
  container.textContent = "";
  const doc = container.ownerDocument;
  container.appendChild(el(doc, "h2", "Findings"));
  const byKind = new Map<string, Finding[]>();
  for (const f of report.findings) {
    const bucket = byKind.get(f.kind) ?? [];
    bucket.push(f);
    byKind.set(f.kind, bucket);
  }
  if (byKind.size === 0) {
    container.appendChild(el(doc, "p", "No findings."));
    return;
  }
  for (const [kind, rows] of byKind) {
    container.appendChild(el(doc, "h3", `${kind} (${rows.length})`));
    const table = el(doc, "table", undefined, "findings");
    table.dataset.kind = kind;
    const head = el(doc, "tr");
    for (const h of ["snapshot", "element", "metrics", "excerpt", "annotation"]) {
      head.appendChild(el(doc, "th", h));
    }
    table.appendChild(head);
    for (const f of rows) {
      const tr = el(doc, "tr");
      tr.appendChild(el(doc, "td", f.snapshot));
      tr.appendChild(el(doc, "td", f.element_id));
      tr.appendChild(el(doc, "td", JSON.stringify(f.metrics)));
      tr.appendChild(el(doc, "td", f.excerpt));
      tr.appendChild(el(doc, "td", f.annotation));
      table.appendChild(tr);
    }
    container.appendChild(table);
  }
}

export function renderHeatmap(container: HTMLElement, report: Report): void {
  container.textContent = "";
  const doc = container.ownerDocument;
  container.appendChild(el(doc, "h2", "Committee mentions (per 1,000 tokens)"));
  const entries = Object.entries(report.profiles).filter(([, p]) => p !== null);
  if (entries.length === 0) {
    container.appendChild(el(doc, "p", "No committee profiles in this report."));
    return;
  }
  for (const [snap, profile] of entries) {
    const view = heatmapView(profile!);
    container.appendChild(el(doc, "h3", snap));
    const table = el(doc, "table", undefined, "heatmap");
    const head = el(doc, "tr");
    head.appendChild(el(doc, "th", ""));
    for (const c of view.cols) head.appendChild(el(doc, "th", c));
    table.appendChild(head);
    view.rows.forEach((row, i) => {
      const tr = el(doc, "tr");
      const label = view.defunct[i] ? `${row} †` : row;
      tr.appendChild(el(doc, "th", label));
      view.cells[i].forEach((v) => {
        const td = el(doc, "td", v.toFixed(2));
        const alpha = view.max > 0 ? v / view.max : 0;
        td.style.background = `rgba(59, 110, 165, ${alpha.toFixed(3)})`;
        tr.appendChild(td);
      });
      table.appendChild(tr);
    });
    container.appendChild(table);
    if (view.defunct.some(Boolean)) {
      container.appendChild(el(doc, "p", "† no longer active"));
    }
  }
}

export function renderApp(root: HTMLElement, report: Report, state: ViewState): void {
  root.textContent = "";
  const doc = root.ownerDocument;
  const header = el(doc, "header");
  header.appendChild(el(doc, "h1", "lawlint report"));
  header.appendChild(
    el(doc, "p", `snapshots: ${report.snapshots.join(", ")} · config ${report.config_fingerprint.slice(0, 12)}`),
  );
  root.appendChild(header);

  const sections: Record<string, HTMLElement> = {};
  for (const id of ["icicle-section", "threshold-section", "heatmap-section", "findings-section"]) {
    const section = el(doc, "section");
    section.id = id;
    root.appendChild(section);
    sections[id] = section;
  }
  const rerender = () => {
    renderIcicle(sections["icicle-section"], report, state, rerender);
    renderThresholds(sections["threshold-section"], report, state, rerender);
  };
  rerender();
  renderHeatmap(sections["heatmap-section"], report);
  renderFindings(sections["findings-section"], report);
}
