"use strict";
(() => {
  // src/model.ts
  function findPath(root, id) {
    if (root.id === id) return [root];
    for (const child of root.children) {
      const sub = findPath(child, id);
      if (sub !== null) return [root, ...sub];
    }
    return null;
  }
  function layoutIcicle(root, focusId, width, layers = 3) {
    const path = findPath(root, focusId);
    const focus = path ? path[path.length - 1] : root;
    const rects = [
      { id: focus.id, heading: focus.heading, size: focus.size, depth: 0, x: 0, width, node: focus }
    ];
    let layer = [
      { node: focus, x: 0, width }
    ];
    for (let depth = 1; depth < layers; depth++) {
      const next = [];
      for (const cell of layer) {
        const total = cell.node.size;
        if (total <= 0 || cell.node.children.length === 0) continue;
        let x = cell.x;
        for (const child of cell.node.children) {
          const w = child.size / total * cell.width;
          next.push({ node: child, x, width: w });
          x += w;
        }
      }
      for (const cell of next) {
        rects.push({
          id: cell.node.id,
          heading: cell.node.heading,
          size: cell.node.size,
          depth,
          x: cell.x,
          width: cell.width,
          node: cell.node
        });
      }
      layer = next;
    }
    return rects;
  }
  function longElementCount(report, snapshot, pageTokens) {
    const rows = report.lengths[snapshot] ?? [];
    return rows.filter(([, tokens]) => tokens > pageTokens).length;
  }
  function largeTreeCount(report, snapshot, sizeThreshold) {
    if (sizeThreshold === null) return 0;
    const rows = report.trees[snapshot] ?? [];
    return rows.filter(([, size]) => size > sizeThreshold).length;
  }
  function longChainCount(report, snapshot, chainThreshold) {
    const rows = report.trees[snapshot] ?? [];
    return rows.filter(([, , depth]) => depth > chainThreshold).length;
  }
  function heatmapView(profile) {
    const rowOrder = profile.row_order ?? profile.committees.map((_, i) => i);
    const colOrder = profile.col_order ?? profile.scopes.map((_, i) => i);
    const rows = rowOrder.map((i) => profile.committees[i]);
    const cols = colOrder.map((j) => profile.scopes[j]);
    const cells = rowOrder.map((i) => colOrder.map((j) => profile.matrix[i][j]));
    const max = Math.max(0, ...cells.flat());
    return {
      rows,
      cols,
      cells,
      defunct: rows.map((r) => profile.defunct[r] === true),
      max
    };
  }
  function exportConfigFragment(t) {
    const fragment = {
      page_tokens: t.page_tokens,
      chain_x: t.chain_x,
      tree_size_x: t.tree_size_x
    };
    return JSON.stringify(fragment, null, 2);
  }

  // src/ui.ts
  function initialState(report) {
    const keys = Object.keys(report.icicles).sort();
    const icicleKey = keys.length ? keys[0] : null;
    const cfg = report.config;
    return {
      icicleKey,
      focusId: icicleKey ? report.icicles[icicleKey].id : null,
      thresholds: {
        page_tokens: typeof cfg.page_tokens === "number" ? cfg.page_tokens : 500,
        tree_size_x: typeof cfg.tree_size_x === "number" ? cfg.tree_size_x : null,
        chain_x: typeof cfg.chain_x === "number" ? cfg.chain_x : 3
      }
    };
  }
  var LAYER_HEIGHT = 34;
  var ICICLE_WIDTH = 960;
  var PALETTE = ["#3b6ea5", "#5b8fc9", "#8fb3dd", "#c4d6ec"];
  function el(doc, tag, text, className) {
    const node = doc.createElement(tag);
    if (text !== void 0) node.textContent = text;
    if (className) node.className = className;
    return node;
  }
  function renderIcicle(container, report, state, rerender) {
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
    const nav = el(doc, "div", void 0, "icicle-nav");
    const up = el(doc, "button", "\u2191 up");
    up.disabled = path.length < 2;
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
    const chart = el(doc, "div", void 0, "icicle");
    chart.style.position = "relative";
    chart.style.width = `${ICICLE_WIDTH}px`;
    chart.style.height = `${3 * LAYER_HEIGHT}px`;
    for (const r of rects) {
      const cell = el(doc, "div", void 0, "icicle-cell");
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
      cell.title = `${r.id}${r.heading ? " \u2014 " + r.heading : ""} (${r.size} tokens)`;
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
  function renderThresholds(container, report, state, rerender) {
    container.textContent = "";
    const doc = container.ownerDocument;
    container.appendChild(el(doc, "h2", "Threshold preview"));
    const snapshots = report.snapshots;
    const sliders = [
      ["Long element (tokens per element)", "page_tokens", 0, 5e3, state.thresholds.page_tokens],
      ["Large reference tree (size)", "tree_size_x", 0, 2e3, state.thresholds.tree_size_x],
      ["Long reference chain (depth)", "chain_x", 0, 30, state.thresholds.chain_x]
    ];
    for (const [label, key, min, max, value] of sliders) {
      const row = el(doc, "div", void 0, "slider-row");
      row.appendChild(el(doc, "label", label + ": "));
      const input = el(doc, "input");
      input.type = "range";
      input.min = String(min);
      input.max = String(max);
      input.value = String(value ?? max);
      input.dataset.threshold = key;
      input.addEventListener("input", () => {
        state.thresholds[key] = Number(input.value);
        rerender();
      });
      row.appendChild(input);
      row.appendChild(el(doc, "span", value === null ? "off" : String(value)));
      container.appendChild(row);
    }
    const counts = el(doc, "table", void 0, "counts");
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
        longChainCount(report, snap, state.thresholds.chain_x)
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
      const a = el(doc, "a");
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
  function renderFindings(container, report) {
    container.textContent = "";
    const doc = container.ownerDocument;
    container.appendChild(el(doc, "h2", "Findings"));
    const byKind = /* @__PURE__ */ new Map();
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
      const table = el(doc, "table", void 0, "findings");
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
  function renderHeatmap(container, report) {
    container.textContent = "";
    const doc = container.ownerDocument;
    container.appendChild(el(doc, "h2", "Committee mentions (per 1,000 tokens)"));
    const entries = Object.entries(report.profiles).filter(([, p]) => p !== null);
    if (entries.length === 0) {
      container.appendChild(el(doc, "p", "No committee profiles in this report."));
      return;
    }
    for (const [snap, profile] of entries) {
      const view = heatmapView(profile);
      container.appendChild(el(doc, "h3", snap));
      const table = el(doc, "table", void 0, "heatmap");
      const head = el(doc, "tr");
      head.appendChild(el(doc, "th", ""));
      for (const c of view.cols) head.appendChild(el(doc, "th", c));
      table.appendChild(head);
      view.rows.forEach((row, i) => {
        const tr = el(doc, "tr");
        const label = view.defunct[i] ? `${row} \u2020` : row;
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
        container.appendChild(el(doc, "p", "\u2020 no longer active"));
      }
    }
  }
  function renderApp(root, report, state) {
    root.textContent = "";
    const doc = root.ownerDocument;
    const header = el(doc, "header");
    header.appendChild(el(doc, "h1", "lawlint report"));
    header.appendChild(
      el(doc, "p", `snapshots: ${report.snapshots.join(", ")} \xB7 config ${report.config_fingerprint.slice(0, 12)}`)
    );
    root.appendChild(header);
    const sections = {};
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

  // src/main.ts
  function boot() {
    const root = document.getElementById("app");
    if (!root) return;
    const report = window.LAWLINT_REPORT;
    if (!report) {
      root.textContent = "No report embedded in this page (window.LAWLINT_REPORT missing).";
      return;
    }
    renderApp(root, report, initialState(report));
  }
  if (document.readyState === "loading") {
    document.addEventListener("DOMContentLoaded", boot);
  } else {
    boot();
  }
})();
