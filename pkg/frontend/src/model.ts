/**
 * Pure view-model logic for the report viewer: icicle layout, client-side
 * threshold recomputation, and config-fragment export. No DOM access here,
 * so everything is unit-testable in isolation.
 */

export interface IcicleTree {
  id: string;
  heading: string | null;
  size: number;
  children: IcicleTree[];
}

export interface Profile {
  committees: string[];
  scopes: string[];
  matrix: number[][];
  defunct: Record<string, boolean>;
  row_linkage: number[][] | null;
  col_linkage: number[][] | null;
  row_order: number[] | null;
  col_order: number[] | null;
}

export interface Report {
  tool_version: string;
  config_fingerprint: string;
  config: Record<string, unknown>;
  snapshots: string[];
  findings: Finding[];
  series: Record<string, Record<string, unknown>>;
  icicles: Record<string, IcicleTree>;
  profiles: Record<string, Profile | null>;
  lengths: Record<string, [string, number][]>;
  trees: Record<string, [string, number, number][]>;
}

export interface Finding {
  kind: string;
  snapshot: string;
  element_id: string;
  span: [number, number] | null;
  metrics: Record<string, number>;
  excerpt: string;
  annotation: string;
}

export interface IcicleRect {
  id: string;
  heading: string | null;
  size: number;
  depth: number;
  x: number;
  width: number;
  node: IcicleTree;
}

export function findPath(root: IcicleTree, id: string): IcicleTree[] | null {
  if (root.id === id) return [root];
  for (const child of root.children) {
    const sub = findPath(child, id);
    if (sub !== null) return [root, ...sub];
  }
  return null;
}

/**
 * Zoomable icicle layout. The focused node spans the full width on layer 0;
 * each following layer subdivides the full width among the descendants of
 * the layer above, proportionally to size. Ancestors of the focus are not
 * drawn (the "up" control navigates to them instead).
 */
export function layoutIcicle(
  root: IcicleTree,
  focusId: string,
  width: number,
  layers: number = 3,
): IcicleRect[] {
  const path = findPath(root, focusId);
  const focus = path ? path[path.length - 1] : root;
  const rects: IcicleRect[] = [
    { id: focus.id, heading: focus.heading, size: focus.size, depth: 0, x: 0, width, node: focus },
  ];
  let layer: { node: IcicleTree; x: number; width: number }[] = [
    { node: focus, x: 0, width },
  ];
  for (let depth = 1; depth < layers; depth++) {
    const next: { node: IcicleTree; x: number; width: number }[] = [];
    for (const cell of layer) {
      const total = cell.node.size;
      if (total <= 0 || cell.node.children.length === 0) continue;
      let x = cell.x;
      for (const child of cell.node.children) {
        const w = (child.size / total) * cell.width;
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
        node: cell.node,
      });
    }
    layer = next;
  }
  return rects;
}

export interface Thresholds {
  page_tokens: number;
  tree_size_x: number | null;
  chain_x: number;
}

/** Would-be long_element findings at a candidate page threshold. */
export function longElementCount(
  report: Report,
  snapshot: string,
  pageTokens: number,
): number {
  const rows = report.lengths[snapshot] ?? [];
  return rows.filter(([, tokens]) => tokens > pageTokens).length;
}

/** Would-be large_reference_tree findings at a candidate size threshold. */
export function largeTreeCount(
  report: Report,
  snapshot: string,
  sizeThreshold: number | null,
): number {
  if (sizeThreshold === null) return 0;
  const rows = report.trees[snapshot] ?? [];
  return rows.filter(([, size]) => size > sizeThreshold).length;
}

/** Would-be long_reference_chain findings at a candidate depth threshold. */
export function longChainCount(
  report: Report,
  snapshot: string,
  chainThreshold: number,
): number {
  const rows = report.trees[snapshot] ?? [];
  return rows.filter(([, , depth]) => depth > chainThreshold).length;
}

/** Findings shipped in the report itself, for cross-checking the sliders. */
export function shippedCount(report: Report, snapshot: string, kind: string): number {
  return report.findings.filter((f) => f.snapshot === snapshot && f.kind === kind)
    .length;
}

export interface HeatmapView {
  rows: string[];
  cols: string[];
  cells: number[][];
  defunct: boolean[];
  max: number;
}

/** Heatmap matrix reordered by the clustering leaf orders, if present. */
export function heatmapView(profile: Profile): HeatmapView {
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
    max,
  };
}

/** RunConfig fragment consumable by the CLI's --config option. */
export function exportConfigFragment(t: Thresholds): string {
  const fragment: Record<string, unknown> = {
    page_tokens: t.page_tokens,
    chain_x: t.chain_x,
    tree_size_x: t.tree_size_x,
  };
  return JSON.stringify(fragment, null, 2);
}
