// SVG rendering of the argument graph. Layout is computed client-side from
// the service's node/edge lists and is presentation only; shapes follow
// GSN convention (goals rectangular, strategies slanted, solutions round,
// contexts pill-shaped).

import type { CaseNodeView, CaseViewModel } from './viewmodel.js';

const NODE_W = 190;
const NODE_H = 64;
const H_GAP = 26;
const V_GAP = 70;

interface Placed {
  node: CaseNodeView;
  x: number;
  y: number;
}

function escapeXml(text: string): string {
  return text
    .replace(/&/g, '&amp;')
    .replace(/</g, '&lt;')
    .replace(/>/g, '&gt;')
    .replace(/"/g, '&quot;');
}

/** Depth of each node below the support root; contexts sit beside their owner. */
export function layerAssignment(vm: CaseViewModel): Map<string, number> {
  const support = vm.edges.filter((e) => e.kind === 'supportedBy');
  const contexts = vm.edges.filter((e) => e.kind === 'inContextOf');
  const targets = new Set(support.map((e) => e.to));
  const roots = vm.nodes
    .filter((n) => (n.kind === 'goal' || n.kind === 'strategy') && !targets.has(n.id))
    .map((n) => n.id);
  const depth = new Map<string, number>();
  const queue: [string, number][] = roots.map((id) => [id, 0]);
  while (queue.length > 0) {
    const [id, d] = queue.shift()!;
    if (depth.has(id) && depth.get(id)! >= d) continue;
    depth.set(id, d);
    for (const edge of support) {
      if (edge.from === id) queue.push([edge.to, d + 1]);
    }
  }
  for (const edge of contexts) {
    depth.set(edge.to, depth.get(edge.from) ?? 0);
  }
  for (const node of vm.nodes) {
    if (!depth.has(node.id)) depth.set(node.id, 0);
  }
  return depth;
}

function place(vm: CaseViewModel): Placed[] {
  const depth = layerAssignment(vm);
  const layers = new Map<number, CaseNodeView[]>();
  for (const node of vm.nodes) {
    const d = depth.get(node.id)!;
    const layer = layers.get(d) ?? [];
    layer.push(node);
    layers.set(d, layer);
  }
  const placed: Placed[] = [];
  const sortedDepths = [...layers.keys()].sort((a, b) => a - b);
  const widest = Math.max(...[...layers.values()].map((l) => l.length));
  const canvasWidth = widest * (NODE_W + H_GAP);
  for (const d of sortedDepths) {
    const layer = layers.get(d)!;
    layer.sort((a, b) => a.id.localeCompare(b.id));
    const rowWidth = layer.length * (NODE_W + H_GAP);
    const offset = (canvasWidth - rowWidth) / 2;
    layer.forEach((node, i) => {
      placed.push({
        node,
        x: offset + i * (NODE_W + H_GAP) + H_GAP / 2,
        y: d * (NODE_H + V_GAP) + 20,
      });
    });
  }
  return placed;
}

function shapeFor(node: CaseNodeView, x: number, y: number): string {
  const cls = `node ${node.kind} ${node.status}${node.emphasized ? ' emphasized' : ''}`;
  const common = `class="${cls}" data-node-id="${node.id}"`;
  switch (node.kind) {
    case 'solution':
      return `<ellipse ${common} cx="${x + NODE_W / 2}" cy="${y + NODE_H / 2}" rx="${NODE_W / 2.6}" ry="${NODE_H / 1.7}"/>`;
    case 'strategy': {
      const skew = 16;
      const points = [
        [x + skew, y],
        [x + NODE_W, y],
        [x + NODE_W - skew, y + NODE_H],
        [x, y + NODE_H],
      ]
        .map((p) => p.join(','))
        .join(' ');
      return `<polygon ${common} points="${points}"/>`;
    }
    case 'context':
    case 'assumption':
    case 'justification':
      return `<rect ${common} x="${x}" y="${y}" width="${NODE_W}" height="${NODE_H}" rx="28"/>`;
    default:
      return `<rect ${common} x="${x}" y="${y}" width="${NODE_W}" height="${NODE_H}" rx="4"/>`;
  }
}

function wrapText(text: string, maxChars: number, maxLines: number): string[] {
  const words = text.split(/\s+/);
  const lines: string[] = [];
  let current = '';
  for (const word of words) {
    if ((current + ' ' + word).trim().length > maxChars) {
      lines.push(current.trim());
      current = word;
      if (lines.length === maxLines - 1) break;
    } else {
      current = `${current} ${word}`;
    }
  }
  lines.push(current.trim());
  const kept = lines.slice(0, maxLines);
  if (lines.length > maxLines || words.join(' ').length > maxChars * maxLines) {
    kept[kept.length - 1] = `${kept[kept.length - 1]!.slice(0, maxChars - 1)}…`;
  }
  return kept;
}

export function renderCaseGraph(vm: CaseViewModel): string {
  const placed = place(vm);
  const byId = new Map(placed.map((p) => [p.node.id, p]));
  const width = Math.max(...placed.map((p) => p.x + NODE_W)) + H_GAP;
  const height = Math.max(...placed.map((p) => p.y + NODE_H)) + V_GAP;

  const edgeMarkup = vm.edges
    .map((edge) => {
      const from = byId.get(edge.from);
      const to = byId.get(edge.to);
      if (!from || !to) return '';
      const x1 = from.x + NODE_W / 2;
      const y1 = from.y + NODE_H;
      const x2 = to.x + NODE_W / 2;
      const y2 = to.y;
      if (edge.kind === 'inContextOf') {
        return `<line class="edge context-edge" x1="${from.x + NODE_W}" y1="${from.y + NODE_H / 2}" x2="${to.x}" y2="${to.y + NODE_H / 2}" stroke-dasharray="6,4"/>`;
      }
      return `<line class="edge" x1="${x1}" y1="${y1}" x2="${x2}" y2="${y2}" marker-end="url(#arrow)"/>`;
    })
    .join('\n');

  const nodeMarkup = placed
    .map(({ node, x, y }) => {
      const label = wrapText(node.text, 30, 3)
        .map(
          (line, i) =>
            `<tspan x="${x + NODE_W / 2}" dy="${i === 0 ? 0 : 13}">${escapeXml(line)}</tspan>`,
        )
        .join('');
      return [
        `<g class="node-group" data-node-id="${node.id}">`,
        shapeFor(node, x, y),
        `<text class="node-id" x="${x + 8}" y="${y + 14}">${escapeXml(node.id)}</text>`,
        `<text class="node-status" data-node-id="${node.id}" data-status="${node.status}" x="${x + NODE_W - 8}" y="${y + 14}" text-anchor="end">${node.status}</text>`,
        `<text class="node-text" x="${x + NODE_W / 2}" y="${y + 32}" text-anchor="middle">${label}</text>`,
        `</g>`,
      ].join('\n');
    })
    .join('\n');

  return [
    `<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 ${width} ${height}" width="${width}" height="${height}">`,
    `<defs><marker id="arrow" markerWidth="8" markerHeight="8" refX="7" refY="4" orient="auto"><path d="M0,0 L8,4 L0,8 z"/></marker></defs>`,
    edgeMarkup,
    nodeMarkup,
    `</svg>`,
  ].join('\n');
}

/** Fallback panel when a case document does not look like one. */
export function renderErrorPanel(detail: string): string {
  return `<div class="error-panel"><strong>Cannot display this document.</strong><pre>${escapeXml(detail)}</pre></div>`;
}

export function isInstanceDocLike(doc: unknown): boolean {
  if (typeof doc !== 'object' || doc === null) return false;
  const candidate = doc as Record<string, unknown>;
  return (
    typeof candidate.instanceId === 'string' &&
    Array.isArray(candidate.nodes) &&
    Array.isArray(candidate.edges) &&
    typeof candidate.bindings === 'object'
  );
}
