import {
  NODE_RADIUS_UNIFORM,
  attributionRadius,
  strokeWidth,
} from "./scales.js";
import type { AttributionDoc, LayoutDoc } from "./types.js";

export const LAYER_SPACING = 140;
export const SLOT_SPACING = 110;
export const MARGIN = 60;

export interface PieSector {
  value: string;
  proportion: number;
  startAngle: number;
  endAngle: number;
}

export interface GlyphModel {
  /** Name of the hidden cross-layer cause, shown on hover. */
  cause: string;
  x: number;
  y: number;
}

export interface NodeModel {
  id: string;
  label: string;
  kind: "plain" | "aggregate";
  members: string[];
  role: string;
  x: number;
  y: number;
  radius: number;
  sectors: PieSector[];
  glyphs: GlyphModel[];
}

export interface EdgeModel {
  source: string;
  target: string;
  uncertainty: number;
  strokeWidth: number;
}

export interface GraphViewModel {
  nodes: NodeModel[];
  edges: EdgeModel[];
  width: number;
  height: number;
}

const TAU = 2 * Math.PI;

function pieSectors(distribution: Record<string, number> | undefined): PieSector[] {
  if (!distribution) return [];
  const entries = Object.entries(distribution);
  const total = entries.reduce((acc, [, p]) => acc + p, 0) || 1;
  const sectors: PieSector[] = [];
  let angle = 0;
  for (const [value, proportion] of entries) {
    const sweep = (proportion / total) * TAU;
    sectors.push({
      value,
      proportion,
      startAngle: angle,
      endAngle: angle + sweep,
    });
    angle += sweep;
  }
  return sectors;
}

/**
 * Build the drawable model for the node-link view from a server layout
 * document. Geometry is owned here (the layout document owns topology):
 * layers map to rows, orderInLayer to horizontal slots. When an
 * attribution document is supplied, node radii scale with effect;
 * otherwise every node is uniform.
 */
export function buildGraphViewModel(
  layout: LayoutDoc,
  attribution?: AttributionDoc,
): GraphViewModel {
  const uncertainties = layout.drawnEdges
    .concat(layout.hiddenEdges)
    .map((e) => e.uncertainty);
  const minU = Math.min(...uncertainties);
  const maxU = Math.max(...uncertainties);

  const nodes: NodeModel[] = layout.nodes.map((node) => {
    const x = MARGIN + node.orderInLayer * SLOT_SPACING;
    const y = MARGIN + node.layer * LAYER_SPACING;
    let radius = NODE_RADIUS_UNIFORM;
    if (attribution) {
      // aggregates take the best effect among their members
      const members = node.members.length ? node.members : [node.id];
      const effect = Math.max(
        ...members.map((m) => attribution.effects[m] ?? 0),
      );
      radius = attributionRadius(effect);
    }
    return {
      id: node.id,
      label: node.label,
      kind: node.kind,
      members: node.members,
      role: node.role,
      x,
      y,
      radius,
      sectors: pieSectors(node.valueDistribution),
      glyphs: node.hiddenCauses.map((cause, i) => ({
        cause,
        x: x + radius + 6 + i * 10,
        y: y - radius,
      })),
    };
  });

  const edges: EdgeModel[] = layout.drawnEdges.map((e) => ({
    source: e.source,
    target: e.target,
    uncertainty: e.uncertainty,
    strokeWidth: strokeWidth(e.uncertainty, minU, maxU),
  }));

  const maxSlot = Math.max(0, ...layout.nodes.map((n) => n.orderInLayer));
  return {
    nodes,
    edges,
    width: 2 * MARGIN + maxSlot * SLOT_SPACING,
    height: 2 * MARGIN + (layout.layers - 1) * LAYER_SPACING,
  };
}

function arcPath(cx: number, cy: number, r: number, sector: PieSector): string {
  const x0 = cx + r * Math.sin(sector.startAngle);
  const y0 = cy - r * Math.cos(sector.startAngle);
  const x1 = cx + r * Math.sin(sector.endAngle);
  const y1 = cy - r * Math.cos(sector.endAngle);
  const large = sector.endAngle - sector.startAngle > Math.PI ? 1 : 0;
  return `M ${cx} ${cy} L ${x0} ${y0} A ${r} ${r} 0 ${large} 1 ${x1} ${y1} Z`;
}

/** Serialize the model to a static SVG string (tooltips via <title>). */
export function renderGraphSvg(model: GraphViewModel): string {
  const parts: string[] = [
    `<svg xmlns="http://www.w3.org/2000/svg" width="${model.width}" height="${model.height}">`,
  ];
  const byId = new Map(model.nodes.map((n) => [n.id, n]));
  for (const edge of model.edges) {
    const s = byId.get(edge.source)!;
    const t = byId.get(edge.target)!;
    parts.push(
      `<line class="edge" x1="${s.x}" y1="${s.y}" x2="${t.x}" y2="${t.y}" ` +
        `stroke="#667" stroke-width="${edge.strokeWidth.toFixed(2)}"/>`,
    );
  }
  for (const node of model.nodes) {
    parts.push(`<g class="node" data-id="${node.id}">`);
    if (node.sectors.length === 0) {
      parts.push(
        `<circle class="pie-sector" cx="${node.x}" cy="${node.y}" r="${node.radius}" fill="#ccd"/>`,
      );
    }
    for (const sector of node.sectors) {
      parts.push(
        `<path class="pie-sector" d="${arcPath(node.x, node.y, node.radius, sector)}">` +
          `<title>${node.label}: ${sector.value}</title></path>`,
      );
    }
    for (const glyph of node.glyphs) {
      parts.push(
        `<rect class="hidden-cause-glyph" x="${glyph.x}" y="${glyph.y}" width="7" height="7">` +
          `<title>hidden cause: ${glyph.cause}</title></rect>`,
      );
    }
    parts.push(
      `<text x="${node.x}" y="${node.y + node.radius + 14}" text-anchor="middle">${node.label}</text>`,
      "</g>",
    );
  }
  parts.push("</svg>");
  return parts.join("");
}
