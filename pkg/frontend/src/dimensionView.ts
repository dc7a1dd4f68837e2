import type { DimensionDiff } from "./types.js";

export const TOP_N = 10;

export interface BarSegment {
  kind: "base" | "increment" | "decrement";
  color: "blue" | "green" | "red";
  textured: boolean;
  /** Proportion covered by this segment (stacked from the axis up). */
  height: number;
}

export interface DiffBar {
  value: string;
  original: number;
  estimated: number;
  delta: number;
  segments: BarSegment[];
}

export interface DiffChart {
  dimension: string;
  bars: DiffBar[];
  truncated: boolean;
}

function segmentsFor(original: number, estimated: number): BarSegment[] {
  const segments: BarSegment[] = [
    {
      kind: "base",
      color: "blue",
      textured: false,
      height: Math.min(original, estimated),
    },
  ];
  if (estimated > original) {
    segments.push({
      kind: "increment",
      color: "green",
      textured: false,
      height: estimated - original,
    });
  } else if (original > estimated) {
    // the lost share stays visible as a textured red cap on the blue bar
    segments.push({
      kind: "decrement",
      color: "red",
      textured: true,
      height: original - estimated,
    });
  }
  return segments;
}

/**
 * Diff bar chart for one dimension. Bars are sorted by descending
 * original proportion and truncated to the top ten, except that a
 * protected value (the one being intervened on or attributed) is never
 * dropped. Without an intervention document, pass the marginal as both
 * sides and the chart degenerates to plain blue bars.
 */
export function buildDiffChart(
  dimension: string,
  diff: DimensionDiff,
  protectedValue?: string,
): DiffChart {
  const values = Object.keys({ ...diff.original, ...diff.estimated });
  values.sort((a, b) => {
    const gap = (diff.original[b] ?? 0) - (diff.original[a] ?? 0);
    return gap !== 0 ? gap : a.localeCompare(b);
  });

  let kept = values.slice(0, TOP_N);
  if (
    protectedValue !== undefined &&
    values.includes(protectedValue) &&
    !kept.includes(protectedValue)
  ) {
    kept = kept.slice(0, TOP_N - 1);
    kept.push(protectedValue);
  }

  const bars = kept.map((value) => {
    const original = diff.original[value] ?? 0;
    const estimated = diff.estimated[value] ?? 0;
    return {
      value,
      original,
      estimated,
      delta: estimated - original,
      segments: segmentsFor(original, estimated),
    };
  });
  return { dimension, bars, truncated: kept.length < values.length };
}

/** Marginal-only chart (no intervention yet): blue bars, zero deltas. */
export function buildMarginalChart(
  dimension: string,
  marginal: Record<string, number>,
): DiffChart {
  return buildDiffChart(dimension, { original: marginal, estimated: marginal });
}
