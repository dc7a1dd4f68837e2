/** Visual scales. All maps are affine, hence monotone and re-render stable. */

export const STROKE_MIN = 1;
export const STROKE_MAX = 6;
export const NODE_RADIUS_UNIFORM = 18;
export const NODE_RADIUS_MIN = 12;
export const NODE_RADIUS_MAX = 34;

/**
 * Map an uncertainty onto a stroke width, affine over the graph's own
 * uncertainty range so the thickest edge is always the most confident
 * one. A graph whose edges all share one uncertainty gets mid weight.
 */
export function strokeWidth(
  uncertainty: number,
  minUncertainty: number,
  maxUncertainty: number,
): number {
  const span = maxUncertainty - minUncertainty;
  if (span <= 0) return (STROKE_MIN + STROKE_MAX) / 2;
  const t = (uncertainty - minUncertainty) / span;
  return STROKE_MIN + t * (STROKE_MAX - STROKE_MIN);
}

/** Affine map from an attribution effect in [0, 1] to a node radius. */
export function attributionRadius(effect: number): number {
  const t = Math.min(1, Math.max(0, effect));
  return NODE_RADIUS_MIN + t * (NODE_RADIUS_MAX - NODE_RADIUS_MIN);
}
