export { ApiClient, ApiRequestError } from "./api.js";
export type { FetchLike } from "./api.js";
export {
  buildGraphViewModel,
  renderGraphSvg,
  LAYER_SPACING,
  SLOT_SPACING,
} from "./graphView.js";
export type { GraphViewModel, NodeModel, EdgeModel, PieSector } from "./graphView.js";
export { buildDiffChart, buildMarginalChart, TOP_N } from "./dimensionView.js";
export type { DiffChart, DiffBar, BarSegment } from "./dimensionView.js";
export { ViewState } from "./state.js";
export type { Assignment } from "./state.js";
export {
  strokeWidth,
  attributionRadius,
  NODE_RADIUS_UNIFORM,
  STROKE_MIN,
  STROKE_MAX,
} from "./scales.js";
export type * from "./types.js";
