/** Server JSON document shapes, consumed verbatim. */

export interface LayoutNodeDoc {
  id: string;
  label: string;
  kind: "plain" | "aggregate";
  members: string[];
  layer: number;
  orderInLayer: number;
  role: "root" | "leaf" | "internal";
  hiddenCauses: string[];
  displayedGlyphs: number;
  valueDistribution?: Record<string, number>;
  attributionScore?: number;
}

export interface EdgeDoc {
  source: string;
  target: string;
  uncertainty: number;
}

export interface LayoutDoc {
  schemaVersion: number;
  nodes: LayoutNodeDoc[];
  drawnEdges: EdgeDoc[];
  hiddenEdges: EdgeDoc[];
  layers: number;
  crossings: number;
}

export interface DimensionDiff {
  original: Record<string, number>;
  estimated: Record<string, number>;
}

export interface InterventionDoc {
  schemaVersion: number;
  perDimension: Record<string, DimensionDiff>;
}

export interface AttributionDoc {
  schemaVersion: number;
  target: { column: string; value: string };
  effects: Record<string, number>;
  outOfPath: string[];
}

export interface ColumnSummary {
  name: string;
  kind: string;
  cardinality: number;
  marginal: Record<string, number>;
}

export interface DatasetUploadDoc {
  datasetId: string;
  summary: { sampleSize: number; columns: ColumnSummary[] };
}

export interface DiscoverDoc {
  graphId: string;
  score: number;
  edgeCount: number;
}

export interface ApiError {
  code: string;
  message: string;
}
