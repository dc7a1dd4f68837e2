import type { ApiClient } from "./api.js";
import type { AttributionDoc, InterventionDoc } from "./types.js";

export interface Assignment {
  dimension: string;
  value: string;
}

/**
 * Session state behind the table/control panel. Pending interventions
 * mirror the server-side spec exactly: at most one entry per dimension,
 * and `run` ships them all in a single request. Only one compute
 * request may be in flight at a time; callers can read `busy` to grey
 * out the controls.
 */
export class ViewState {
  selectedDimension: string | null = null;
  pendingInterventions: Assignment[] = [];
  activeAttribution: Assignment | null = null;
  focusNode: string | null = null;
  lastIntervention: InterventionDoc | null = null;
  lastAttribution: AttributionDoc | null = null;
  busy = false;

  constructor(
    private readonly api: ApiClient,
    readonly graphId: string,
  ) {}

  selectDimension(dimension: string): void {
    this.selectedDimension = dimension;
  }

  addIntervention(dimension: string, value: string): void {
    const existing = this.pendingInterventions.find(
      (a) => a.dimension === dimension,
    );
    if (existing) {
      existing.value = value;
    } else {
      this.pendingInterventions.push({ dimension, value });
    }
  }

  removeIntervention(dimension: string): void {
    this.pendingInterventions = this.pendingInterventions.filter(
      (a) => a.dimension !== dimension,
    );
  }

  private async compute<T>(work: () => Promise<T>): Promise<T> {
    if (this.busy) throw new Error("a compute request is already in flight");
    this.busy = true;
    try {
      return await work();
    } finally {
      this.busy = false;
    }
  }

  async runInterventions(options: { sampleCount?: number; seed?: number } = {}): Promise<InterventionDoc> {
    return this.compute(async () => {
      const doc = await this.api.intervene(
        this.graphId,
        this.pendingInterventions.map((a) => ({
          column: a.dimension,
          value: a.value,
        })),
        options,
      );
      this.lastIntervention = doc;
      return doc;
    });
  }

  removeInterventionResult(): void {
    this.lastIntervention = null;
    this.pendingInterventions = [];
  }

  async runAttribution(
    dimension: string,
    value: string,
    options: { sampleCount?: number; seed?: number } = {},
  ): Promise<AttributionDoc> {
    return this.compute(async () => {
      const doc = await this.api.attribute(
        this.graphId,
        dimension,
        value,
        options,
      );
      this.activeAttribution = { dimension, value };
      this.lastAttribution = doc;
      return doc;
    });
  }

  /** Clear the attribution result; the graph view drops back to uniform sizes. */
  removeAttribution(): void {
    this.activeAttribution = null;
    this.lastAttribution = null;
  }

  async focus(node: string | null) {
    this.focusNode = node;
    return this.compute(() => this.api.getGraph(this.graphId, node ?? undefined));
  }
}
