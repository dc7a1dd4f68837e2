import { describe, expect, it } from "vitest";

import { ApiClient, ApiRequestError } from "../src/api.js";
import { buildGraphViewModel } from "../src/graphView.js";
import { NODE_RADIUS_UNIFORM } from "../src/scales.js";
import { ViewState } from "../src/state.js";
import type { AttributionDoc, LayoutDoc } from "../src/types.js";
import layoutFixture from "./fixtures/layout_audiology.json";
import attributionFixture from "./fixtures/attribution_class.json";
import interventionFixture from "./fixtures/intervention_noise.json";

const layout = layoutFixture as unknown as LayoutDoc;
const attribution = attributionFixture as unknown as AttributionDoc;

interface Recorded {
  url: string;
  body: unknown;
}

/** Mock API serving the golden documents, recording every request. */
function mockedClient(log: Recorded[]): ApiClient {
  const fetchImpl = async (url: string, init?: RequestInit) => {
    log.push({ url, body: init?.body ? JSON.parse(init.body as string) : null });
    let doc: unknown;
    if (url.includes("/intervene")) doc = interventionFixture;
    else if (url.includes("/attribute")) doc = attributionFixture;
    else if (url.includes("/graphs/")) doc = layoutFixture;
    else throw new Error(`unexpected url ${url}`);
    return new Response(JSON.stringify(doc), { status: 200 });
  };
  return new ApiClient("", fetchImpl);
}

describe("view state", () => {
  it("keeps one pending intervention per dimension", () => {
    const state = new ViewState(mockedClient([]), "g1");
    state.addIntervention("noise", "t");
    state.addIntervention("tymp", "a");
    state.addIntervention("noise", "f");
    expect(state.pendingInterventions).toEqual([
      { dimension: "noise", value: "f" },
      { dimension: "tymp", value: "a" },
    ]);
    state.removeIntervention("tymp");
    expect(state.pendingInterventions).toHaveLength(1);
  });

  it("runs pending interventions as one request mirroring the panel", async () => {
    const log: Recorded[] = [];
    const state = new ViewState(mockedClient(log), "g1");
    state.addIntervention("noise", "t");
    state.addIntervention("tymp", "a");
    const doc = await state.runInterventions({ seed: 7 });
    expect(log[0]!.url).toBe("/graphs/g1/intervene");
    expect(log[0]!.body).toMatchObject({
      assignments: [
        { column: "noise", value: "t" },
        { column: "tymp", value: "a" },
      ],
      seed: 7,
    });
    expect(state.lastIntervention).toBe(doc);
    expect(doc.perDimension["noise"]!.estimated["t"]).toBe(1.0);
  });

  it("allows only one in-flight compute request", async () => {
    const state = new ViewState(mockedClient([]), "g1");
    const first = state.runInterventions();
    await expect(state.runAttribution("class", "x")).rejects.toThrow(
      /in flight/,
    );
    await first;
  });

  it("remove-attribution restores uniform node sizes", async () => {
    const state = new ViewState(mockedClient([]), "g1");
    await state.runAttribution("class", "cochlear_unknown");
    expect(state.lastAttribution).not.toBeNull();

    const sized = buildGraphViewModel(layout, state.lastAttribution!);
    expect(new Set(sized.nodes.map((n) => n.radius)).size).toBeGreaterThan(1);

    state.removeAttribution();
    expect(state.activeAttribution).toBeNull();
    const restored = buildGraphViewModel(
      layout,
      state.lastAttribution ?? undefined,
    );
    for (const node of restored.nodes) {
      expect(node.radius).toBe(NODE_RADIUS_UNIFORM);
    }
  });

  it("remove clears intervention results and the panel", async () => {
    const state = new ViewState(mockedClient([]), "g1");
    state.addIntervention("noise", "t");
    await state.runInterventions();
    state.removeInterventionResult();
    expect(state.lastIntervention).toBeNull();
    expect(state.pendingInterventions).toEqual([]);
  });

  it("focus issues a focused graph request", async () => {
    const log: Recorded[] = [];
    const state = new ViewState(mockedClient(log), "g1");
    await state.focus("class");
    expect(log[0]!.url).toBe("/graphs/g1?focus=class");
    expect(state.focusNode).toBe("class");
  });
});

describe("api error surface", () => {
  it("exposes the server's code and message", async () => {
    const client = new ApiClient("", async () =>
      new Response(
        JSON.stringify({ code: "unknown_value", message: "no such value" }),
        { status: 422 },
      ),
    );
    const err = await client
      .attribute("g1", "class", "zzz")
      .catch((e: unknown) => e);
    expect(err).toBeInstanceOf(ApiRequestError);
    expect((err as ApiRequestError).code).toBe("unknown_value");
    expect((err as ApiRequestError).status).toBe(422);
  });
});

describe("numbers trace to server documents", () => {
  it("every proportion shown comes from the layout or intervention docs", () => {
    const model = buildGraphViewModel(layout);
    for (const node of model.nodes) {
      const doc = layout.nodes.find((n) => n.id === node.id)!;
      for (const sector of node.sectors) {
        expect(sector.proportion).toBe(doc.valueDistribution![sector.value]);
      }
    }
    expect(attribution.effects["noise"]).toBeGreaterThan(0.5);
  });
});
