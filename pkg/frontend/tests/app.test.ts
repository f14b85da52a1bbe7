import { beforeEach, describe, expect, it } from "vitest";

import { createApp } from "../src/app";
import type { App } from "../src/app";
import type { SimilarityResponse } from "../src/types";
import { deferred, flush, similarityResponse, stubApi } from "./helpers";
import type { StubApi } from "./helpers";

let root: HTMLElement;
let api: StubApi;

beforeEach(() => {
  document.body.innerHTML = '<main id="app"></main>';
  root = document.querySelector<HTMLElement>("#app")!;
  api = stubApi();
});

async function bootedApp(): Promise<App> {
  const app = createApp(root, api);
  await app.ready;
  await flush();
  return app;
}

function click(selector: string): void {
  const node = root.querySelector<HTMLElement>(selector);
  if (!node) throw new Error(`no element for ${selector}`);
  node.click();
}

describe("faceted browser integration", () => {
  it("renders the study list from the API", async () => {
    await bootedApp();
    const rows = root.querySelectorAll(".study-row");
    expect(rows).toHaveLength(2);
    expect(root.textContent).toContain("Alpha trial");
    expect(root.textContent).toContain("cohort 500");
  });

  it("shows a retry banner on network failure and recovers", async () => {
    api.failStudies = true;
    await bootedApp();
    expect(root.querySelector('[data-testid="retry-studies"]')).not.toBeNull();
    api.failStudies = false;
    click('[data-testid="retry-studies"]');
    await flush();
    expect(root.querySelectorAll(".study-row")).toHaveLength(2);
  });

  it("walks the full flow to a rendered star plot", async () => {
    const app = await bootedApp();
    click('[data-study-id="Alpha"]');
    await flush();
    expect(root.querySelectorAll(".arm-row")).toHaveLength(2);

    click('[data-arm-id="AlphaTreated"]');
    const select = root.querySelector<HTMLSelectElement>(
      '[data-testid="patient-select"]',
    )!;
    select.value = "P001";
    select.dispatchEvent(new Event("change"));
    expect(app.store.canCompare()).toBe(true);

    click('[data-testid="compare"]');
    await flush();
    expect(api.similarityCalls).toHaveLength(1);
    expect(root.querySelector('[data-testid="patient-polygon"]')).not.toBeNull();
    expect(root.querySelector('[data-testid="overall-score"]')!.textContent).toContain(
      "0.8",
    );
  });

  it("never sends a disabled facet in the similarity request", async () => {
    await bootedApp();
    click('[data-study-id="Alpha"]');
    await flush();
    click('[data-arm-id="AlphaControl"]'); // hba1c and glucose unavailable
    const select = root.querySelector<HTMLSelectElement>(
      '[data-testid="patient-select"]',
    )!;
    select.value = "P001";
    select.dispatchEvent(new Event("change"));

    // poke the disabled toggles; nothing should change
    for (const key of ["hba1c", "glucose"]) {
      const box = root.querySelector<HTMLInputElement>(
        `[data-testid="facet-${key}"]`,
      )!;
      expect(box.disabled).toBe(true);
    }
    click('[data-testid="compare"]');
    await flush();
    expect(api.similarityCalls).toHaveLength(1);
    const sent = api.similarityCalls[0]!;
    expect(sent.features.sort()).toEqual(["age", "bmi", "sbp"]);
    expect(sent.features).not.toContain("hba1c");
    expect(sent.features).not.toContain("glucose");
  });

  it("discards a stale similarity response after rapid re-selection", async () => {
    const app = await bootedApp();
    click('[data-study-id="Alpha"]');
    await flush();
    click('[data-arm-id="AlphaTreated"]');
    const select = root.querySelector<HTMLSelectElement>(
      '[data-testid="patient-select"]',
    )!;
    select.value = "P001";
    select.dispatchEvent(new Event("change"));

    // first compare: response held back
    const slow = deferred<SimilarityResponse>();
    api.nextSimilarity = slow;
    click('[data-testid="compare"]');
    await flush();

    // user re-selects the other arm and compares again before the first lands
    click('[data-arm-id="AlphaControl"]');
    click('[data-testid="compare"]');
    await flush();
    expect(api.similarityCalls).toHaveLength(2);
    const fresh = app.store.get();
    expect(fresh.report?.arm_id).toBe("AlphaControl");

    // the slow first response finally resolves: it must be discarded
    slow.resolve(
      similarityResponse(
        {
          study_id: "Alpha",
          arm_id: "AlphaTreated",
          patient_id: "P001",
          features: ["age", "bmi", "sbp", "hba1c", "glucose"],
        },
        0.111,
      ),
    );
    await flush();
    const after = app.store.get();
    expect(after.report?.arm_id).toBe("AlphaControl");
    expect(after.report?.overall).not.toBe(0.111);
  });

  it("selecting a new study clears any prior plot", async () => {
    const app = await bootedApp();
    click('[data-study-id="Alpha"]');
    await flush();
    click('[data-arm-id="AlphaTreated"]');
    const select = root.querySelector<HTMLSelectElement>(
      '[data-testid="patient-select"]',
    )!;
    select.value = "P001";
    select.dispatchEvent(new Event("change"));
    click('[data-testid="compare"]');
    await flush();
    expect(app.store.get().plot).not.toBeNull();

    click('[data-study-id="Beta"]');
    expect(app.store.get().plot).toBeNull();
    expect(root.querySelector('[data-testid="patient-polygon"]')).toBeNull();
  });

  it("keeps the prior plot and shows an inline message on API 422", async () => {
    const app = await bootedApp();
    click('[data-study-id="Alpha"]');
    await flush();
    click('[data-arm-id="AlphaTreated"]');
    const select = root.querySelector<HTMLSelectElement>(
      '[data-testid="patient-select"]',
    )!;
    select.value = "P001";
    select.dispatchEvent(new Event("change"));
    click('[data-testid="compare"]');
    await flush();
    expect(app.store.get().plot).not.toBeNull();

    const failing = deferred<SimilarityResponse>();
    api.nextSimilarity = failing;
    click('[data-testid="compare"]');
    const { ApiError } = await import("../src/api");
    failing.reject(new ApiError(422, "unavailable_feature", "feature not reported"));
    await flush();
    const state = app.store.get();
    expect(state.inlineError).toBe("feature not reported");
    expect(state.plot).not.toBeNull();
    expect(
      root.querySelector('[data-testid="inline-error"]')!.textContent,
    ).toContain("feature not reported");
  });
});
