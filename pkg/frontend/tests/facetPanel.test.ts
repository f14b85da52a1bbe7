import { describe, expect, it } from "vitest";

import { renderFacetPanel } from "../src/components";
import type { Actions } from "../src/components";
import { Store } from "../src/state";
import { FACETS, PATIENTS, STUDIES } from "./helpers";

function noopActions(store: Store): Actions {
  return {
    selectStudy: (id) => store.selectStudy(id),
    selectArm: (id) => store.selectArm(id),
    selectPatient: (id) => store.selectPatient(id),
    toggleFeature: (key) => store.toggleFeature(key),
    compare: () => undefined,
    retryStudies: () => undefined,
  };
}

function panelFor(armId: string): { store: Store; panel: HTMLElement } {
  const store = new Store();
  store.setStudies(STUDIES);
  store.setPatients(PATIENTS);
  store.selectStudy("Alpha");
  store.setDetail(FACETS.Alpha!);
  store.selectArm(armId);
  return { store, panel: renderFacetPanel(store, noopActions(store)) };
}

describe("facet panel", () => {
  it("renders all five facets with disabled toggles for unavailable ones", () => {
    const { panel } = panelFor("AlphaControl"); // age/bmi/sbp available
    const checkboxes = [...panel.querySelectorAll<HTMLInputElement>("input")];
    expect(checkboxes).toHaveLength(5);
    const disabled = checkboxes.filter((c) => c.disabled);
    expect(disabled.map((c) => c.dataset.testid)).toEqual([
      "facet-hba1c",
      "facet-glucose",
    ]);
    const enabled = checkboxes.filter((c) => !c.disabled);
    expect(enabled).toHaveLength(3);
    expect(enabled.every((c) => c.checked)).toBe(true);
  });

  it("all five toggleable when the arm reports everything", () => {
    const { panel } = panelFor("AlphaTreated");
    const checkboxes = [...panel.querySelectorAll<HTMLInputElement>("input")];
    expect(checkboxes.filter((c) => !c.disabled)).toHaveLength(5);
  });

  it("disables compare with a hint when fewer than three are enabled", () => {
    const { store } = panelFor("AlphaControl");
    store.selectPatient("P001");
    let panel = renderFacetPanel(store, noopActions(store));
    let compare = panel.querySelector<HTMLButtonElement>('[data-testid="compare"]')!;
    expect(compare.disabled).toBe(false);

    store.toggleFeature("sbp"); // down to two enabled
    panel = renderFacetPanel(store, noopActions(store));
    compare = panel.querySelector<HTMLButtonElement>('[data-testid="compare"]')!;
    expect(compare.disabled).toBe(true);
    expect(panel.querySelector(".hint")?.textContent).toMatch(/at least 3/);
  });

  it("clicking an enabled toggle flips state through the action", () => {
    const { store } = panelFor("AlphaTreated");
    const panel = renderFacetPanel(store, noopActions(store));
    document.body.appendChild(panel);
    const age = panel.querySelector<HTMLInputElement>('[data-testid="facet-age"]')!;
    age.click();
    expect(store.get().enabledFeatures).not.toContain("age");
    panel.remove();
  });

  it("unavailable facets are labelled as not reported", () => {
    const { panel } = panelFor("AlphaControl");
    const row = panel.querySelector('[data-facet-key="glucose"]')!;
    expect(row.classList.contains("disabled")).toBe(true);
    expect(row.textContent).toMatch(/not reported/);
  });
});
