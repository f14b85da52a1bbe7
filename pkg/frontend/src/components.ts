/** DOM renderers. Each takes the current state plus action callbacks and
 * returns a fresh element; the app re-renders whole sections on every state
 * change, which is plenty at this scale.
 */

import { MIN_COMPARE_FEATURES, Store } from "./state";
import { renderStarPlot } from "./starPlot";
import type { ViewState } from "./state";

export interface Actions {
  selectStudy(studyId: string): void;
  selectArm(armId: string): void;
  selectPatient(patientId: string): void;
  toggleFeature(key: string): void;
  compare(): void;
  retryStudies(): void;
}

function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  className?: string,
  text?: string,
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  if (className) node.className = className;
  if (text !== undefined) node.textContent = text;
  return node;
}

export function renderStudyList(state: ViewState, actions: Actions): HTMLElement {
  const section = el("section", "study-list");
  section.appendChild(el("h2", undefined, "Studies"));
  if (state.studiesError) {
    const banner = el("div", "error-banner");
    banner.appendChild(el("span", undefined, state.studiesError));
    const retry = el("button", "retry", "Retry");
    retry.dataset.testid = "retry-studies";
    retry.addEventListener("click", () => actions.retryStudies());
    banner.appendChild(retry);
    section.appendChild(banner);
    return section;
  }
  if (state.studies.length === 0) {
    section.appendChild(el("p", "empty-state", "No studies loaded."));
    return section;
  }
  const list = el("ul");
  for (const study of state.studies) {
    const item = el("li");
    const button = el("button", "study-row");
    button.dataset.studyId = study.study_id;
    if (study.study_id === state.selectedStudy) button.classList.add("selected");
    button.appendChild(el("span", "study-title", study.title));
    button.appendChild(
      el(
        "span",
        "study-meta",
        `${study.arm_count} arm(s), cohort ${study.cohort_size}`,
      ),
    );
    button.addEventListener("click", () => actions.selectStudy(study.study_id));
    item.appendChild(button);
    list.appendChild(item);
  }
  section.appendChild(list);
  return section;
}

export function renderArmList(state: ViewState, actions: Actions): HTMLElement {
  const section = el("section", "arm-list");
  section.appendChild(el("h2", undefined, "Arms"));
  if (!state.detail) {
    section.appendChild(
      el("p", "empty-state", state.selectedStudy ? "Loading..." : "Pick a study."),
    );
    return section;
  }
  for (const arm of state.detail.arms) {
    const button = el("button", "arm-row");
    button.dataset.armId = arm.arm_id;
    if (arm.arm_id === state.selectedArm) button.classList.add("selected");
    button.textContent = `${arm.arm_id} (${arm.kind}, n=${arm.population_size})`;
    button.addEventListener("click", () => actions.selectArm(arm.arm_id));
    section.appendChild(button);
  }
  return section;
}

export function renderPatientPicker(state: ViewState, actions: Actions): HTMLElement {
  const section = el("section", "patient-picker");
  section.appendChild(el("h2", undefined, "Patient"));
  const select = el("select");
  select.dataset.testid = "patient-select";
  const placeholder = el("option", undefined, "choose a patient");
  placeholder.value = "";
  select.appendChild(placeholder);
  for (const patient of state.patients) {
    const option = el("option", undefined, patient.patient_id);
    option.value = patient.patient_id;
    if (patient.patient_id === state.selectedPatient) option.selected = true;
    select.appendChild(option);
  }
  select.addEventListener("change", () => {
    if (select.value) actions.selectPatient(select.value);
  });
  section.appendChild(select);
  return section;
}

export function renderFacetPanel(store: Store, actions: Actions): HTMLElement {
  const state = store.get();
  const section = el("section", "facet-panel");
  section.appendChild(el("h2", undefined, "Feature facets"));
  const facets = store.armFacets();
  if (facets.length === 0) {
    section.appendChild(el("p", "empty-state", "Pick an arm to see its facets."));
    return section;
  }
  for (const facet of facets) {
    const row = el("label", "facet-toggle");
    row.dataset.facetKey = facet.key;
    const checkbox = el("input");
    checkbox.type = "checkbox";
    checkbox.dataset.testid = `facet-${facet.key}`;
    checkbox.checked = state.enabledFeatures.includes(facet.key);
    checkbox.disabled = !facet.available;
    checkbox.addEventListener("change", () => actions.toggleFeature(facet.key));
    row.appendChild(checkbox);
    row.appendChild(
      el("span", facet.available ? "facet-name" : "facet-name unavailable",
         `${facet.label} (${facet.unit})`),
    );
    if (!facet.available) {
      row.classList.add("disabled");
      row.appendChild(el("span", "facet-note", "not reported"));
    }
    section.appendChild(row);
  }
  const compare = el("button", "compare", "Compare");
  compare.dataset.testid = "compare";
  compare.disabled = !store.canCompare();
  compare.addEventListener("click", () => actions.compare());
  section.appendChild(compare);
  if (state.enabledFeatures.length < MIN_COMPARE_FEATURES) {
    section.appendChild(
      el(
        "p",
        "hint",
        `Select at least ${MIN_COMPARE_FEATURES} features to compare.`,
      ),
    );
  }
  return section;
}

export function renderResult(state: ViewState): HTMLElement {
  const section = el("section", "result");
  section.appendChild(el("h2", undefined, "Cohort similarity"));
  if (state.inlineError) {
    const note = el("p", "inline-error", state.inlineError);
    note.dataset.testid = "inline-error";
    section.appendChild(note);
  }
  if (!state.plot || !state.report) {
    if (!state.inlineError) {
      section.appendChild(
        el("p", "empty-state", "Compare a patient with an arm to see the plot."),
      );
    }
    return section;
  }
  const score = el(
    "p",
    "overall-score",
    `Overall closeness: ${state.report.overall.toFixed(3)}`,
  );
  score.dataset.testid = "overall-score";
  section.appendChild(score);
  section.appendChild(renderStarPlot(state.plot));
  return section;
}
