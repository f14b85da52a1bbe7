/** Wires the store, the API client, and the renderers together.
 *
 * Facet and similarity requests race user selections, so each goes through
 * its own LatestGate plus an AbortController: a newer selection aborts the
 * in-flight request and any response carrying a stale token is discarded
 * without touching state.
 */

import { ApiError, isAbortError, LatestGate } from "./api";
import type { ApiClient } from "./api";
import {
  renderArmList,
  renderFacetPanel,
  renderPatientPicker,
  renderResult,
  renderStudyList,
} from "./components";
import type { Actions } from "./components";
import { Store } from "./state";

export interface App {
  store: Store;
  actions: Actions;
  /** resolves when the initial study/patient fetches settle */
  ready: Promise<void>;
}

export function createApp(root: HTMLElement, api: ApiClient): App {
  const store = new Store();
  const facetsGate = new LatestGate();
  const similarityGate = new LatestGate();
  let facetsAbort: AbortController | null = null;
  let similarityAbort: AbortController | null = null;

  async function loadStudies(): Promise<void> {
    try {
      store.setStudies(await api.listStudies());
    } catch (err) {
      store.setStudiesError(
        err instanceof Error ? err.message : "could not reach the API",
      );
    }
  }

  async function loadPatients(): Promise<void> {
    try {
      store.setPatients(await api.listPatients());
    } catch {
      store.setPatients([]);
    }
  }

  async function fetchFacets(studyId: string): Promise<void> {
    facetsAbort?.abort();
    facetsAbort = new AbortController();
    const token = facetsGate.issue();
    try {
      const detail = await api.studyFacets(studyId, facetsAbort.signal);
      if (facetsGate.isCurrent(token)) store.setDetail(detail);
    } catch (err) {
      if (!isAbortError(err) && facetsGate.isCurrent(token)) {
        store.setInlineError(
          err instanceof Error ? err.message : "facet request failed",
        );
      }
    }
  }

  function cancelInFlightCompare(): void {
    // a changed selection supersedes any pending similarity request: abort
    // the network call and invalidate its token so a late response is
    // discarded without touching state
    similarityAbort?.abort();
    similarityGate.issue();
  }

  const actions: Actions = {
    selectStudy(studyId) {
      cancelInFlightCompare();
      store.selectStudy(studyId);
      void fetchFacets(studyId);
    },
    selectArm(armId) {
      cancelInFlightCompare();
      store.selectArm(armId);
    },
    selectPatient(patientId) {
      cancelInFlightCompare();
      store.selectPatient(patientId);
    },
    toggleFeature(key) {
      store.toggleFeature(key);
    },
    compare() {
      const state = store.get();
      if (!store.canCompare()) return;
      similarityAbort?.abort();
      similarityAbort = new AbortController();
      const token = similarityGate.issue();
      store.beginCompare();
      api
        .similarity(
          {
            study_id: state.selectedStudy!,
            arm_id: state.selectedArm!,
            patient_id: state.selectedPatient!,
            features: [...state.enabledFeatures],
          },
          similarityAbort.signal,
        )
        .then((response) => {
          if (!similarityGate.isCurrent(token)) return; // stale, discard
          const current = store.get();
          if (
            response.report.study_id !== current.selectedStudy ||
            response.report.arm_id !== current.selectedArm
          ) {
            return; // selection moved on while the request was in flight
          }
          store.setResult(response.report, response.plot);
        })
        .catch((err) => {
          if (isAbortError(err) || !similarityGate.isCurrent(token)) return;
          if (err instanceof ApiError) {
            store.setInlineError(err.detail);
          } else {
            store.setInlineError("similarity request failed");
          }
        });
    },
    retryStudies() {
      void loadStudies();
    },
  };

  function render(): void {
    const state = store.get();
    root.replaceChildren(
      renderStudyList(state, actions),
      renderArmList(state, actions),
      renderFacetPanel(store, actions),
      renderPatientPicker(state, actions),
      renderResult(state),
    );
  }

  store.subscribe(render);
  render();
  const ready = Promise.all([loadStudies(), loadPatients()]).then(() => undefined);
  return { store, actions, ready };
}
