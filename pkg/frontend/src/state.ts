/** View state and its transitions.
 *
 * The state machine is (no study) -> (study) -> (study + arm + patient +
 * features) -> (report). Changing an upstream selection always clears the
 * downstream ones: a new study resets arm, features, and report; a new arm
 * or patient resets the report. Enabled features are kept a subset of the
 * selected arm's available facets at all times, so a disabled facet can
 * never reach an outgoing request.
 */

import type {
  ArmInfo,
  FacetDescriptor,
  PatientSummary,
  PlotSeries,
  SimilarityReport,
  StudyFacets,
  StudySummary,
} from "./types";

export const MIN_COMPARE_FEATURES = 3;

export interface ViewState {
  studies: StudySummary[];
  studiesError: string | null;
  selectedStudy: string | null;
  detail: StudyFacets | null;
  selectedArm: string | null;
  patients: PatientSummary[];
  selectedPatient: string | null;
  enabledFeatures: string[];
  report: SimilarityReport | null;
  plot: PlotSeries | null;
  comparing: boolean;
  inlineError: string | null;
}

export type Listener = (state: ViewState) => void;

function initialState(): ViewState {
  return {
    studies: [],
    studiesError: null,
    selectedStudy: null,
    detail: null,
    selectedArm: null,
    patients: [],
    selectedPatient: null,
    enabledFeatures: [],
    report: null,
    plot: null,
    comparing: false,
    inlineError: null,
  };
}

export class Store {
  private state: ViewState = initialState();
  private listeners: Listener[] = [];

  get(): ViewState {
    return this.state;
  }

  subscribe(listener: Listener): () => void {
    this.listeners.push(listener);
    return () => {
      this.listeners = this.listeners.filter((l) => l !== listener);
    };
  }

  private commit(patch: Partial<ViewState>): void {
    this.state = { ...this.state, ...patch };
    for (const listener of this.listeners) listener(this.state);
  }

  setStudies(studies: StudySummary[]): void {
    this.commit({ studies, studiesError: null });
  }

  setStudiesError(message: string): void {
    this.commit({ studiesError: message });
  }

  setPatients(patients: PatientSummary[]): void {
    this.commit({ patients });
  }

  selectStudy(studyId: string): void {
    if (studyId === this.state.selectedStudy) return;
    this.commit({
      selectedStudy: studyId,
      detail: null,
      selectedArm: null,
      enabledFeatures: [],
      report: null,
      plot: null,
      comparing: false,
      inlineError: null,
    });
  }

  setDetail(detail: StudyFacets): void {
    if (detail.study_id !== this.state.selectedStudy) return; // stale
    this.commit({ detail });
  }

  selectedArmInfo(): ArmInfo | null {
    const { detail, selectedArm } = this.state;
    if (!detail || !selectedArm) return null;
    return detail.arms.find((a) => a.arm_id === selectedArm) ?? null;
  }

  armFacets(): FacetDescriptor[] {
    return this.selectedArmInfo()?.facets ?? [];
  }

  availableFeatureKeys(): string[] {
    return this.armFacets()
      .filter((f) => f.available)
      .map((f) => f.key);
  }

  selectArm(armId: string): void {
    const { detail } = this.state;
    if (!detail || !detail.arms.some((a) => a.arm_id === armId)) return;
    const arm = detail.arms.find((a) => a.arm_id === armId)!;
    this.commit({
      selectedArm: armId,
      enabledFeatures: arm.facets.filter((f) => f.available).map((f) => f.key),
      report: null,
      plot: null,
      comparing: false,
      inlineError: null,
    });
  }

  selectPatient(patientId: string): void {
    if (!this.state.patients.some((p) => p.patient_id === patientId)) return;
    this.commit({
      selectedPatient: patientId,
      report: null,
      plot: null,
      comparing: false,
      inlineError: null,
    });
  }

  toggleFeature(key: string): void {
    if (!this.availableFeatureKeys().includes(key)) return;
    const enabled = this.state.enabledFeatures;
    this.commit({
      enabledFeatures: enabled.includes(key)
        ? enabled.filter((k) => k !== key)
        : [...enabled, key],
    });
  }

  canCompare(): boolean {
    const s = this.state;
    return (
      s.selectedStudy !== null &&
      s.selectedArm !== null &&
      s.selectedPatient !== null &&
      s.enabledFeatures.length >= MIN_COMPARE_FEATURES &&
      !s.comparing
    );
  }

  beginCompare(): void {
    this.commit({ comparing: true });
  }

  setResult(report: SimilarityReport, plot: PlotSeries): void {
    this.commit({ report, plot, comparing: false, inlineError: null });
  }

  /** Inline failure: message shown, any prior plot retained. */
  setInlineError(message: string): void {
    this.commit({ inlineError: message, comparing: false });
  }

  endCompare(): void {
    this.commit({ comparing: false });
  }
}
