/** Stub API client and fixture payloads for component/integration tests. */

import type { ApiClient } from "../src/api";
import type {
  FacetDescriptor,
  PatientSummary,
  SimilarityRequest,
  SimilarityResponse,
  StudyFacets,
  StudySummary,
} from "../src/types";

export function facet(key: string, available: boolean): FacetDescriptor {
  const labels: Record<string, [string, string]> = {
    age: ["Age", "year"],
    bmi: ["BMI", "kg/m2"],
    sbp: ["Systolic blood pressure", "mmHg"],
    hba1c: ["HbA1c", "percent"],
    glucose: ["Fasting glucose", "mg/dL"],
  };
  const [label, unit] = labels[key] ?? [key, ""];
  return { feature: `https://w3id.org/sco#${key}`, key, label, unit, available };
}

export function facetSet(available: string[]): FacetDescriptor[] {
  return ["age", "bmi", "sbp", "hba1c", "glucose"].map((key) =>
    facet(key, available.includes(key)),
  );
}

export const STUDIES: StudySummary[] = [
  {
    study_id: "Alpha",
    title: "Alpha trial",
    registry_link: "https://clinicaltrials.gov/study/NCT00000001",
    arm_count: 2,
    cohort_size: 500,
  },
  {
    study_id: "Beta",
    title: "Beta trial",
    registry_link: null,
    arm_count: 1,
    cohort_size: 120,
  },
];

export const FACETS: Record<string, StudyFacets> = {
  Alpha: {
    study_id: "Alpha",
    arms: [
      {
        arm_id: "AlphaTreated",
        kind: "intervention",
        population_size: 300,
        facets: facetSet(["age", "bmi", "sbp", "hba1c", "glucose"]),
      },
      {
        arm_id: "AlphaControl",
        kind: "control",
        population_size: 200,
        facets: facetSet(["age", "bmi", "sbp"]),
      },
    ],
    facets: facetSet(["age", "bmi", "sbp", "hba1c", "glucose"]),
  },
  Beta: {
    study_id: "Beta",
    arms: [
      {
        arm_id: "BetaMain",
        kind: "intervention",
        population_size: 120,
        facets: facetSet(["age", "bmi"]),
      },
    ],
    facets: facetSet(["age", "bmi"]),
  },
};

export const PATIENTS: PatientSummary[] = [
  { patient_id: "P001", features: { age: 60, bmi: 30, sbp: 130, hba1c: 7.5, glucose: 150 } },
  { patient_id: "P002", features: { age: 72, bmi: 26, sbp: 145, hba1c: 8.1, glucose: 170 } },
];

export function similarityResponse(
  request: SimilarityRequest,
  overall = 0.8,
): SimilarityResponse {
  const comparisons = request.features.map((key, i) => ({
    feature: key,
    characteristic: `https://w3id.org/sco#${key}`,
    label: key.toUpperCase(),
    unit: "unit",
    patient_value: 10 + i,
    arm_center: 10,
    arm_spread: 2,
    z: i / 2,
    closeness: Math.max(0, 1 - i / 4),
    radial: 0.5 + i * 0.05,
    spread_zero: false,
  }));
  return {
    report: {
      patient_id: request.patient_id,
      study_id: request.study_id,
      arm_id: request.arm_id,
      comparisons,
      covered_features: Object.fromEntries(request.features.map((f) => [f, true])),
      overall,
    },
    plot: {
      axes: comparisons.map((c) => ({
        label: c.label,
        unit: c.unit,
        range_lo: c.arm_center - 2 * c.arm_spread,
        range_hi: c.arm_center + 2 * c.arm_spread,
      })),
      patient: comparisons.map((c) => c.radial),
      reference: comparisons.map(() => 0.5),
      overall,
    },
  };
}

export interface Deferred<T> {
  promise: Promise<T>;
  resolve: (value: T) => void;
  reject: (err: unknown) => void;
}

export function deferred<T>(): Deferred<T> {
  let resolve!: (value: T) => void;
  let reject!: (err: unknown) => void;
  const promise = new Promise<T>((res, rej) => {
    resolve = res;
    reject = rej;
  });
  return { promise, resolve, reject };
}

export interface StubApi extends ApiClient {
  similarityCalls: SimilarityRequest[];
  /** when set, the next similarity call returns this deferred */
  nextSimilarity: Deferred<SimilarityResponse> | null;
  failStudies: boolean;
}

export function stubApi(): StubApi {
  const stub: StubApi = {
    similarityCalls: [],
    nextSimilarity: null,
    failStudies: false,
    async listStudies() {
      if (stub.failStudies) throw new Error("network unreachable");
      return STUDIES;
    },
    async studyFacets(studyId) {
      const detail = FACETS[studyId];
      if (!detail) throw new Error(`unknown study ${studyId}`);
      return detail;
    },
    async listPatients() {
      return PATIENTS;
    },
    async similarity(body) {
      stub.similarityCalls.push(body);
      if (stub.nextSimilarity) {
        const pending = stub.nextSimilarity;
        stub.nextSimilarity = null;
        return pending.promise;
      }
      return similarityResponse(body);
    },
  };
  return stub;
}

export function flush(): Promise<void> {
  return new Promise((resolve) => setTimeout(resolve, 0));
}
