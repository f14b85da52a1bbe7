/** Shapes of the backend JSON API responses. */

export interface StudySummary {
  study_id: string;
  title: string;
  registry_link: string | null;
  arm_count: number;
  cohort_size: number;
}

export interface FacetDescriptor {
  feature: string; // characteristic class IRI
  key: string; // "age" | "bmi" | "sbp" | "hba1c" | "glucose"
  label: string;
  unit: string;
  available: boolean;
}

export interface ArmInfo {
  arm_id: string;
  kind: "intervention" | "control";
  population_size: number;
  facets: FacetDescriptor[];
}

export interface StudyFacets {
  study_id: string;
  arms: ArmInfo[];
  facets: FacetDescriptor[];
}

export interface PatientSummary {
  patient_id: string;
  features: Record<string, number>;
}

export interface FeatureComparison {
  feature: string;
  characteristic: string;
  label: string;
  unit: string;
  patient_value: number;
  arm_center: number;
  arm_spread: number;
  z: number | null;
  closeness: number;
  radial: number;
  spread_zero: boolean;
}

export interface SimilarityReport {
  patient_id: string;
  study_id: string;
  arm_id: string;
  comparisons: FeatureComparison[];
  covered_features: Record<string, boolean>;
  overall: number;
}

export interface PlotAxis {
  label: string;
  unit: string;
  range_lo: number;
  range_hi: number;
}

export interface PlotSeries {
  axes: PlotAxis[];
  patient: number[];
  reference: number[];
  overall: number;
}

export interface SimilarityResponse {
  report: SimilarityReport;
  plot: PlotSeries;
}

export interface SimilarityRequest {
  study_id: string;
  arm_id: string;
  patient_id: string;
  features: string[];
}
