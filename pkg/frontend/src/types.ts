/** Wire types for the explanation service's HTTP interface. */

export type Task = "text" | "image" | "tabular";

export interface ModelInfo {
  id: string;
  model_kind: string;
  metadata: Record<string, unknown>;
}

export interface ScenarioDescriptor {
  id: string;
  title: string;
  task: Task;
  methods: string[];
  sample_count: number;
  models: ModelInfo[];
  default_model: string;
  has_annotations: boolean;
}

export interface TabularSampleDoc {
  kind: "tabular";
  values: (number | string | boolean | null)[];
}

export interface TextSampleDoc {
  kind: "text";
  text: string;
}

export interface ImageSampleDoc {
  kind: "image";
  height: number;
  width: number;
  png_base64: string;
}

export type SampleDoc = TabularSampleDoc | TextSampleDoc | ImageSampleDoc;

export interface DemoSample {
  id: string;
  label: string;
  sample: SampleDoc;
  annotated_units: string[] | null;
}

export interface PredictionDoc {
  class_labels: string[];
  probabilities: number[];
  predicted_index: number;
  predicted_class: string;
}

export interface AttributionDoc {
  method: string;
  target_class: string;
  unit_kind: "feature" | "token" | "segment";
  units: string[];
  scores: number[];
  baseline_value: number | null;
  prediction_value: number;
  seed: number;
  extras: Record<string, number>;
}

export interface GlobalImportanceDoc {
  method: "permutation_importance";
  feature_names: string[];
  importances: number[];
  raw_drops: number[][];
  repeats: number;
  seed: number;
  baseline_score: number;
}

export interface ProfileColumnDoc {
  name: string;
  inferred_kind: string;
  count: number;
  missing_count: number;
  distinct_count: number;
  stats?: {
    min: number; max: number; mean: number; std: number;
    q1: number; q2: number; q3: number;
  };
  histogram?: { lower: number; upper: number; count: number }[];
  top_values?: { value: string; count: number }[];
}

export interface ProfileDoc {
  row_count: number;
  columns: ProfileColumnDoc[];
  warnings: { column: string; kind: string; detail: string }[];
  correlation: {
    columns: string[];
    matrix: (number | null)[][];
    excluded: { column: string; reason: string }[];
    method: string;
  };
}

export interface ErrorBody {
  error: { category: string; message: string; correlation_id?: string };
}
