import { describe, expect, it } from "vitest";

import * as st from "../src/state.js";
import { ScenarioDescriptor } from "../src/types.js";

const scenarios: ScenarioDescriptor[] = [
  {
    id: "transport", title: "Transport", task: "text",
    methods: ["lrp", "lime"], sample_count: 6,
    models: [], default_model: "m-text", has_annotations: true,
  },
  {
    id: "weather", title: "Weather", task: "tabular",
    methods: ["lime", "kernel_shap", "permutation_importance"], sample_count: 5,
    models: [], default_model: "m-tree", has_annotations: true,
  },
];

function seeded(): st.ViewState {
  return st.withScenarios(st.initialState(), scenarios);
}

describe("scenario selection", () => {
  it("selects the default model and first offered method", () => {
    const state = st.selectScenario(seeded(), "transport");
    expect(state.selectedModel).toBe("m-text");
    expect(state.selectedMethod).toBe("lrp");
  });

  it("resets dependent slots when switching scenarios", () => {
    let state = st.selectScenario(seeded(), "transport");
    state = st.receivePrediction(
      st.beginRequest(state, "prediction")[0], 1,
      { class_labels: ["a"], probabilities: [1], predicted_index: 0, predicted_class: "a" },
    );
    expect(state.prediction.value).not.toBeNull();
    const switched = st.selectScenario(state, "weather");
    expect(switched.prediction.value).toBeNull();
    expect(switched.selectedMethod).toBe("lime");
  });
});

describe("method availability", () => {
  it("offers exactly what the service descriptor lists", () => {
    const state = st.selectScenario(seeded(), "weather");
    expect(st.availableMethods(state)).toEqual([
      "lime", "kernel_shap", "permutation_importance",
    ]);
  });

  it("rejects a method the policy does not offer", () => {
    const state = st.selectMethod(st.selectScenario(seeded(), "transport"), "kernel_shap");
    expect(state.selectedMethod).toBe("lrp"); // unchanged
    expect(state.formError).toMatch(/not offered/);
  });
});

describe("user input validation", () => {
  it("accepts a matching kind", () => {
    const state = st.setUserInput(
      st.selectScenario(seeded(), "transport"),
      { kind: "text", text: "late bus" },
    );
    expect(state.formError).toBeNull();
    expect(state.userInput).toMatchObject({ kind: "text" });
  });

  it("kind mismatch produces a form-level validation error", () => {
    const state = st.setUserInput(
      st.selectScenario(seeded(), "transport"),
      { kind: "tabular", values: [1, 2] },
    );
    expect(state.formError).toMatch(/expects a text input/);
    expect(state.userInput).toBeNull();
  });
});

describe("last-write-wins slots", () => {
  const prediction = (label: string) => ({
    class_labels: [label], probabilities: [1], predicted_index: 0, predicted_class: label,
  });

  it("an older response never overwrites a newer one", () => {
    let state = seeded();
    let e1: number, e2: number;
    [state, e1] = st.beginRequest(state, "prediction");
    [state, e2] = st.beginRequest(state, "prediction");
    state = st.receivePrediction(state, e2, prediction("new"));
    state = st.receivePrediction(state, e1, prediction("old")); // late arrival
    expect(state.prediction.value?.predicted_class).toBe("new");
  });

  it("shows staleness while a newer request is pending", () => {
    let state = seeded();
    let e1: number;
    [state, e1] = st.beginRequest(state, "prediction");
    state = st.receivePrediction(state, e1, prediction("a"));
    expect(st.isStale(state.prediction)).toBe(false);
    [state] = st.beginRequest(state, "prediction");
    expect(st.isStale(state.prediction)).toBe(true);
  });
});

describe("job tracking", () => {
  it("tracks and resolves pending jobs", () => {
    let state = st.trackJob(seeded(), "job-1");
    state = st.trackJob(state, "job-2");
    expect(state.pendingJobs).toEqual(["job-1", "job-2"]);
    state = st.resolveJob(state, "job-1");
    expect(state.pendingJobs).toEqual(["job-2"]);
  });
});
