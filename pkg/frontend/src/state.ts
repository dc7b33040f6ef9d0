/**
 * View state and its pure transitions.
 *
 * Invariants kept here:
 *  - the method selector only ever offers what the service's scenario
 *    descriptor lists for the selected task (probed, not hardcoded);
 *  - the view renders only data received from the service: this module
 *    stores documents verbatim and never recomputes scores;
 *  - concurrent in-flight requests resolve last-write-wins per view slot,
 *    with a staleness flag while a newer request is pending.
 */

import {
  AttributionDoc,
  DemoSample,
  GlobalImportanceDoc,
  PredictionDoc,
  ProfileDoc,
  SampleDoc,
  ScenarioDescriptor,
} from "./types.js";

export interface SlotState<T> {
  value: T | null;
  /** Epoch of the request that produced `value`. */
  epoch: number;
  /** Highest epoch handed out; value is stale while it is newer. */
  issued: number;
}

export interface ViewState {
  scenarios: ScenarioDescriptor[];
  selectedScenario: string | null;
  samples: DemoSample[];
  selectedSampleId: string | null;
  userInput: SampleDoc | null;
  selectedModel: string | null;
  selectedMethod: string | null;
  prediction: SlotState<PredictionDoc>;
  attribution: SlotState<AttributionDoc>;
  importance: SlotState<GlobalImportanceDoc>;
  profile: SlotState<ProfileDoc>;
  pendingJobs: string[];
  formError: string | null;
  serviceError: string | null;
}

function emptySlot<T>(): SlotState<T> {
  return { value: null, epoch: 0, issued: 0 };
}

export function initialState(): ViewState {
  return {
    scenarios: [],
    selectedScenario: null,
    samples: [],
    selectedSampleId: null,
    userInput: null,
    selectedModel: null,
    selectedMethod: null,
    prediction: emptySlot(),
    attribution: emptySlot(),
    importance: emptySlot(),
    profile: emptySlot(),
    pendingJobs: [],
    formError: null,
    serviceError: null,
  };
}

export function withScenarios(
  state: ViewState,
  scenarios: ScenarioDescriptor[],
): ViewState {
  return { ...state, scenarios };
}

export function currentScenario(state: ViewState): ScenarioDescriptor | null {
  return state.scenarios.find((s) => s.id === state.selectedScenario) ?? null;
}

/** Methods the service allows for the selected scenario; never hardcoded. */
export function availableMethods(state: ViewState): string[] {
  return currentScenario(state)?.methods ?? [];
}

export function selectScenario(state: ViewState, scenarioId: string): ViewState {
  const scenario = state.scenarios.find((s) => s.id === scenarioId);
  if (!scenario) {
    return { ...state, serviceError: `unknown scenario ${scenarioId}` };
  }
  return {
    ...initialState(),
    scenarios: state.scenarios,
    selectedScenario: scenarioId,
    selectedModel: scenario.default_model,
    selectedMethod: scenario.methods[0] ?? null,
  };
}

export function receiveSamples(state: ViewState, samples: DemoSample[]): ViewState {
  return { ...state, samples };
}

export function selectSample(state: ViewState, sampleId: string): ViewState {
  return {
    ...state,
    selectedSampleId: sampleId,
    userInput: null,
    formError: null,
    prediction: emptySlot(),
    attribution: emptySlot(),
  };
}

export function selectModel(state: ViewState, modelId: string): ViewState {
  return { ...state, selectedModel: modelId };
}

export function selectMethod(state: ViewState, method: string): ViewState {
  if (!availableMethods(state).includes(method)) {
    return { ...state, formError: `method ${method} is not offered for this scenario` };
  }
  return { ...state, selectedMethod: method, formError: null };
}

/** Form-level validation: the input kind must match the scenario's task. */
export function setUserInput(state: ViewState, input: SampleDoc): ViewState {
  const scenario = currentScenario(state);
  if (scenario && input.kind !== scenario.task) {
    return {
      ...state,
      formError:
        `this scenario expects a ${scenario.task} input, got ${input.kind}`,
    };
  }
  return {
    ...state,
    userInput: input,
    selectedSampleId: null,
    formError: null,
    prediction: emptySlot(),
    attribution: emptySlot(),
  };
}

export type Slot = "prediction" | "attribution" | "importance" | "profile";

/** Hand out a request epoch; the slot shows stale until it resolves. */
export function beginRequest(state: ViewState, slot: Slot): [ViewState, number] {
  const current = state[slot] as SlotState<unknown>;
  const epoch = current.issued + 1;
  return [
    { ...state, [slot]: { ...current, issued: epoch }, serviceError: null },
    epoch,
  ];
}

function resolveSlot<T>(
  slot: SlotState<T>,
  epoch: number,
  value: T,
): SlotState<T> {
  // last-write-wins: an older response never overwrites a newer one
  if (epoch < slot.epoch) return slot;
  return { ...slot, value, epoch };
}

export function receivePrediction(
  state: ViewState, epoch: number, doc: PredictionDoc,
): ViewState {
  return { ...state, prediction: resolveSlot(state.prediction, epoch, doc) };
}

export function receiveAttribution(
  state: ViewState, epoch: number, doc: AttributionDoc,
): ViewState {
  return { ...state, attribution: resolveSlot(state.attribution, epoch, doc) };
}

export function receiveImportance(
  state: ViewState, epoch: number, doc: GlobalImportanceDoc,
): ViewState {
  return { ...state, importance: resolveSlot(state.importance, epoch, doc) };
}

export function receiveProfile(
  state: ViewState, epoch: number, doc: ProfileDoc,
): ViewState {
  return { ...state, profile: resolveSlot(state.profile, epoch, doc) };
}

export function receiveServiceError(state: ViewState, message: string): ViewState {
  return { ...state, serviceError: message };
}

export function isStale(slot: SlotState<unknown>): boolean {
  return slot.issued > slot.epoch;
}

export function trackJob(state: ViewState, jobId: string): ViewState {
  return { ...state, pendingJobs: [...state.pendingJobs, jobId] };
}

export function resolveJob(state: ViewState, jobId: string): ViewState {
  return { ...state, pendingJobs: state.pendingJobs.filter((j) => j !== jobId) };
}
