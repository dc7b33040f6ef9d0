/** Thin typed client for the explanation service. */

import {
  AttributionDoc,
  DemoSample,
  ErrorBody,
  GlobalImportanceDoc,
  PredictionDoc,
  ProfileDoc,
  SampleDoc,
  ScenarioDescriptor,
} from "./types.js";

export class ServiceError extends Error {
  constructor(
    message: string,
    readonly category: string,
    readonly status: number,
  ) {
    super(message);
  }
}

async function request<T>(url: string, init?: RequestInit): Promise<T> {
  const response = await fetch(url, {
    headers: { "content-type": "application/json" },
    ...init,
  });
  const body = await response.json();
  if (!response.ok) {
    const err = (body as ErrorBody).error;
    throw new ServiceError(
      err?.message ?? `request failed (${response.status})`,
      err?.category ?? "internal",
      response.status,
    );
  }
  return body as T;
}

export class Api {
  constructor(readonly baseUrl: string = "") {}

  scenarios(): Promise<ScenarioDescriptor[]> {
    return request(`${this.baseUrl}/scenarios`);
  }

  samples(scenarioId: string): Promise<DemoSample[]> {
    return request(`${this.baseUrl}/scenarios/${scenarioId}/samples`);
  }

  predict(modelId: string, sample: SampleDoc): Promise<{ prediction: PredictionDoc }> {
    return request(`${this.baseUrl}/models/${modelId}/predict`, {
      method: "POST",
      body: JSON.stringify({ sample }),
    });
  }

  explain(
    modelId: string,
    body: {
      method: string;
      sample?: SampleDoc;
      scenario?: string;
      sample_id?: string;
      seed?: number;
      target_class?: string;
    },
  ): Promise<{ attribution: AttributionDoc }> {
    return request(`${this.baseUrl}/models/${modelId}/explain`, {
      method: "POST",
      body: JSON.stringify(body),
    });
  }

  permutationImportance(
    modelId: string, seed = 0,
  ): Promise<{ importance: GlobalImportanceDoc }> {
    return request(
      `${this.baseUrl}/models/${modelId}/permutation-importance?seed=${seed}`,
    );
  }

  profile(datasetId: string): Promise<{ profile: ProfileDoc }> {
    return request(`${this.baseUrl}/datasets/${datasetId}/profile`);
  }

  train(body: unknown): Promise<{ job_id: string }> {
    return request(`${this.baseUrl}/train`, {
      method: "POST",
      body: JSON.stringify(body),
    });
  }

  job(jobId: string): Promise<{ id: string; status: string; model_id?: string; error?: string }> {
    return request(`${this.baseUrl}/jobs/${jobId}`);
  }
}
