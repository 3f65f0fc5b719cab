/** Typed client for the secmodel service JSON API.
 *
 * The UI consumes this API exclusively; it never computes a state itself,
 * so every number rendered on screen originated in one of these payloads.
 */

export interface ModelSummary {
  id: string;
  name: string;
  steps: number;
  paragons: number;
}

export interface StepNode {
  id: string;
  label: string;
  display: string;
  refinement: "OR" | "AND";
  actuator: "MANUAL" | "AUTOMATIC" | "DUAL" | "UNKNOWN";
  actuatorCode: string;
  sequenced: boolean;
  number: number | null;
  modelRef: string | null;
  children: StepNode[];
}

export interface ParagonNode {
  id: string;
  name: string;
  relationship: "AND" | "OR";
  baseState: number;
  definition: string;
  children: ParagonNode[];
}

export interface Reference {
  title: string;
  url: string;
  publisher: string;
  doi: string | null;
}

export interface ImpactLink {
  stepId: string;
  paragonId: string;
  targetState: number;
}

export interface ModelDetail {
  id: string;
  name: string;
  cim: {
    name: string;
    direction: string;
    references: Reference[];
    root: StepNode;
  };
  dm: {
    name: string;
    root: ParagonNode;
  };
  links: ImpactLink[];
}

export interface SequenceWarning {
  stepId: string;
  predecessorId: string;
}

export interface RootImpact {
  state: number;
  path: string[];
}

export interface SessionView {
  sessionId: string;
  modelId: string;
  mode: "minmax" | "prob";
  revision: number;
  activeSteps: string[];
  states: Record<string, number>;
  warnings: SequenceWarning[];
  rootImpact: RootImpact;
}

export interface StateChange {
  paragonId: string;
  old: number;
  new: number;
}

export interface ToggleResponse {
  sessionId: string;
  revision: number;
  delta: StateChange[];
  warnings: SequenceWarning[];
  rootImpact: RootImpact;
}

export class ApiError extends Error {
  constructor(
    readonly status: number,
    readonly code: string,
    message: string,
    readonly detail: Record<string, unknown>,
  ) {
    super(message);
  }
}

async function request<T>(url: string, init?: RequestInit): Promise<T> {
  const response = await fetch(url, init);
  if (response.status === 204) {
    return undefined as T;
  }
  const body = await response.json();
  if (!response.ok) {
    const detail = (body?.detail ?? {}) as Record<string, unknown>;
    throw new ApiError(
      response.status,
      typeof detail.error === "string" ? detail.error : "http-error",
      typeof detail.message === "string" ? detail.message : `HTTP ${response.status}`,
      detail,
    );
  }
  return body as T;
}

function post(payload: unknown): RequestInit {
  return {
    method: "POST",
    headers: { "content-type": "application/json" },
    body: JSON.stringify(payload),
  };
}

export class ApiClient {
  constructor(readonly baseUrl: string) {}

  listModels(): Promise<ModelSummary[]> {
    return request(`${this.baseUrl}/models`);
  }

  getModel(modelId: string): Promise<ModelDetail> {
    return request(`${this.baseUrl}/models/${encodeURIComponent(modelId)}`);
  }

  createSession(modelId: string, mode: "minmax" | "prob" = "minmax"): Promise<SessionView> {
    return request(`${this.baseUrl}/sessions`, post({ modelId, mode }));
  }

  getSession(sessionId: string): Promise<SessionView> {
    return request(`${this.baseUrl}/sessions/${sessionId}`);
  }

  toggle(
    sessionId: string,
    stepId: string,
    active: boolean,
    revision: number,
  ): Promise<ToggleResponse> {
    return request(`${this.baseUrl}/sessions/${sessionId}/toggle`, post({ stepId, active, revision }));
  }

  reset(sessionId: string, revision?: number): Promise<SessionView> {
    return request(
      `${this.baseUrl}/sessions/${sessionId}/reset`,
      post(revision === undefined ? {} : { revision }),
    );
  }

  deleteSession(sessionId: string): Promise<void> {
    return request(`${this.baseUrl}/sessions/${sessionId}`, { method: "DELETE" });
  }
}
