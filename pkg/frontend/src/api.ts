// Thin fetch wrapper for the ahpkit service. Raw response bytes are kept
// where byte fidelity matters (model and report documents).

import type {
  JudgmentResponse,
  ModelDocument,
  NextComparison,
  SensitivityResponse,
  SessionDocument,
  StatusPayload,
} from './types';

export class ApiError extends Error {
  constructor(
    public status: number,
    public detail: string,
  ) {
    super(detail);
  }
}

async function fail(response: Response): Promise<never> {
  let detail = response.statusText;
  try {
    const body = await response.json();
    if (typeof body?.detail === 'string') detail = body.detail;
  } catch {
    // non-JSON error body; keep the status text
  }
  throw new ApiError(response.status, detail);
}

export class ApiClient {
  constructor(private baseUrl: string = '') {}

  private async getJson<T>(path: string): Promise<T> {
    const response = await fetch(this.baseUrl + path);
    if (!response.ok) await fail(response);
    return response.json();
  }

  private async postJson<T>(path: string, body: unknown): Promise<T> {
    const response = await fetch(this.baseUrl + path, {
      method: 'POST',
      headers: { 'Content-Type': 'application/json' },
      body: JSON.stringify(body),
    });
    if (!response.ok) await fail(response);
    return response.json();
  }

  /** Raw document bytes, for byte-exact bindings. */
  async getBytes(path: string): Promise<Uint8Array> {
    const response = await fetch(this.baseUrl + path);
    if (!response.ok) await fail(response);
    return new Uint8Array(await response.arrayBuffer());
  }

  bankingModel(): Promise<ModelDocument> {
    return this.getJson('/models/banking');
  }

  model(hash: string): Promise<ModelDocument> {
    return this.getJson(`/models/${hash}`);
  }

  async uploadModel(document: ModelDocument | string): Promise<string> {
    const body = typeof document === 'string' ? document : JSON.stringify(document);
    const response = await fetch(this.baseUrl + '/models', { method: 'POST', body });
    if (!response.ok) await fail(response);
    return (await response.json()).model_hash;
  }

  createSession(modelHash: string, mode: 'discrete' | 'continuous'): Promise<SessionDocument> {
    return this.postJson('/sessions', { model_hash: modelHash, mode });
  }

  session(sessionId: string): Promise<SessionDocument> {
    return this.getJson(`/sessions/${sessionId}`);
  }

  nextComparison(sessionId: string): Promise<NextComparison> {
    return this.getJson(`/sessions/${sessionId}/next`);
  }

  submitVerbal(
    sessionId: string,
    node: string,
    i: number,
    j: number,
    descriptor: string,
    direction: string,
  ): Promise<JudgmentResponse> {
    return this.postJson(`/sessions/${sessionId}/judgments`, { node, i, j, descriptor, direction });
  }

  submitValue(
    sessionId: string,
    node: string,
    i: number,
    j: number,
    value: number | string,
  ): Promise<JudgmentResponse> {
    return this.postJson(`/sessions/${sessionId}/judgments`, { node, i, j, value });
  }

  status(sessionId: string): Promise<StatusPayload> {
    return this.getJson(`/sessions/${sessionId}/status`);
  }

  /** Structured results document, byte-exact as served. */
  sessionResults(sessionId: string): Promise<Uint8Array> {
    return this.getBytes(`/sessions/${sessionId}/results`);
  }

  modelResults(modelHash: string): Promise<Uint8Array> {
    return this.getBytes(`/models/${modelHash}/results`);
  }

  sensitivity(modelHash: string, criterion: string, weight: number): Promise<SensitivityResponse> {
    const params = new URLSearchParams({ criterion, weight: String(weight) });
    return this.getJson(`/models/${modelHash}/sensitivity?${params}`);
  }
}
