// Results and sensitivity view models. Each one stores the raw service
// response and exposes it for rendering; the parsed numbers are bound to
// the DOM exactly as served.

import { ApiClient } from './api';
import type { ReportDocument, SensitivityResponse } from './types';

const decoder = new TextDecoder();

export class ResultsView {
  /** Exact bytes of the structured report, as the service sent them. */
  raw!: Uint8Array;
  report!: ReportDocument;

  constructor(private api: ApiClient) {}

  async loadSession(sessionId: string): Promise<void> {
    this.bind(await this.api.sessionResults(sessionId));
  }

  async loadModel(modelHash: string): Promise<void> {
    this.bind(await this.api.modelResults(modelHash));
  }

  private bind(raw: Uint8Array): void {
    this.raw = raw;
    this.report = JSON.parse(decoder.decode(raw)) as ReportDocument;
  }

  get rawText(): string {
    return decoder.decode(this.raw);
  }

  /** Ranked alternative scores, ready for the bar chart. */
  get ranking(): [string, number][] {
    return this.report.global_priorities.ranking;
  }

  get topScore(): number {
    return this.ranking.length ? this.ranking[0][1] : 0;
  }
}

export class SensitivityPanel {
  /** Last response per criterion, keyed by criterion id. */
  responses = new Map<string, SensitivityResponse>();

  constructor(
    private api: ApiClient,
    private modelHash: string,
    public criteria: string[],
  ) {}

  /** Issue one what-if query and keep the service's answer verbatim. */
  async query(criterion: string, weight: number): Promise<SensitivityResponse> {
    const response = await this.api.sensitivity(this.modelHash, criterion, weight);
    this.responses.set(criterion, response);
    return response;
  }

  latest(criterion: string): SensitivityResponse | undefined {
    return this.responses.get(criterion);
  }
}
