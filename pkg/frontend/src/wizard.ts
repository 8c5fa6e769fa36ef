// Comparison wizard state machine. It mirrors server state only: the
// current question comes from /next, progress and per-node consistency
// from /status, and every answer is stored only after the service
// confirms it. No priorities, ratios or consistency numbers are computed
// here.

import { ApiClient, ApiError } from './api';
import type {
  Descriptor,
  Direction,
  ModelNode,
  NextComparison,
  SessionDocument,
  StatusPayload,
} from './types';

export type WizardPhase = 'asking' | 'done';

export interface CurrentQuestion {
  node: string;
  i: number;
  j: number;
  first: string;
  second: string;
  question: string;
  remaining: number;
}

export class WizardState {
  phase: WizardPhase = 'asking';
  current: CurrentQuestion | null = null;
  status: StatusPayload | null = null;
  session: SessionDocument;
  /** Verbal grade currently selected in the UI. */
  selectedDescriptor: Descriptor = 'equal';
  direction: Direction = 'first_over_second';
  /** Server rejection for the last submission, shown inline. */
  error: string | null = null;

  private labels: Map<string, string>;

  constructor(
    private api: ApiClient,
    session: SessionDocument,
    nodes: ModelNode[],
  ) {
    this.session = session;
    this.labels = new Map(nodes.map((n) => [n.id, n.label]));
  }

  static async start(
    api: ApiClient,
    modelHash: string,
    mode: 'discrete' | 'continuous',
    nodes: ModelNode[],
  ): Promise<WizardState> {
    const session = await api.createSession(modelHash, mode);
    const wizard = new WizardState(api, session, nodes);
    await wizard.refresh();
    return wizard;
  }

  label(nodeId: string): string {
    return this.labels.get(nodeId) ?? nodeId;
  }

  get continuous(): boolean {
    return this.session.mode === 'continuous';
  }

  /** Pull the next pending question and the live status from the service. */
  async refresh(): Promise<void> {
    const [next, status] = await Promise.all([
      this.api.nextComparison(this.session.session_id),
      this.api.status(this.session.session_id),
    ]);
    this.status = status;
    this.applyNext(next);
  }

  private applyNext(next: NextComparison): void {
    if (next.done) {
      this.phase = 'done';
      this.current = null;
      return;
    }
    this.phase = 'asking';
    this.current = {
      node: next.node!,
      i: next.i!,
      j: next.j!,
      first: next.first!,
      second: next.second!,
      question: next.question!,
      remaining: next.remaining,
    };
    this.selectedDescriptor = 'equal';
    this.direction = 'first_over_second';
  }

  select(descriptor: Descriptor): void {
    this.selectedDescriptor = descriptor;
  }

  toggleDirection(): void {
    this.direction = this.direction === 'first_over_second' ? 'second_over_first' : 'first_over_second';
  }

  /** Submit the selected verbal answer; the service assigns the ratio. */
  async submitVerbal(): Promise<boolean> {
    if (!this.current) return false;
    const { node, i, j } = this.current;
    try {
      await this.api.submitVerbal(
        this.session.session_id, node, i, j, this.selectedDescriptor, this.direction,
      );
    } catch (err) {
      if (err instanceof ApiError) {
        this.error = err.detail;
        return false;
      }
      throw err;
    }
    this.error = null;
    await this.refresh();
    return true;
  }

  /** Submit a typed ratio (continuous sessions); "p/q" strings allowed. */
  async submitValue(value: number | string): Promise<boolean> {
    if (!this.current) return false;
    const { node, i, j } = this.current;
    try {
      await this.api.submitValue(this.session.session_id, node, i, j, value);
    } catch (err) {
      if (err instanceof ApiError) {
        this.error = err.detail;
        return false;
      }
      throw err;
    }
    this.error = null;
    await this.refresh();
    return true;
  }

  /** Revise a specific pair (the consistency gauge's worst-judgment hint). */
  async revise(node: string, i: number, j: number, value: number | string): Promise<boolean> {
    try {
      await this.api.submitValue(this.session.session_id, node, i, j, value);
    } catch (err) {
      if (err instanceof ApiError) {
        this.error = err.detail;
        return false;
      }
      throw err;
    }
    this.error = null;
    await this.refresh();
    return true;
  }

  /** Per-node gauge data, straight from the last confirmed status. */
  gauge(nodeId: string) {
    return this.status?.per_node[nodeId] ?? null;
  }
}
