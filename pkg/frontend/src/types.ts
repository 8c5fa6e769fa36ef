// Wire types for the ahpkit HTTP API. These mirror the JSON payloads the
// service emits (see ../docs/formats.md); the client never derives or
// recomputes any of these numbers.

export type NodeKind = 'goal' | 'criterion' | 'alternative';

export interface ModelNode {
  id: string;
  label: string;
  kind: NodeKind;
  children: string[];
  metadata: Record<string, unknown>;
}

export interface ModelDocument {
  format: 'ahpkit/model';
  format_version: number;
  hierarchy: {
    root: string;
    nodes: ModelNode[];
  };
  judgments: Record<string, (number | string | null)[][]>;
  local_weights: Record<string, { method: string; weights: number[]; lambda_max?: number }>;
}

export interface SessionDocument {
  format: 'ahpkit/session';
  format_version: number;
  session_id: string;
  model_hash: string | null;
  mode: 'discrete' | 'continuous';
  created_at: string;
  updated_at: string;
  answered: { node: string; i: number; j: number; value: number }[];
  pending: { node: string; i: number; j: number }[];
}

export interface NextComparison {
  done: boolean;
  node?: string;
  i?: number;
  j?: number;
  first?: string;
  second?: string;
  question?: string;
  remaining: number;
}

export interface WorstJudgment {
  i: number;
  j: number;
  deviation: number;
}

export interface ConsistencyPayload {
  lambda_max: number;
  ci: number;
  ri: number;
  cr: number;
  consistent: boolean;
  threshold: number;
  worst_judgment: WorstJudgment | null;
}

export interface NodeProgress {
  answered: number;
  total: number;
  consistency: ConsistencyPayload | null;
}

export interface StatusPayload {
  answered: number;
  total: number;
  percent: number;
  complete: boolean;
  per_node: Record<string, NodeProgress>;
}

export interface JudgmentResponse {
  node: string;
  i: number;
  j: number;
  value: number;
  reciprocal: number;
  remaining: number;
}

export interface ReportDocument {
  format: 'ahpkit/report';
  format_version: number;
  precision: number | null;
  global_priorities: {
    per_node: Record<string, number>;
    alternatives: Record<string, number>;
    ranking: [string, number][];
  };
  contribution_table: {
    rows: string[];
    columns: string[];
    cells: number[][];
    row_totals: number[];
    column_totals: number[];
  } | null;
  consistency: Record<string, ConsistencyPayload>;
  provenance: { model_hash: string; tool_version: string; created_at: string | null };
}

export interface SensitivityResponse {
  criterion: string;
  old_weight: number;
  new_weight: number;
  alternatives: Record<string, number>;
  ranking: [string, number][];
  rank_changes: { alternative: string; before: number; after: number }[];
}

// The nine verbal grades of the comparison scale, mildest to strongest,
// with the direction toggle deciding which item dominates. Values are
// assigned by the service on submission.
export const DESCRIPTORS = [
  'equal',
  'intermediate_2',
  'weak',
  'intermediate_4',
  'strong',
  'intermediate_6',
  'very_strong',
  'intermediate_8',
  'absolute',
] as const;

export type Descriptor = (typeof DESCRIPTORS)[number];

export type Direction = 'first_over_second' | 'second_over_first';

export const DESCRIPTOR_LABELS: Record<Descriptor, string> = {
  equal: 'Equally important',
  intermediate_2: 'Between equal and weak',
  weak: 'Weakly more important',
  intermediate_4: 'Between weak and strong',
  strong: 'Strongly more important',
  intermediate_6: 'Between strong and very strong',
  very_strong: 'Very strongly more important',
  intermediate_8: 'Between very strong and absolute',
  absolute: 'Absolutely more important',
};
