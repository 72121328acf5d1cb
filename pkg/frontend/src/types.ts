// Wire types mirroring the /api/v1 JSON payloads.

export interface TermOut {
  type: "iri" | "literal";
  value: string;
  datatype?: string | null;
}

export interface ProvenanceOut {
  author?: string | null;
  timestamp?: string | null;
  reference?: string | null;
}

export interface CompletenessFlag {
  complete: boolean;
  provenance: ProvenanceOut[];
}

export interface EntityViewOut {
  entity: string;
  facts: Record<string, TermOut[]>;
  completeness: Record<string, CompletenessFlag>;
}

export interface StatementOut {
  id: string;
  subject: string;
  predicate: string;
  provenance: ProvenanceOut[];
}

export interface SearchHit {
  iri: string;
  label?: string | null;
}

export interface WitnessOut {
  instantiation: Record<string, TermOut>;
  missing: string[];
}

export interface QueryResponse {
  answers: Record<string, TermOut>[];
  variables: string[];
  complete?: boolean | null;
  undecided: boolean;
  undecided_reason?: string | null;
  witness?: WitnessOut | null;
  stats?: { steps: number; epg_calls: number; transfer_calls: number; elapsed_ms: number } | null;
}

export interface ProvenanceForm {
  author?: string;
  reference?: string;
}
