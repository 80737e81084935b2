/** Wire types for the engine's JSON surface. The client never computes
 * intervals itself; these are read-only mirrors of server payloads. */

export type RelationKind = "alliance" | "conflict";

export interface RelationDoc {
  pair: [string, string];
  relation: RelationKind;
}

/** Concrete alternatives travel as sorted action lists; "symbolic" and
 * {inf, sup} are the other two influence entry forms. */
export type AlternativeDoc = string[];

export type InfluenceEntryDoc =
  | AlternativeDoc
  | "symbolic"
  | { inf: AlternativeDoc; sup: AlternativeDoc };

export type MatrixDoc = Record<string, Record<string, InfluenceEntryDoc>>;

export type IntervalKind = "point" | "free" | "range";

export interface IntervalDoc {
  kind: IntervalKind;
  sup: string;
  inf: string;
  value?: AlternativeDoc;
}

export interface BranchDoc {
  assignments: Record<string, AlternativeDoc>[];
  intervals: Record<string, IntervalDoc>;
}

export interface EquationDoc {
  pos: string;
  neg: string;
}

export interface SessionResultDoc {
  format_version: string;
  universe: string[];
  polynomial: string;
  subjects: string[];
  equations: Record<string, EquationDoc>;
  branches: BranchDoc[];
}

export interface EditDoc {
  action: "remove_subject" | "set_relation";
  subject?: string;
  pair?: [string, string];
  relation?: RelationKind;
}

export type VoteRuleDoc = "unanimity" | { decider: string };

export interface ModeDoc {
  type: "direct" | "vote";
  universe?: string[];
  matrix?: MatrixDoc;
  rule?: VoteRuleDoc;
}

export type StageDoc =
  | { type: "influence"; matrix: MatrixDoc }
  | { type: "structure"; edit: EditDoc; mode?: ModeDoc }
  | { type: "final"; enumeration_bound?: number };

export interface ScenarioDoc {
  format_version: string;
  universe: string[];
  subjects: string[];
  relations: RelationDoc[];
  stages: StageDoc[];
  enumeration_bound?: number;
  parallel_blocks?: [number, number][];
}

export type StageRecordDoc =
  | { type: "choices"; choices: Record<string, AlternativeDoc> }
  | {
      type: "influence";
      session: SessionResultDoc;
      points_of_view: Record<string, InfluenceEntryDoc>;
    }
  | {
      type: "structure";
      edit: EditDoc;
      voted: boolean;
      adopted: boolean;
      vote_session: SessionResultDoc | null;
      graph: { subjects: string[]; relations: RelationDoc[] };
    }
  | { type: "final"; session: SessionResultDoc };

export interface StateDoc {
  format_version: string;
  stage_index: number;
  done: boolean;
  subjects: string[];
  relations: RelationDoc[];
  points_of_view: Record<string, InfluenceEntryDoc>;
  stage_log: StageRecordDoc[];
}

export interface EnvelopeDoc {
  id: string;
  version: number;
  state: StateDoc;
}

export interface ReportDoc {
  format_version: string;
  universe: string[];
  stages: StageRecordDoc[];
  final: SessionResultDoc | null;
  text: string;
}

export interface SessionRequestDoc {
  universe: string[];
  graph: { subjects: string[]; relations: RelationDoc[] };
  matrix: MatrixDoc;
  enumeration_bound?: number;
}

export interface ErrorDoc {
  code: string;
  message: string;
  detail?: unknown;
}
