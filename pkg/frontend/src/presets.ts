/** Demo scenario documents. These mirror the engine repo's fixtures so the
 * console can exercise known flows without any authoring. */

import type {
  MatrixDoc,
  RelationDoc,
  ScenarioDoc,
  SessionRequestDoc,
} from "./types.js";

const FOUR_SUBJECTS = ["a", "b", "c", "d"];

const FOUR_RELATIONS: RelationDoc[] = [
  { pair: ["a", "b"], relation: "alliance" },
  { pair: ["a", "c"], relation: "conflict" },
  { pair: ["a", "d"], relation: "alliance" },
  { pair: ["b", "c"], relation: "conflict" },
  { pair: ["b", "d"], relation: "alliance" },
  { pair: ["c", "d"], relation: "conflict" },
];

const INITIAL_VIEWS: MatrixDoc = {
  a: { b: ["α"], c: ["α"], d: ["α"] },
  b: { a: ["α"], c: ["α"], d: ["α"] },
  c: { a: ["β"], b: ["β"], d: ["β"] },
  d: { a: ["γ"], b: ["γ"], c: ["γ"] },
};

const EXCLUSION_BALLOT: MatrixDoc = {
  a: { b: "symbolic", c: "symbolic", d: "symbolic" },
  b: { a: "symbolic", c: "symbolic", d: "symbolic" },
  c: { a: ["exclude_d"], b: ["exclude_d"], d: ["exclude_d"] },
  d: { a: "symbolic", b: "symbolic", c: "symbolic" },
};

export const twoStagePreset: ScenarioDoc = {
  format_version: "1",
  universe: ["α", "β", "γ"],
  subjects: FOUR_SUBJECTS,
  relations: FOUR_RELATIONS,
  stages: [
    { type: "influence", matrix: INITIAL_VIEWS },
    { type: "final", enumeration_bound: 4 },
  ],
  enumeration_bound: 4,
};

export const exclusionVotePreset: ScenarioDoc = {
  format_version: "1",
  universe: ["α", "β", "γ"],
  subjects: FOUR_SUBJECTS,
  relations: FOUR_RELATIONS,
  stages: [
    { type: "influence", matrix: INITIAL_VIEWS },
    {
      type: "structure",
      edit: { action: "remove_subject", subject: "d" },
      mode: {
        type: "vote",
        universe: ["exclude_d"],
        matrix: EXCLUSION_BALLOT,
        rule: "unanimity",
      },
    },
    { type: "final", enumeration_bound: 4 },
  ],
  enumeration_bound: 4,
};

export const multistagePreset: ScenarioDoc = exclusionVotePreset;

/** One-shot ballot session for the solve panel: the chair exerts the full
 * alternative, everyone else stays symbolic. */
export const ballotSessionPreset: SessionRequestDoc = {
  universe: ["exclude_d"],
  graph: { subjects: FOUR_SUBJECTS, relations: FOUR_RELATIONS },
  matrix: EXCLUSION_BALLOT,
  enumeration_bound: 4,
};

export const presets: { name: string; doc: ScenarioDoc }[] = [
  { name: "two-stage group of four", doc: twoStagePreset },
  { name: "exclusion vote, three stages", doc: exclusionVotePreset },
];
