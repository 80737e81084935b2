/** Pure view-model builders. Everything here is string and set plumbing
 * over server payloads; no decision math happens client-side. */

import type {
  AlternativeDoc,
  BranchDoc,
  InfluenceEntryDoc,
  IntervalDoc,
  MatrixDoc,
  RelationDoc,
  SessionResultDoc,
  StageDoc,
  StageRecordDoc,
  StateDoc,
} from "./types.js";

export function altText(members: AlternativeDoc, universe: string[]): string {
  if (members.length === 0) return "0";
  if (members.length === universe.length) return "1";
  return `{${members.join(",")}}`;
}

export function entryText(
  entry: InfluenceEntryDoc,
  universe: string[],
): string {
  if (entry === "symbolic") return "symbolic";
  if (Array.isArray(entry)) return altText(entry, universe);
  return `[${altText(entry.inf, universe)}, ${altText(entry.sup, universe)}]`;
}

/** Inverse of entryText for the matrix editor. Accepts "symbolic",
 * "0", "1", "{a,b}", a bare comma list, or "[lo, hi]" with those forms
 * inside. Shape-validates only; the server owns name checking. */
export function parseEntryText(
  text: string,
  universe: string[],
): InfluenceEntryDoc {
  const trimmed = text.trim();
  if (trimmed === "") throw new Error("empty influence entry");
  if (trimmed === "symbolic") return "symbolic";
  if (trimmed.startsWith("[")) {
    if (!trimmed.endsWith("]")) throw new Error(`unclosed interval: ${text}`);
    const inner = trimmed.slice(1, -1);
    const comma = splitTop(inner);
    if (comma.length !== 2) {
      throw new Error(`interval needs two bounds: ${text}`);
    }
    const first = comma[0] ?? "";
    const second = comma[1] ?? "";
    return {
      inf: parseAlternative(first, universe),
      sup: parseAlternative(second, universe),
    };
  }
  return parseAlternative(trimmed, universe);
}

function splitTop(text: string): string[] {
  const parts: string[] = [];
  let depth = 0;
  let current = "";
  for (const ch of text) {
    if (ch === "{") depth += 1;
    if (ch === "}") depth -= 1;
    if (ch === "," && depth === 0) {
      parts.push(current);
      current = "";
    } else {
      current += ch;
    }
  }
  parts.push(current);
  return parts;
}

export function parseAlternative(
  text: string,
  universe: string[],
): AlternativeDoc {
  const trimmed = text.trim();
  if (trimmed === "0") return [];
  if (trimmed === "1") return [...universe];
  let inner = trimmed;
  if (trimmed.startsWith("{")) {
    if (!trimmed.endsWith("}")) throw new Error(`unclosed set: ${text}`);
    inner = trimmed.slice(1, -1);
  }
  if (inner.trim() === "") return [];
  const names = inner.split(",").map((part) => part.trim());
  if (names.some((name) => name === "")) {
    throw new Error(`malformed alternative: ${text}`);
  }
  const seen = new Set(names);
  if (seen.size !== names.length) {
    throw new Error(`duplicate action in: ${text}`);
  }
  return universe.filter((action) => seen.has(action)).concat(
    names.filter((name) => !universe.includes(name)),
  );
}

// -- interval cards ---------------------------------------------------------

export interface IntervalCard {
  subject: string;
  /** untouched server payload; the display fields below are derived from
   * it by concatenation only */
  interval: IntervalDoc;
  headline: string;
  forced: AlternativeDoc | null;
}

/** Multi-term bounds get parens, same as the server's reports. The bound
 * strings are canonical, so " + " can only separate top-level terms. */
function bracket(bound: string): string {
  return bound.includes(" + ") ? `(${bound})` : bound;
}

export function describeInterval(subject: string, doc: IntervalDoc): string {
  if (doc.kind === "point") return `${subject} = ${doc.inf}`;
  if (doc.kind === "free") return `free choice (1 ⊇ ${subject} ⊇ 0)`;
  return `${bracket(doc.sup)} ⊇ ${subject} ⊇ ${bracket(doc.inf)}`;
}

export function intervalCards(
  result: SessionResultDoc,
  branchIndex = 0,
): IntervalCard[] {
  const branch = result.branches[branchIndex];
  if (branch === undefined) {
    throw new Error(`no branch ${branchIndex}`);
  }
  return result.subjects.map((subject) => {
    const interval = branch.intervals[subject];
    if (interval === undefined) throw new Error(`no interval for ${subject}`);
    return {
      subject,
      interval,
      headline: describeInterval(subject, interval),
      forced: interval.value ?? null,
    };
  });
}

/** The record whose session the cards should show: the latest influence
 * or final entry in the stage log. */
export function latestSessionRecord(
  state: StateDoc,
): Extract<StageRecordDoc, { type: "influence" | "final" }> | null {
  for (let i = state.stage_log.length - 1; i >= 0; i -= 1) {
    const record = state.stage_log[i];
    if (record !== undefined && (record.type === "influence" || record.type === "final")) {
      return record;
    }
  }
  return null;
}

// -- graph and matrix views -------------------------------------------------

export interface EdgeView {
  from: string;
  to: string;
  style: "solid" | "dashed";
}

export function graphView(
  subjects: string[],
  relations: RelationDoc[],
): { nodes: string[]; edges: EdgeView[] } {
  return {
    nodes: [...subjects],
    edges: relations.map(({ pair, relation }) => ({
      from: pair[0],
      to: pair[1],
      style: relation === "alliance" ? "solid" : "dashed",
    })),
  };
}

export interface MatrixRowView {
  source: string;
  cells: { target: string; text: string }[];
}

export function matrixGrid(
  subjects: string[],
  matrix: MatrixDoc,
  universe: string[],
): MatrixRowView[] {
  return subjects.map((source) => ({
    source,
    cells: subjects
      .filter((target) => target !== source)
      .map((target) => {
        const entry = matrix[source]?.[target];
        return {
          target,
          text: entry === undefined ? "" : entryText(entry, universe),
        };
      }),
  }));
}

// -- timeline and branches --------------------------------------------------

export interface TimelineEntry {
  index: number;
  label: string;
  status: "done" | "current" | "pending";
}

export function stageLabel(stage: StageDoc): string {
  if (stage.type === "influence") return "influence formation";
  if (stage.type === "final") return "final session";
  const edit = stage.edit;
  const what =
    edit.action === "remove_subject"
      ? `remove ${edit.subject ?? "?"}`
      : `set (${edit.pair?.[0] ?? "?"}, ${edit.pair?.[1] ?? "?"}) = ${edit.relation ?? "?"}`;
  const mode = stage.mode?.type === "vote" ? "vote" : "direct";
  return `structure edit (${mode}): ${what}`;
}

export function stageTimeline(
  stages: StageDoc[],
  state: StateDoc | null,
): TimelineEntry[] {
  const at = state === null ? 0 : state.stage_index;
  const done = state !== null && state.done;
  return stages.map((stage, index) => ({
    index,
    label: stageLabel(stage),
    status: index < at || done ? "done" : index === at ? "current" : "pending",
  }));
}

export function branchLabel(branch: BranchDoc, universe: string[]): string {
  const parts = branch.assignments.map((assignment) => {
    const inner = Object.keys(assignment)
      .sort()
      .map((subject) => {
        const value = assignment[subject];
        return `${subject} = ${altText(value ?? [], universe)}`;
      })
      .join("; ");
    return `{${inner}}`;
  });
  const suffix = parts.length === 1 && parts[0] === "{}" ? "" : ` under ${parts.join(", ")}`;
  return `branch${suffix}`;
}

export function branchOptions(
  result: SessionResultDoc,
): { index: number; label: string }[] {
  return result.branches.map((branch, index) => ({
    index,
    label: `${index + 1}: ${branchLabel(branch, result.universe)}`,
  }));
}

// -- choices ----------------------------------------------------------------

/** Alternatives a subject may commit to, straight from the interval the
 * server reported: every set between inf and sup in binary counting order
 * over the free actions. Pure set expansion of the payload, no solving. */
export function choiceOptions(
  entry: InfluenceEntryDoc,
  universe: string[],
): AlternativeDoc[] {
  if (entry === "symbolic") return [];
  if (Array.isArray(entry)) return [entry];
  const base = new Set(entry.inf);
  const free = entry.sup.filter((action) => !base.has(action));
  const options: AlternativeDoc[] = [];
  for (let bits = 0; bits < 1 << free.length; bits += 1) {
    const members = new Set(base);
    free.forEach((action, index) => {
      if (bits & (1 << index)) members.add(action);
    });
    options.push(universe.filter((action) => members.has(action)));
  }
  return options;
}
