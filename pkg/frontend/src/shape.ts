/**
 * Lightweight structural checks on fetched documents.
 *
 * The server owns the real JSON schemas; the client only verifies that
 * the fields it is about to render exist and have the right primitive
 * type, so a drifted server produces a diagnostic panel instead of
 * "undefined" leaking into the page.
 */

type Kind = "analysis" | "therapy" | "feedback" | "progress";

interface FieldSpec {
  path: string;
  check: (value: unknown) => boolean;
}

const isString = (v: unknown) => typeof v === "string";
const isNumber = (v: unknown) => typeof v === "number" && Number.isFinite(v);
const isArray = (v: unknown) => Array.isArray(v);
const isObject = (v: unknown) => v !== null && typeof v === "object" && !Array.isArray(v);

const SPECS: Record<Kind, FieldSpec[]> = {
  analysis: [
    { path: "analysis_id", check: isString },
    { path: "transcript", check: isString },
    { path: "phoneme_issues", check: isArray },
    { path: "category_confidences", check: isObject },
    { path: "flagged", check: isArray },
    { path: "severity", check: isString },
    { path: "issue_threshold", check: isNumber },
    { path: "warnings", check: isArray },
  ],
  therapy: [
    { path: "analysis_id", check: isString },
    { path: "difficulty", check: isString },
    { path: "exercises", check: isArray },
  ],
  feedback: [
    { path: "analysis_id", check: isString },
    { path: "specific", check: isArray },
    { path: "general", check: isArray },
    { path: "visual", check: isArray },
    { path: "overall", check: isString },
  ],
  progress: [
    { path: "patient_id", check: isString },
    { path: "points", check: isArray },
  ],
};

/** Names of required fields that are missing or mistyped; empty = renderable. */
export function shapeProblems(doc: unknown, kind: Kind): string[] {
  if (!isObject(doc)) {
    return ["<document is not an object>"];
  }
  const record = doc as Record<string, unknown>;
  return SPECS[kind]
    .filter((spec) => !spec.check(record[spec.path]))
    .map((spec) => spec.path);
}
