/**
 * Document shapes, mirrored from the server's published JSON schemas.
 * The dashboard never invents fields: everything rendered comes from
 * one of these documents.
 */

export type Category =
  | "RSound"
  | "SSound"
  | "ThSound"
  | "LSound"
  | "ConsonantCluster"
  | "VowelDistortion";

export type Severity = "mild" | "moderate" | "severe";
export type Difficulty = "easy" | "medium" | "hard";
export type Overall = "Simple practice" | "Focused practice" | "Intensive practice";

export interface Envelope<T> {
  version: 1;
  data: T;
  warnings: string[];
}

export interface ErrorBody {
  error: string;
  message: string;
}

export interface PhonemeEntry {
  symbol: string;
  confidence: number;
  start_ms?: number;
  end_ms?: number;
}

export interface RecognizerDoc {
  transcript: string;
  phonemes: PhonemeEntry[];
}

export interface PhonemeIssue {
  symbol: string;
  confidence: number;
  position: number;
  deficit: number;
}

export interface FlaggedCategory {
  category: Category;
  confidence: number;
}

export interface SpikeSummary {
  spike_density: number;
  pattern_mismatch: number;
}

export interface AnalysisDoc {
  analysis_id: string;
  transcript: string;
  source: "file" | "bridge" | "synthetic";
  phoneme_issues: PhonemeIssue[];
  category_confidences: Partial<Record<Category, number>>;
  flagged: FlaggedCategory[];
  severity: Severity;
  spike_summary: Partial<Record<Category, SpikeSummary>>;
  issue_threshold: number;
  seed: number;
  warnings: string[];
}

export interface ScoreBreakdown {
  relevance: number;
  difficulty_alignment: number;
  personalization: number;
  total: number;
}

export interface Exercise {
  exercise_id: string;
  sentence: string;
  category: Category;
  difficulty: Difficulty;
  target_phonemes: string[];
  score_breakdown: ScoreBreakdown;
  origin: "template" | "generated";
  description: string;
}

export interface TherapyDoc {
  analysis_id: string;
  difficulty: Difficulty;
  exercises: Exercise[];
  note?: string;
}

export interface SpecificGuidance {
  category: Category;
  text: string;
}

export interface VisualGuide {
  category: Category;
  guide_type: "tongue-position" | "sequence-diagram" | "lip-shape";
  description: string;
  reference: string;
}

export type Assessment = "excellent" | "good" | "fair" | "needs-work";

export interface ExerciseFeedback {
  accuracy: Partial<Record<Category, number>>;
  assessment: Partial<Record<Category, Assessment>>;
  improvement_areas: Category[];
  strengths: Category[];
}

export interface FeedbackDoc {
  analysis_id: string;
  specific: SpecificGuidance[];
  general: string[];
  visual: VisualGuide[];
  overall: Overall;
  exercise: ExerciseFeedback | null;
}

export interface ProgressPoint {
  seq: number;
  exercise_id?: string;
  sentence?: string;
  category: Category;
  a_base: number;
  a_c: number;
}

export interface ProgressDoc {
  patient_id: string;
  category?: Category;
  points: ProgressPoint[];
}

export interface PerformanceItem {
  exercise_id: string;
  targets_attempted: number;
  targets_correct: number;
  prior_accuracy?: number;
}

export interface HealthDoc {
  status: string;
  lif_backend: string;
}
