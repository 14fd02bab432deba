/**
 * Page-flow state. The four pages form a fixed order; pages after
 * recording need an analysis in hand, so deep links without one bounce
 * back to recording.
 */

import type {
  AnalysisDoc,
  FeedbackDoc,
  PerformanceItem,
  ProgressDoc,
  RecognizerDoc,
  TherapyDoc,
} from "./types.js";

export type Page = "recording" | "analysis" | "therapy" | "feedback";

export const PAGE_ORDER: readonly Page[] = ["recording", "analysis", "therapy", "feedback"];

export class ViewState {
  page: Page = "recording";
  patientId: string;
  analysisId: string | null = null;
  /** The submitted recognizer document, when the input was ours to see. */
  input: RecognizerDoc | null = null;
  analysis: AnalysisDoc | null = null;
  therapy: TherapyDoc | null = null;
  feedback: FeedbackDoc | null = null;
  progress: ProgressDoc | null = null;
  /** Outcomes marked but not yet accepted by the server. */
  draftPerformance: PerformanceItem[] | null = null;

  constructor(patientId = "anonymous") {
    this.patientId = patientId;
  }

  /** Navigate, enforcing the flow guard; returns the page actually shown. */
  navigate(target: Page): Page {
    if (target !== "recording" && this.analysisId === null) {
      this.page = "recording";
      return this.page;
    }
    this.page = target;
    return this.page;
  }

  setAnalysis(doc: AnalysisDoc, input: RecognizerDoc | null = null): void {
    this.analysisId = doc.analysis_id;
    this.analysis = doc;
    this.input = input;
    // downstream documents belong to the previous analysis
    this.therapy = null;
    this.feedback = null;
    this.draftPerformance = null;
    this.page = "analysis";
  }

  setTherapy(doc: TherapyDoc): void {
    this.therapy = doc;
    this.page = "therapy";
  }

  setFeedback(doc: FeedbackDoc): void {
    this.feedback = doc;
    this.draftPerformance = null;
    this.page = "feedback";
  }

  /** Kept across failed submissions so nothing typed is lost. */
  saveDraft(performance: PerformanceItem[]): void {
    this.draftPerformance = performance;
  }

  reset(): void {
    this.page = "recording";
    this.analysisId = null;
    this.input = null;
    this.analysis = null;
    this.therapy = null;
    this.feedback = null;
    this.progress = null;
    this.draftPerformance = null;
  }
}
