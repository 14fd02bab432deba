/**
 * Demo mode: the bundled sample utterance and a driver that walks the
 * whole loop against a live server, exactly as the pages do. No bridge,
 * no microphone, no ML anywhere.
 */

import type { ApiClient } from "./api.js";
import type { ViewState } from "./state.js";
import type { PerformanceItem, RecognizerDoc } from "./types.js";
import {
  analysisView,
  feedbackView,
  therapyView,
  type AnalysisView,
  type FeedbackView,
  type TherapyView,
} from "./views.js";

/** The recognizer output the sample button submits. */
export const SAMPLE_UTTERANCE: RecognizerDoc = {
  transcript: "HELLO GOOD MORNING",
  phonemes: [
    { symbol: "HH", confidence: 0.705, start_ms: 0, end_ms: 80 },
    { symbol: "EH", confidence: 0.417, start_ms: 80, end_ms: 190 },
    { symbol: "L", confidence: 0.738, start_ms: 190, end_ms: 270 },
    { symbol: "OW", confidence: 0.92, start_ms: 270, end_ms: 400 },
    { symbol: "G", confidence: 0.88, start_ms: 430, end_ms: 500 },
    { symbol: "UH", confidence: 0.85, start_ms: 500, end_ms: 580 },
    { symbol: "D", confidence: 0.9, start_ms: 580, end_ms: 640 },
    { symbol: "M", confidence: 0.93, start_ms: 670, end_ms: 740 },
    { symbol: "AO", confidence: 0.89, start_ms: 740, end_ms: 860 },
    { symbol: "R", confidence: 0.86, start_ms: 860, end_ms: 930 },
    { symbol: "N", confidence: 0.91, start_ms: 930, end_ms: 990 },
    { symbol: "IH", confidence: 0.87, start_ms: 990, end_ms: 1060 },
    { symbol: "NG", confidence: 0.9, start_ms: 1060, end_ms: 1150 },
  ],
};

export interface DemoLoopResult {
  analysis: AnalysisView;
  therapy: TherapyView;
  feedback: FeedbackView;
  pagesVisited: string[];
}

/**
 * recording-sample -> analysis -> therapy -> feedback, mutating the
 * state the same way the buttons do. Outcomes: every exercise scored
 * all-targets-correct unless a marker function says otherwise.
 */
export async function runDemoLoop(
  client: ApiClient,
  state: ViewState,
  markCorrect: (targets: number) => number = (n) => n,
): Promise<DemoLoopResult> {
  const pagesVisited: string[] = [state.page];

  const analysisResult = await client.analyzeSample(SAMPLE_UTTERANCE, state.patientId);
  state.setAnalysis(analysisResult.data, SAMPLE_UTTERANCE);
  pagesVisited.push(state.page);

  const therapyResult = await client.generateTherapy(state.analysisId!);
  state.setTherapy(therapyResult.data);
  pagesVisited.push(state.page);

  const performance: PerformanceItem[] = therapyResult.data.exercises.map((ex) => ({
    exercise_id: ex.exercise_id,
    targets_attempted: Math.max(1, ex.target_phonemes.length),
    targets_correct: markCorrect(Math.max(1, ex.target_phonemes.length)),
  }));
  state.saveDraft(performance);
  const feedbackResult = await client.submitFeedback(
    state.analysisId!,
    performance.length ? performance : undefined,
  );
  state.setFeedback(feedbackResult.data);
  pagesVisited.push(state.page);

  const progressResult = await client.progress(state.patientId);
  state.progress = progressResult.data;

  return {
    analysis: analysisView(state.analysis!, state.input),
    therapy: therapyView(state.therapy!),
    feedback: feedbackView(state.feedback!, state.progress),
    pagesVisited,
  };
}
