import { describe, expect, it } from "vitest";

import { SAMPLE_UTTERANCE } from "../src/demo.js";
import { shapeProblems } from "../src/shape.js";
import type { AnalysisDoc, TherapyDoc } from "../src/types.js";
import {
  analysisView,
  escapeHtml,
  feedbackView,
  renderAnalysis,
  renderDiagnostic,
  renderFeedback,
  renderTherapy,
  therapyView,
} from "../src/views.js";
import { FIXTURE_ANALYSIS, FIXTURE_FEEDBACK, FIXTURE_THERAPY } from "./fixtures.js";

const NO_ISSUES: AnalysisDoc = {
  ...FIXTURE_ANALYSIS,
  phoneme_issues: [],
  flagged: [],
  category_confidences: {},
  spike_summary: {},
  warnings: [],
};

describe("analysis view", () => {
  it("shows one bar per input phoneme with issues highlighted", () => {
    const view = analysisView(FIXTURE_ANALYSIS, SAMPLE_UTTERANCE);
    expect(view.transcript).toBe("HELLO GOOD MORNING");
    expect(view.bars).toHaveLength(13);
    const flagged = view.bars.filter((bar) => bar.flagged);
    expect(flagged.map((bar) => bar.symbol)).toEqual(["HH", "EH", "L"]);
    expect(flagged.map((bar) => bar.percent)).toEqual(["70.5%", "41.7%", "73.8%"]);
    const ow = view.bars[3];
    expect(ow.symbol).toBe("OW");
    expect(ow.flagged).toBe(false);
    expect(ow.percent).toBe("92.0%");
  });

  it("falls back to issue-only bars without the input document", () => {
    const view = analysisView(FIXTURE_ANALYSIS);
    expect(view.bars).toHaveLength(3);
    expect(view.bars.every((bar) => bar.flagged)).toBe(true);
  });

  it("reports the no-issues state", () => {
    const view = analysisView(NO_ISSUES, SAMPLE_UTTERANCE);
    expect(view.noIssues).toBe(true);
    expect(view.summary).toBe("no issues detected");
    expect(renderAnalysis(view)).toContain("no issues detected");
  });

  it("renders transcript, severity badge, and warnings", () => {
    const html = renderAnalysis(analysisView(FIXTURE_ANALYSIS, SAMPLE_UTTERANCE));
    expect(html).toContain("HELLO GOOD MORNING");
    expect(html).toContain(`badge-${FIXTURE_ANALYSIS.severity}`);
    for (const warning of FIXTURE_ANALYSIS.warnings) {
      expect(html).toContain(escapeHtml(warning));
    }
  });

  it("every rendered percentage traces to a document confidence", () => {
    const view = analysisView(FIXTURE_ANALYSIS, SAMPLE_UTTERANCE);
    for (const [index, bar] of view.bars.entries()) {
      const source = SAMPLE_UTTERANCE.phonemes[index].confidence;
      expect(bar.percent).toBe(`${(source * 100).toFixed(1)}%`);
    }
  });
});

describe("therapy view", () => {
  it("builds one card per exercise", () => {
    const view = therapyView(FIXTURE_THERAPY);
    expect(view.difficulty).toBe(FIXTURE_THERAPY.difficulty);
    expect(view.cards).toHaveLength(FIXTURE_THERAPY.exercises.length);
    expect(view.cards[0].sentence).toBe(FIXTURE_THERAPY.exercises[0].sentence);
    expect(view.cards[0].exemplarText).toBe(FIXTURE_THERAPY.exercises[0].sentence);
    const html = renderTherapy(view);
    for (const exercise of FIXTURE_THERAPY.exercises) {
      expect(html).toContain(escapeHtml(exercise.sentence));
      expect(html).toContain(exercise.exercise_id);
    }
    expect(html).toContain("submit-performance");
  });

  it("shows the congratulatory empty state", () => {
    const empty: TherapyDoc = {
      analysis_id: FIXTURE_THERAPY.analysis_id,
      difficulty: "easy",
      exercises: [],
      note: "no flagged categories; nothing to practice",
    };
    const view = therapyView(empty);
    expect(view.empty).toBe(true);
    expect(renderTherapy(view)).toContain("Well done");
  });
});

describe("feedback view", () => {
  it("uses the document overall text as the headline", () => {
    const view = feedbackView(FIXTURE_FEEDBACK);
    expect(view.headline).toBe("Simple practice");
    expect(view.accuracyLabels).toEqual([]);
    const html = renderFeedback(view, (ref) => `/api/assets/${ref.split("/").pop()}`);
    expect(html).toContain("Simple practice");
    for (const guide of FIXTURE_FEEDBACK.visual) {
      expect(html).toContain(guide.category);
    }
  });

  it("labels per-category accuracy when exercise feedback exists", () => {
    const withExercise = {
      ...FIXTURE_FEEDBACK,
      exercise: {
        accuracy: { LSound: 0.75 },
        assessment: { LSound: "good" as const },
        improvement_areas: [],
        strengths: ["LSound" as const],
      },
    };
    const view = feedbackView(withExercise);
    expect(view.accuracyLabels).toEqual([
      { category: "LSound", accuracy: "75.0%", assessment: "good" },
    ]);
    expect(renderFeedback(view, (r) => r)).toContain("LSound: 75.0% (good)");
  });

  it("includes the progress chart when a progress document is given", () => {
    const progress = {
      patient_id: "p",
      points: [
        { seq: 1, category: "LSound" as const, a_base: 0.5, a_c: 0.5 },
        { seq: 2, category: "LSound" as const, a_base: 0.75, a_c: 0.8 },
      ],
    };
    const view = feedbackView(FIXTURE_FEEDBACK, progress);
    expect(view.chart?.pointCount).toBe(2);
    const html = renderFeedback(view, (r) => r);
    expect(html).toContain('data-points="2"');
  });
});

describe("diagnostics", () => {
  it("accepts well-formed documents", () => {
    expect(shapeProblems(FIXTURE_ANALYSIS, "analysis")).toEqual([]);
    expect(shapeProblems(FIXTURE_THERAPY, "therapy")).toEqual([]);
    expect(shapeProblems(FIXTURE_FEEDBACK, "feedback")).toEqual([]);
  });

  it("lists missing and mistyped fields", () => {
    const broken: Record<string, unknown> = { ...FIXTURE_ANALYSIS };
    delete broken.transcript;
    broken.flagged = "oops";
    expect(shapeProblems(broken, "analysis")).toEqual(["transcript", "flagged"]);
    expect(shapeProblems(null, "analysis")).toEqual(["<document is not an object>"]);
  });

  it("renders a diagnostic panel", () => {
    const html = renderDiagnostic("analysis", ["transcript"]);
    expect(html).toContain("Document mismatch");
    expect(html).toContain("transcript");
  });
});

describe("escapeHtml", () => {
  it("escapes markup metacharacters", () => {
    expect(escapeHtml('<b a="1">&</b>')).toBe("&lt;b a=&quot;1&quot;&gt;&amp;&lt;/b&gt;");
  });
});
