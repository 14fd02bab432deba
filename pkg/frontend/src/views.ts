/**
 * View models and their HTML renderings.
 *
 * Every number shown on a page is computed here, directly from a fetched
 * document field; the render functions only turn view models into markup.
 */

import { progressChart, type ChartGeometry } from "./chart.js";
import type {
  AnalysisDoc,
  Assessment,
  Category,
  Difficulty,
  Exercise,
  FeedbackDoc,
  Overall,
  ProgressDoc,
  RecognizerDoc,
  Severity,
  TherapyDoc,
  VisualGuide,
} from "./types.js";

export function escapeHtml(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}

function pct(value: number): string {
  return `${(value * 100).toFixed(1)}%`;
}

// --- analysis ---------------------------------------------------------

export interface ConfidenceBar {
  symbol: string;
  percent: string;
  confidence: number;
  flagged: boolean;
}

export interface AnalysisView {
  transcript: string;
  bars: ConfidenceBar[];
  categories: { category: Category; confidence: number }[];
  severity: Severity;
  summary: string;
  noIssues: boolean;
  warnings: string[];
}

/**
 * Bars cover the full utterance when the submitted recognizer document
 * is available (sample mode); otherwise only the flagged phonemes, which
 * are the fields the analysis document itself carries.
 */
export function analysisView(doc: AnalysisDoc, input: RecognizerDoc | null = null): AnalysisView {
  const flaggedPositions = new Set(doc.phoneme_issues.map((issue) => issue.position));
  const bars: ConfidenceBar[] = input
    ? input.phonemes.map((entry, position) => ({
        symbol: entry.symbol,
        percent: pct(entry.confidence),
        confidence: entry.confidence,
        flagged: flaggedPositions.has(position),
      }))
    : doc.phoneme_issues.map((issue) => ({
        symbol: issue.symbol,
        percent: pct(issue.confidence),
        confidence: issue.confidence,
        flagged: true,
      }));
  const categories = doc.flagged.map((f) => ({
    category: f.category,
    confidence: f.confidence,
  }));
  const summary =
    doc.phoneme_issues.length === 0
      ? "no issues detected"
      : `${doc.phoneme_issues.length} phoneme issue(s) across ` +
        `${doc.flagged.length} flagged sound categor(ies); severity ${doc.severity}`;
  return {
    transcript: doc.transcript,
    bars,
    categories,
    severity: doc.severity,
    summary,
    noIssues: doc.phoneme_issues.length === 0,
    warnings: doc.warnings,
  };
}

export function renderAnalysis(view: AnalysisView): string {
  const bars = view.bars
    .map(
      (bar) => `
    <div class="bar${bar.flagged ? " flagged" : ""}" data-symbol="${escapeHtml(bar.symbol)}">
      <span class="sym">${escapeHtml(bar.symbol)}</span>
      <span class="track"><span class="fill" style="width:${(bar.confidence * 100).toFixed(1)}%"></span></span>
      <span class="pct">${bar.percent}</span>
    </div>`,
    )
    .join("");
  const categories = view.categories
    .map(
      (c) =>
        `<li data-category="${c.category}">${escapeHtml(c.category)}: ${c.confidence.toFixed(3)}</li>`,
    )
    .join("");
  const warnings = view.warnings.map((w) => `<li>${escapeHtml(w)}</li>`).join("");
  return `
  <section class="analysis">
    <h2>Analysis</h2>
    <p class="transcript">${escapeHtml(view.transcript)}</p>
    ${view.noIssues ? '<p class="no-issues">no issues detected</p>' : ""}
    <div class="bars">${bars}</div>
    <ul class="categories">${categories}</ul>
    <p class="severity badge-${view.severity}">severity: ${view.severity}</p>
    <p class="summary">${escapeHtml(view.summary)}</p>
    ${warnings ? `<ul class="warnings">${warnings}</ul>` : ""}
  </section>`;
}

export function renderDiagnostic(kind: string, problems: string[]): string {
  const items = problems.map((p) => `<li>${escapeHtml(p)}</li>`).join("");
  return `
  <section class="diagnostic">
    <h2>Document mismatch</h2>
    <p>The ${escapeHtml(kind)} document is missing fields this page needs:</p>
    <ul>${items}</ul>
  </section>`;
}

// --- therapy -----------------------------------------------------------

export interface ExerciseCard {
  exerciseId: string;
  sentence: string;
  description: string;
  targets: string[];
  category: Category;
  difficulty: Difficulty;
  origin: "template" | "generated";
  /** Spoken exemplar: the sentence itself, for the page's TTS button. */
  exemplarText: string;
}

export interface TherapyView {
  difficulty: Difficulty;
  cards: ExerciseCard[];
  note: string | null;
  empty: boolean;
}

export function therapyView(doc: TherapyDoc): TherapyView {
  const cards = doc.exercises.map((ex: Exercise) => ({
    exerciseId: ex.exercise_id,
    sentence: ex.sentence,
    description: ex.description,
    targets: ex.target_phonemes,
    category: ex.category,
    difficulty: ex.difficulty,
    origin: ex.origin,
    exemplarText: ex.sentence,
  }));
  return {
    difficulty: doc.difficulty,
    cards,
    note: doc.note ?? null,
    empty: cards.length === 0,
  };
}

export function renderTherapy(view: TherapyView): string {
  if (view.empty) {
    return `
  <section class="therapy">
    <h2>Exercises</h2>
    <p class="empty">Nothing to practice: no sound categories were flagged. Well done!</p>
  </section>`;
  }
  const cards = view.cards
    .map(
      (card) => `
    <article class="card" data-exercise="${card.exerciseId}">
      <p class="sentence">${escapeHtml(card.sentence)}</p>
      <p class="description">${escapeHtml(card.description)}</p>
      <p class="targets">targets: ${card.targets.map(escapeHtml).join(", ")}</p>
      <p class="meta">${card.category} / ${card.difficulty} / ${card.origin}</p>
      <button class="play" data-say="${escapeHtml(card.exemplarText)}">play example</button>
      <label>correct targets
        <input type="number" class="correct" min="0" max="${card.targets.length}" value="0">
      </label>
    </article>`,
    )
    .join("");
  return `
  <section class="therapy">
    <h2>Exercises (${view.difficulty})</h2>
    ${view.note ? `<p class="note">${escapeHtml(view.note)}</p>` : ""}
    <div class="cards">${cards}</div>
    <button id="submit-performance">submit results</button>
  </section>`;
}

// --- feedback ----------------------------------------------------------

export interface FeedbackView {
  headline: Overall;
  specific: { category: Category; text: string }[];
  general: string[];
  visual: VisualGuide[];
  accuracyLabels: { category: Category; accuracy: string; assessment: Assessment }[];
  chart: ChartGeometry | null;
}

export function feedbackView(doc: FeedbackDoc, progress: ProgressDoc | null = null): FeedbackView {
  const accuracyLabels = doc.exercise
    ? Object.entries(doc.exercise.accuracy).map(([category, accuracy]) => ({
        category: category as Category,
        accuracy: pct(accuracy as number),
        assessment: (doc.exercise!.assessment[category as Category] ?? "fair") as Assessment,
      }))
    : [];
  return {
    headline: doc.overall,
    specific: doc.specific,
    general: doc.general,
    visual: doc.visual,
    accuracyLabels,
    chart: progress ? progressChart(progress) : null,
  };
}

function renderChart(chart: ChartGeometry): string {
  const series = chart.series
    .map(
      (s) => `
      <g class="series" data-category="${s.category}">
        ${s.path ? `<path d="${s.path}" fill="none"></path>` : ""}
        ${s.points
          .map((p) => `<circle cx="${p.x.toFixed(1)}" cy="${p.y.toFixed(1)}" r="3"></circle>`)
          .join("")}
      </g>`,
    )
    .join("");
  return `
    <svg class="progress-chart" viewBox="0 0 ${chart.width} ${chart.height}"
         data-points="${chart.pointCount}" role="img" aria-label="progress chart">
      ${series}
    </svg>`;
}

export function renderFeedback(view: FeedbackView, assetUrl: (ref: string) => string): string {
  const specific = view.specific
    .map((g) => `<li data-category="${g.category}">${escapeHtml(g.text)}</li>`)
    .join("");
  const general = view.general.map((tip) => `<li>${escapeHtml(tip)}</li>`).join("");
  const visual = view.visual
    .map(
      (guide) => `
      <figure data-category="${guide.category}">
        <img src="${escapeHtml(assetUrl(guide.reference))}" alt="${escapeHtml(guide.guide_type)}">
        <figcaption>${escapeHtml(guide.description)}</figcaption>
      </figure>`,
    )
    .join("");
  const accuracy = view.accuracyLabels
    .map(
      (label) =>
        `<li data-category="${label.category}">${label.category}: ${label.accuracy} (${label.assessment})</li>`,
    )
    .join("");
  return `
  <section class="feedback">
    <h2 class="overall">${escapeHtml(view.headline)}</h2>
    <ol class="specific">${specific}</ol>
    <ul class="general">${general}</ul>
    <div class="visual">${visual}</div>
    ${accuracy ? `<ul class="accuracy">${accuracy}</ul>` : ""}
    ${view.chart ? renderChart(view.chart) : ""}
  </section>`;
}

// --- recording ---------------------------------------------------------

export function renderRecording(options: { bridgeLikely: boolean; banner: string | null }): string {
  return `
  <section class="recording">
    <h2>Record</h2>
    ${options.banner ? `<div class="banner">${escapeHtml(options.banner)} <button id="retry">retry</button></div>` : ""}
    <button id="record" ${options.bridgeLikely ? "" : "disabled"}>record from microphone</button>
    <button id="use-sample">use bundled sample</button>
    <input type="file" id="wav-file" accept="audio/wav">
  </section>`;
}
