/**
 * Browser entry point: hash routing plus event wiring. All rendering
 * goes through the view-model functions; this file only glues them to
 * the DOM.
 */

import { ApiClient, ApiError } from "./api.js";
import { SAMPLE_UTTERANCE } from "./demo.js";
import { captureRecording } from "./recorder.js";
import { shapeProblems } from "./shape.js";
import { PAGE_ORDER, ViewState, type Page } from "./state.js";
import type { PerformanceItem } from "./types.js";
import {
  analysisView,
  feedbackView,
  renderAnalysis,
  renderDiagnostic,
  renderFeedback,
  renderRecording,
  renderTherapy,
  therapyView,
} from "./views.js";

const BASE_URL = (window as { PHONOCOACH_API?: string }).PHONOCOACH_API ?? "";
const client = new ApiClient(BASE_URL);
const state = new ViewState();
let banner: string | null = null;
let lastAction: (() => Promise<void>) | null = null;

function root(): HTMLElement {
  return document.getElementById("app")!;
}

function pageFromHash(): Page {
  const name = window.location.hash.replace(/^#\/?/, "");
  return (PAGE_ORDER as readonly string[]).includes(name) ? (name as Page) : "recording";
}

function show(page: Page): void {
  const landed = state.navigate(page);
  if (landed !== page) {
    window.location.hash = `#/${landed}`;
  }
  render();
}

function bannerHtml(): string {
  if (!banner) {
    return "";
  }
  const text = banner.replace(/&/g, "&amp;").replace(/</g, "&lt;");
  return `<div class="banner">${text} <button id="retry">retry</button></div>`;
}

function render(): void {
  const el = root();
  switch (state.page) {
    case "recording":
      el.innerHTML = renderRecording({ bridgeLikely: true, banner });
      wireRecording();
      break;
    case "analysis": {
      const problems = shapeProblems(state.analysis, "analysis");
      if (problems.length) {
        el.innerHTML = renderDiagnostic("analysis", problems);
        return;
      }
      el.innerHTML =
        bannerHtml() +
        renderAnalysis(analysisView(state.analysis!, state.input)) +
        '<button id="to-therapy">practice these sounds</button>';
      wireRetry();
      document.getElementById("to-therapy")!.addEventListener("click", () => {
        void loadTherapy();
      });
      break;
    }
    case "therapy": {
      const problems = shapeProblems(state.therapy, "therapy");
      if (problems.length) {
        el.innerHTML = renderDiagnostic("therapy", problems);
        return;
      }
      el.innerHTML = bannerHtml() + renderTherapy(therapyView(state.therapy!));
      wireRetry();
      wireTherapy();
      break;
    }
    case "feedback": {
      const problems = shapeProblems(state.feedback, "feedback");
      if (problems.length) {
        el.innerHTML = renderDiagnostic("feedback", problems);
        return;
      }
      el.innerHTML = renderFeedback(
        feedbackView(state.feedback!, state.progress),
        (ref) => client.assetUrl(ref),
      );
      break;
    }
  }
}

/** Run an action; on failure stay on the current page and show a banner. */
async function guarded(action: () => Promise<void>): Promise<void> {
  lastAction = action;
  try {
    banner = null;
    await action();
  } catch (err) {
    if (err instanceof ApiError && err.retryable) {
      banner = `Server unreachable: ${err.message}`;
    } else if (err instanceof ApiError && err.code === "invalid-value") {
      banner = "No recognizer bridge is configured; try the bundled sample instead.";
    } else {
      banner = `Request failed: ${err instanceof Error ? err.message : String(err)}`;
    }
    render();
  }
}

function wireRetry(): void {
  document.getElementById("retry")?.addEventListener("click", () => {
    if (lastAction) {
      void guarded(lastAction);
    }
  });
}

async function submitSample(): Promise<void> {
  const result = await client.analyzeSample(SAMPLE_UTTERANCE, state.patientId);
  state.setAnalysis(result.data, SAMPLE_UTTERANCE);
  window.location.hash = "#/analysis";
  render();
}

async function submitAudio(wav: ArrayBuffer): Promise<void> {
  const result = await client.analyzeAudio(wav, state.patientId);
  state.setAnalysis(result.data, null);
  window.location.hash = "#/analysis";
  render();
}

async function loadTherapy(): Promise<void> {
  await guarded(async () => {
    const result = await client.generateTherapy(state.analysisId!);
    state.setTherapy(result.data);
    window.location.hash = "#/therapy";
    render();
  });
}

function collectPerformance(): PerformanceItem[] {
  const items: PerformanceItem[] = [];
  document.querySelectorAll<HTMLElement>(".card").forEach((card) => {
    const exerciseId = card.dataset.exercise!;
    const input = card.querySelector<HTMLInputElement>(".correct")!;
    const exercise = state.therapy!.exercises.find((ex) => ex.exercise_id === exerciseId)!;
    items.push({
      exercise_id: exerciseId,
      targets_attempted: Math.max(1, exercise.target_phonemes.length),
      targets_correct: Number(input.value),
    });
  });
  return items;
}

function wireRecording(): void {
  document.getElementById("use-sample")?.addEventListener("click", () => {
    void guarded(submitSample);
  });
  document.getElementById("record")?.addEventListener("click", () => {
    void guarded(async () => {
      let wav: ArrayBuffer;
      try {
        wav = await captureRecording(3000);
      } catch {
        banner = "Microphone unavailable; try the bundled sample instead.";
        render();
        return;
      }
      await submitAudio(wav);
    });
  });
  document.getElementById("wav-file")?.addEventListener("change", (event) => {
    const file = (event.target as HTMLInputElement).files?.[0];
    if (file) {
      void guarded(async () => submitAudio(await file.arrayBuffer()));
    }
  });
  wireRetry();
}

function wireTherapy(): void {
  document.querySelectorAll<HTMLButtonElement>(".play").forEach((button) => {
    button.addEventListener("click", () => {
      const utterance = new SpeechSynthesisUtterance(button.dataset.say ?? "");
      window.speechSynthesis?.speak(utterance);
    });
  });
  // a failed submission re-renders this page; keep what was typed
  if (state.draftPerformance) {
    for (const item of state.draftPerformance) {
      const card = document.querySelector<HTMLElement>(
        `.card[data-exercise="${item.exercise_id}"]`,
      );
      const input = card?.querySelector<HTMLInputElement>(".correct");
      if (input) {
        input.value = String(item.targets_correct);
      }
    }
  }
  document.getElementById("submit-performance")?.addEventListener("click", () => {
    const performance = state.therapy!.exercises.length ? collectPerformance() : undefined;
    if (performance) {
      state.saveDraft(performance);
    }
    void guarded(async () => {
      const result = await client.submitFeedback(state.analysisId!, performance);
      state.setFeedback(result.data);
      state.progress = (await client.progress(state.patientId)).data;
      window.location.hash = "#/feedback";
      render();
    });
  });
}

window.addEventListener("hashchange", () => show(pageFromHash()));
window.addEventListener("DOMContentLoaded", () => show(pageFromHash()));
