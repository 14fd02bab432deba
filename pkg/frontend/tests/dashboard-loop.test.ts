/**
 * Acceptance: the demo loop against a real server instance. The rendered
 * transcript, flagged phonemes, and headline must match the sample
 * document fields, and the progress chart must gain exactly one point
 * after a single-exercise performance submission.
 */

import { type ChildProcess, spawn } from "node:child_process";
import { mkdtempSync, rmSync, writeFileSync } from "node:fs";
import { tmpdir } from "node:os";
import { join } from "node:path";
import { createInterface } from "node:readline";
import { afterAll, beforeAll, describe, expect, it } from "vitest";

import { ApiClient } from "../src/api.js";
import { progressChart } from "../src/chart.js";
import { SAMPLE_UTTERANCE, runDemoLoop } from "../src/demo.js";
import { ViewState } from "../src/state.js";
import { renderAnalysis, renderFeedback } from "../src/views.js";

let proc: ChildProcess | null = null;
let baseUrl = "";
let workDir = "";

beforeAll(async () => {
  workDir = mkdtempSync(join(tmpdir(), "dashboard-"));
  const configPath = join(workDir, "config.json");
  writeFileSync(configPath, JSON.stringify({ store_path: join(workDir, "store.jsonl") }));
  proc = spawn("python3", ["-m", "phonocoach.cli", "serve", "--config", configPath, "--port", "0"], {
    stdio: ["ignore", "pipe", "pipe"],
  });
  const stderr: string[] = [];
  proc.stderr!.on("data", (chunk) => stderr.push(String(chunk)));
  baseUrl = await new Promise<string>((resolve, reject) => {
    let found = "";
    const lines = createInterface({ input: proc!.stdout! });
    lines.on("line", (line) => {
      if (line.startsWith("listening on ")) {
        found = line.slice("listening on ".length).trim();
      } else if (line.trim() === "ready" && found) {
        resolve(found);
      }
    });
    proc!.on("exit", () => reject(new Error(`server exited early:\n${stderr.join("")}`)));
    setTimeout(() => reject(new Error(`server start timed out:\n${stderr.join("")}`)), 60000);
  });
});

afterAll(async () => {
  if (proc && proc.exitCode === null) {
    proc.kill("SIGINT");
    await new Promise<void>((resolve) => {
      const timer = setTimeout(() => {
        proc!.kill("SIGKILL");
        resolve();
      }, 10000);
      proc!.on("exit", () => {
        clearTimeout(timer);
        resolve();
      });
    });
  }
  if (workDir) {
    rmSync(workDir, { recursive: true, force: true });
  }
});

describe("dashboard loop against a live server", () => {
  it("completes the four-page demo loop with document-true rendering", async () => {
    const client = new ApiClient(baseUrl);
    const state = new ViewState();
    const result = await runDemoLoop(client, state);

    expect(result.pagesVisited).toEqual(["recording", "analysis", "therapy", "feedback"]);

    // analysis page content traces to the document fields
    expect(result.analysis.transcript).toBe(SAMPLE_UTTERANCE.transcript);
    const flagged = result.analysis.bars.filter((bar) => bar.flagged);
    expect(flagged.map((bar) => bar.symbol)).toEqual(["HH", "EH", "L"]);
    expect(flagged.map((bar) => bar.percent)).toEqual(["70.5%", "41.7%", "73.8%"]);
    const analysisHtml = renderAnalysis(result.analysis);
    expect(analysisHtml).toContain("HELLO GOOD MORNING");
    expect(analysisHtml).toContain("70.5%");

    // exercises rendered from the therapy document
    expect(result.therapy.cards.length).toBeGreaterThan(0);
    for (const card of result.therapy.cards) {
      expect(card.sentence.length).toBeGreaterThan(0);
      expect(card.targets.length).toBeGreaterThan(0);
    }

    // feedback headline is the document's overall text
    expect(result.feedback.headline).toBe("Simple practice");
    const feedbackHtml = renderFeedback(result.feedback, (ref) => new ApiClient(baseUrl).assetUrl(ref));
    expect(feedbackHtml).toContain("Simple practice");

    // the loop submitted one outcome per exercise
    expect(result.feedback.chart?.pointCount).toBe(result.therapy.cards.length);
  });

  // The store is content-addressed: one sample, one analysis id, one
  // owning patient. Later tests reuse the same default patient so the
  // repeated submission is the idempotent re-put the server allows.
  it("gains exactly one chart point after a performance submission", async () => {
    const client = new ApiClient(baseUrl);
    const state = new ViewState();
    await runDemoLoop(client, state);
    const before = progressChart((await client.progress(state.patientId)).data);

    const exercise = state.therapy!.exercises[0];
    await client.submitFeedback(state.analysisId!, [
      {
        exercise_id: exercise.exercise_id,
        targets_attempted: Math.max(1, exercise.target_phonemes.length),
        targets_correct: Math.max(1, exercise.target_phonemes.length),
      },
    ]);
    const after = progressChart((await client.progress(state.patientId)).data);
    expect(after.pointCount).toBe(before.pointCount + 1);
  });

  it("visual guide assets referenced by the feedback resolve over HTTP", async () => {
    const client = new ApiClient(baseUrl);
    const state = new ViewState();
    const result = await runDemoLoop(client, state);
    expect(result.feedback.visual.length).toBeGreaterThan(0);
    for (const guide of result.feedback.visual) {
      const resp = await fetch(client.assetUrl(guide.reference));
      expect(resp.status).toBe(200);
      expect(resp.headers.get("content-type")).toContain("svg");
    }
  });
});
