/**
 * Typed client for the REST API. Every response body, success or error,
 * arrives in the versioned envelope; this is the only module that knows
 * about HTTP.
 */

import type {
  AnalysisDoc,
  Category,
  Difficulty,
  Envelope,
  FeedbackDoc,
  HealthDoc,
  PerformanceItem,
  ProgressDoc,
  RecognizerDoc,
  TherapyDoc,
} from "./types.js";

export interface ApiResult<T> {
  data: T;
  warnings: string[];
}

export class ApiError extends Error {
  constructor(
    public status: number,
    public code: string,
    message: string,
    public warnings: string[] = [],
  ) {
    super(message);
    this.name = "ApiError";
  }

  /** Connection-level failures are worth a retry; 4xx/5xx are not. */
  get retryable(): boolean {
    return this.status === 0;
  }
}

type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

export class ApiClient {
  constructor(
    private readonly baseUrl: string,
    private readonly fetchImpl: FetchLike = (input, init) => fetch(input, init),
  ) {}

  private async request<T>(path: string, init?: RequestInit): Promise<ApiResult<T>> {
    let response: Response;
    try {
      response = await this.fetchImpl(this.baseUrl + path, init);
    } catch (err) {
      throw new ApiError(0, "network-failure", String(err));
    }
    let envelope: Envelope<unknown>;
    try {
      envelope = (await response.json()) as Envelope<unknown>;
    } catch (err) {
      throw new ApiError(response.status, "bad-envelope", `response is not JSON: ${String(err)}`);
    }
    if (envelope === null || typeof envelope !== "object" || envelope.version !== 1) {
      throw new ApiError(response.status, "bad-envelope", "response lacks the v1 envelope");
    }
    const warnings = Array.isArray(envelope.warnings) ? envelope.warnings : [];
    if (!response.ok) {
      const body = envelope.data as { error?: string; message?: string } | null;
      throw new ApiError(
        response.status,
        body?.error ?? "unknown-error",
        body?.message ?? `HTTP ${response.status}`,
        warnings,
      );
    }
    return { data: envelope.data as T, warnings };
  }

  analyzeSample(doc: RecognizerDoc, patientId: string): Promise<ApiResult<AnalysisDoc>> {
    return this.request<AnalysisDoc>(
      `/api/speech-analyze?patient_id=${encodeURIComponent(patientId)}`,
      {
        method: "POST",
        headers: { "content-type": "application/json" },
        body: JSON.stringify(doc),
      },
    );
  }

  analyzeAudio(wav: ArrayBuffer, patientId: string): Promise<ApiResult<AnalysisDoc>> {
    return this.request<AnalysisDoc>(
      `/api/speech-analyze?patient_id=${encodeURIComponent(patientId)}`,
      {
        method: "POST",
        headers: { "content-type": "audio/wav" },
        body: wav,
      },
    );
  }

  getAnalysis(analysisId: string): Promise<ApiResult<AnalysisDoc>> {
    return this.request<AnalysisDoc>(`/api/analysis/${encodeURIComponent(analysisId)}`);
  }

  generateTherapy(
    analysisId: string,
    options: { difficulty?: Difficulty; count?: number } = {},
  ): Promise<ApiResult<TherapyDoc>> {
    return this.request<TherapyDoc>("/api/generate-therapy", {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify({ analysis_id: analysisId, ...options }),
    });
  }

  submitFeedback(
    analysisId: string,
    performance?: PerformanceItem[],
  ): Promise<ApiResult<FeedbackDoc>> {
    const body: Record<string, unknown> = { analysis_id: analysisId };
    if (performance !== undefined) {
      body.performance = performance;
    }
    return this.request<FeedbackDoc>("/api/feedback", {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify(body),
    });
  }

  progress(patientId: string, category?: Category): Promise<ApiResult<ProgressDoc>> {
    const params = new URLSearchParams({ patient_id: patientId });
    if (category) {
      params.set("category", category);
    }
    return this.request<ProgressDoc>(`/api/progress?${params.toString()}`);
  }

  health(): Promise<ApiResult<HealthDoc>> {
    return this.request<HealthDoc>("/api/health");
  }

  /** Absolute URL of a served SVG guide, from its document reference. */
  assetUrl(reference: string): string {
    const name = reference.split("/").pop() ?? reference;
    return `${this.baseUrl}/api/assets/${encodeURIComponent(name)}`;
  }
}
