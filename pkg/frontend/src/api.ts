// Thin typed client for the review service. The UI never computes
// statistics itself; everything displayed comes from these calls.

import type {
  AnnotationInput,
  AnnotationRecord,
  ExportDump,
  MetricInfo,
  RankingPage,
  WordDetail,
} from "./types.js";

export class ApiError extends Error {
  constructor(
    public readonly code: string,
    message: string,
    public readonly status: number,
  ) {
    super(message);
  }
}

export class ApiClient {
  constructor(private readonly baseUrl: string = "") {}

  private async request<T>(path: string, init?: RequestInit): Promise<T> {
    let response: Response;
    try {
      response = await fetch(this.baseUrl + path, init);
    } catch (err) {
      throw new ApiError("network", String(err), 0);
    }
    if (!response.ok) {
      let code = "error";
      let message = `${response.status} on ${path}`;
      try {
        const body = await response.json();
        code = body.code ?? code;
        message = body.message ?? message;
      } catch {
        // non-JSON error body; keep the fallback message
      }
      throw new ApiError(code, message, response.status);
    }
    return (await response.json()) as T;
  }

  getMetrics(): Promise<MetricInfo[]> {
    return this.request("/api/metrics");
  }

  getRankingPage(
    metric: string,
    offset: number,
    limit: number,
    annotator?: string,
  ): Promise<RankingPage> {
    const params = new URLSearchParams({ offset: String(offset), limit: String(limit) });
    if (annotator) params.set("annotator", annotator);
    return this.request(`/api/rankings/${encodeURIComponent(metric)}?${params}`);
  }

  getWordDetail(word: string): Promise<WordDetail> {
    return this.request(`/api/words/${encodeURIComponent(word)}`);
  }

  postAnnotation(annotation: AnnotationInput): Promise<AnnotationRecord> {
    return this.request("/api/annotations", {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify(annotation),
    });
  }

  getExport(metric: string): Promise<ExportDump> {
    return this.request(`/api/export/${encodeURIComponent(metric)}`);
  }
}
