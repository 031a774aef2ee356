/**
 * Typed client for the retrieval service's HTTP API.
 *
 * Every method maps one endpoint; non-2xx responses are raised as
 * ApiError carrying the service's machine-readable error code.
 */

export type Measure = "inner_product" | "cosine" | "jaccard" | "dice";

export interface UploadReceipt {
  doc_id: number;
  term_count: number;
}

export interface SearchHit {
  rank: number;
  doc_id: number;
  name: string;
  classification: string;
  score: number;
}

export interface QueryRun {
  run_id: number;
  created_at: string;
  query: string;
  measure: Measure;
  cosine_mode: "consistent" | "paper_compat";
  threshold: number;
  classifications: string[];
  limit: number | null;
  precision: number;
  results: SearchHit[];
}

export interface JudgmentReceipt {
  run_id: number;
  precision: number;
  recall: number | null;
  judged_count: number;
  retrieved_count: number;
  relevant_retrieved_count: number;
}

export interface CollectionEntry {
  doc_id: number;
  name: string;
  classification: string;
  term_count: number;
}

export interface CollectionPage {
  total: number;
  offset: number;
  limit: number;
  documents: CollectionEntry[];
}

export interface SearchParams {
  query: string;
  measure: Measure;
  classifications?: string[];
  threshold?: number;
  limit?: number;
}

/** A non-2xx response, with the service's error code when it sent one. */
export class ApiError extends Error {
  constructor(
    readonly status: number,
    readonly code: string,
    message: string,
  ) {
    super(message);
    this.name = "ApiError";
  }
}

type FetchLike = typeof fetch;

export class ApiClient {
  constructor(
    private readonly baseUrl: string = "",
    private readonly fetchImpl: FetchLike = fetch,
  ) {}

  async uploadDocument(
    name: string,
    classification: string,
    text: string,
  ): Promise<UploadReceipt> {
    return this.request("POST", "/api/documents", {
      headers: { "content-type": "application/json" },
      body: JSON.stringify({ name, classification, text }),
    });
  }

  async search(params: SearchParams): Promise<QueryRun> {
    const query = new URLSearchParams({ q: params.query, measure: params.measure });
    for (const label of params.classifications ?? []) {
      query.append("class", label);
    }
    if (params.threshold !== undefined) {
      query.set("threshold", String(params.threshold));
    }
    if (params.limit !== undefined) {
      query.set("limit", String(params.limit));
    }
    return this.request("GET", `/api/search?${query}`);
  }

  async judge(
    runId: number,
    docId: number,
    relevant: boolean,
  ): Promise<JudgmentReceipt> {
    return this.request("POST", `/api/runs/${runId}/judgments`, {
      headers: { "content-type": "application/json" },
      body: JSON.stringify({ doc_id: docId, relevant }),
    });
  }

  async collection(
    classification?: string,
    offset = 0,
    limit = 50,
  ): Promise<CollectionPage> {
    const query = new URLSearchParams({ offset: String(offset), limit: String(limit) });
    if (classification) {
      query.set("class", classification);
    }
    return this.request("GET", `/api/collection?${query}`);
  }

  async classifications(): Promise<string[]> {
    const body = await this.request<{ classifications: string[] }>(
      "GET",
      "/api/classifications",
    );
    return body.classifications;
  }

  private async request<T>(
    method: string,
    path: string,
    init: { headers?: Record<string, string>; body?: string } = {},
  ): Promise<T> {
    const response = await this.fetchImpl(this.baseUrl + path, { method, ...init });
    if (response.ok) {
      return (await response.json()) as T;
    }
    let code = `http_${response.status}`;
    let message = `request failed with status ${response.status}`;
    try {
      const body = (await response.json()) as { code?: string; message?: string };
      if (typeof body.code === "string") code = body.code;
      if (typeof body.message === "string") message = body.message;
    } catch {
      // not a JSON error body; keep the generic message
    }
    throw new ApiError(response.status, code, message);
  }
}
