/** Shared fixtures for the component tests. */

import {
  ApiClient,
  CollectionPage,
  JudgmentReceipt,
  QueryRun,
  SearchHit,
  SearchParams,
  UploadReceipt,
} from "../src/api.js";
import { AppState, initialState } from "../src/state.js";

export function hit(
  rank: number,
  docId: number,
  name: string,
  score: number,
  classification = "general",
): SearchHit {
  return { rank, doc_id: docId, name, classification, score };
}

/** The worked example: a Dice run over the three-document corpus. */
export function goldenRun(): QueryRun {
  return {
    run_id: 1,
    created_at: "2026-08-19T12:00:00+00:00",
    query: "t5 t6 t6 t8",
    measure: "dice",
    cosine_mode: "consistent",
    threshold: 0,
    classifications: [],
    limit: null,
    precision: 0,
    results: [
      hit(1, 2, "D2", 0.6528),
      hit(2, 3, "D3", 0.2998),
      hit(3, 1, "D1", 0.0769),
    ],
  };
}

export function stateWithRun(run: QueryRun = goldenRun()): AppState {
  const state = initialState();
  state.view = "search";
  state.search.queryText = run.query;
  state.search.run = run;
  return state;
}

type JudgeCall = { runId: number; docId: number; relevant: boolean };

/**
 * In-memory ApiClient double.  Records calls; judgments resolve either
 * immediately or under manual control (deferred mode) so tests can hold
 * a request "on the wire".
 */
export class FakeApi extends ApiClient {
  searches: SearchParams[] = [];
  judgeCalls: JudgeCall[] = [];
  uploads: Array<{ name: string; classification: string; text: string }> = [];
  inFlightJudgments = 0;
  maxConcurrentJudgments = 0;

  searchResult: QueryRun = goldenRun();
  judgmentReceipt: JudgmentReceipt = {
    run_id: 1,
    precision: 1 / 3,
    recall: null,
    judged_count: 1,
    retrieved_count: 3,
    relevant_retrieved_count: 1,
  };
  collectionPage: CollectionPage = { total: 0, offset: 0, limit: 20, documents: [] };
  labels: string[] = ["general"];

  deferJudgments = false;
  private pendingJudgments: Array<(receipt: JudgmentReceipt) => void> = [];

  constructor() {
    super("", (() => {
      throw new Error("FakeApi must not touch the network");
    }) as unknown as typeof fetch);
  }

  override async search(params: SearchParams): Promise<QueryRun> {
    this.searches.push(params);
    return structuredClone(this.searchResult);
  }

  override async judge(
    runId: number,
    docId: number,
    relevant: boolean,
  ): Promise<JudgmentReceipt> {
    this.judgeCalls.push({ runId, docId, relevant });
    this.inFlightJudgments += 1;
    this.maxConcurrentJudgments = Math.max(
      this.maxConcurrentJudgments,
      this.inFlightJudgments,
    );
    try {
      if (this.deferJudgments) {
        return await new Promise((resolve) => this.pendingJudgments.push(resolve));
      }
      return structuredClone(this.judgmentReceipt);
    } finally {
      if (!this.deferJudgments) {
        this.inFlightJudgments -= 1;
      }
    }
  }

  /** Resolve the oldest held judgment request. */
  releaseJudgment(receipt: JudgmentReceipt = this.judgmentReceipt): void {
    const resolve = this.pendingJudgments.shift();
    if (!resolve) {
      throw new Error("no judgment request is pending");
    }
    this.inFlightJudgments -= 1;
    resolve(structuredClone(receipt));
  }

  get pendingJudgmentCount(): number {
    return this.pendingJudgments.length;
  }

  override async uploadDocument(
    name: string,
    classification: string,
    text: string,
  ): Promise<UploadReceipt> {
    this.uploads.push({ name, classification, text });
    return { doc_id: this.uploads.length, term_count: 4 };
  }

  override async collection(): Promise<CollectionPage> {
    return structuredClone(this.collectionPage);
  }

  override async classifications(): Promise<string[]> {
    return [...this.labels];
  }
}

/** Flush the microtask queue so controller promises settle. */
export async function settle(): Promise<void> {
  for (let i = 0; i < 10; i += 1) {
    await Promise.resolve();
  }
}
