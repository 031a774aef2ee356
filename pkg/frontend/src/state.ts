/**
 * Application state and the controller that mutates it.
 *
 * Views are pure functions of this state; the controller applies user
 * intents, talks to the API, and invokes a render callback after every
 * observable change.  Relevance judgments are serialized per result row:
 * while a verdict is on the wire, further toggles for that row are
 * coalesced into a single follow-up request.
 */

import {
  ApiClient,
  ApiError,
  CollectionPage,
  JudgmentReceipt,
  Measure,
  QueryRun,
  UploadReceipt,
} from "./api.js";

export type View = "home" | "search" | "upload" | "collection" | "about";

export interface JudgmentCell {
  /** Last verdict shown for the row; null until the row is judged. */
  verdict: boolean | null;
  /** True while a judgment request for this row is on the wire. */
  inFlight: boolean;
  /** Verdict requested while in flight, sent when the wire frees up. */
  queued: boolean | null;
}

export interface SearchState {
  queryText: string;
  measure: Measure;
  threshold: string;
  limit: string;
  selectedClasses: string[];
  searching: boolean;
  run: QueryRun | null;
  judgments: Record<number, JudgmentCell>;
  feedback: JudgmentReceipt | null;
  error: string | null;
}

export interface UploadState {
  name: string;
  classification: string;
  text: string;
  submitting: boolean;
  receipt: (UploadReceipt & { name: string }) | null;
  error: string | null;
}

export interface CollectionState {
  page: CollectionPage | null;
  classFilter: string;
  offset: number;
  pageSize: number;
  loading: boolean;
  error: string | null;
}

export interface AppState {
  view: View;
  classifications: string[];
  search: SearchState;
  upload: UploadState;
  collection: CollectionState;
}

export function initialState(): AppState {
  return {
    view: "home",
    classifications: [],
    search: {
      queryText: "",
      measure: "cosine",
      threshold: "",
      limit: "",
      selectedClasses: [],
      searching: false,
      run: null,
      judgments: {},
      feedback: null,
      error: null,
    },
    upload: {
      name: "",
      classification: "",
      text: "",
      submitting: false,
      receipt: null,
      error: null,
    },
    collection: {
      page: null,
      classFilter: "",
      offset: 0,
      pageSize: 20,
      loading: false,
      error: null,
    },
  };
}

function describe(error: unknown): string {
  if (error instanceof ApiError) {
    return error.message;
  }
  return error instanceof Error ? error.message : String(error);
}

export class Controller {
  readonly state: AppState;

  constructor(
    private readonly api: ApiClient,
    private readonly notify: (state: AppState) => void,
    state: AppState = initialState(),
  ) {
    this.state = state;
  }

  private render(): void {
    this.notify(this.state);
  }

  // -- navigation and shared data ---------------------------------------

  showView(view: View): void {
    this.state.view = view;
    this.render();
    if (view === "collection") {
      void this.loadCollection();
    }
    if (view === "search" || view === "upload") {
      void this.refreshClassifications();
    }
  }

  async refreshClassifications(): Promise<void> {
    try {
      this.state.classifications = await this.api.classifications();
      this.render();
    } catch {
      // labels are a convenience; leave the last known list in place
    }
  }

  // -- search and relevance feedback ------------------------------------

  setQueryText(text: string): void {
    this.state.search.queryText = text;
  }

  setMeasure(measure: Measure): void {
    this.state.search.measure = measure;
  }

  setThreshold(raw: string): void {
    this.state.search.threshold = raw;
  }

  setLimit(raw: string): void {
    this.state.search.limit = raw;
  }

  toggleClassFilter(label: string): void {
    const selected = this.state.search.selectedClasses;
    const at = selected.indexOf(label);
    if (at >= 0) {
      selected.splice(at, 1);
    } else {
      selected.push(label);
    }
    this.render();
  }

  async runSearch(): Promise<void> {
    const search = this.state.search;
    if (!search.queryText.trim() || search.searching) {
      return;
    }
    search.searching = true;
    search.error = null;
    this.render();
    try {
      search.run = await this.api.search({
        query: search.queryText,
        measure: search.measure,
        classifications: search.selectedClasses,
        threshold: search.threshold === "" ? undefined : Number(search.threshold),
        limit: search.limit === "" ? undefined : Number(search.limit),
      });
      search.judgments = {};
      search.feedback = null;
    } catch (error) {
      search.run = null;
      search.error = describe(error);
    } finally {
      search.searching = false;
      this.render();
    }
  }

  /** Flip a result row's verdict: unjudged rows become relevant. */
  toggleJudgment(docId: number): void {
    const cell = this.judgmentCell(docId);
    const shown = cell.inFlight && cell.queued !== null ? cell.queued : cell.verdict;
    void this.setJudgment(docId, !(shown ?? false));
  }

  async setJudgment(docId: number, relevant: boolean): Promise<void> {
    const search = this.state.search;
    const run = search.run;
    if (!run) {
      return;
    }
    const cell = this.judgmentCell(docId);
    if (cell.inFlight) {
      cell.queued = relevant;
      this.render();
      return;
    }
    cell.inFlight = true;
    let next: boolean | null = relevant;
    try {
      while (next !== null) {
        const sending: boolean = next;
        cell.verdict = sending;
        this.render();
        search.feedback = await this.api.judge(run.run_id, docId, sending);
        next = cell.queued !== null && cell.queued !== sending ? cell.queued : null;
        cell.queued = null;
      }
    } catch (error) {
      search.error = describe(error);
    } finally {
      cell.inFlight = false;
      this.render();
    }
  }

  private judgmentCell(docId: number): JudgmentCell {
    let cell = this.state.search.judgments[docId];
    if (!cell) {
      cell = { verdict: null, inFlight: false, queued: null };
      this.state.search.judgments[docId] = cell;
    }
    return cell;
  }

  // -- upload -------------------------------------------------------------

  setUploadField(field: "name" | "classification" | "text", value: string): void {
    this.state.upload[field] = value;
  }

  uploadReady(): boolean {
    const upload = this.state.upload;
    return (
      upload.name.trim() !== "" &&
      upload.classification.trim() !== "" &&
      !upload.submitting
    );
  }

  async submitUpload(): Promise<void> {
    if (!this.uploadReady()) {
      this.render();
      return;
    }
    const upload = this.state.upload;
    upload.submitting = true;
    upload.error = null;
    this.render();
    try {
      const receipt = await this.api.uploadDocument(
        upload.name.trim(),
        upload.classification.trim(),
        upload.text,
      );
      upload.receipt = { ...receipt, name: upload.name.trim() };
      upload.name = "";
      upload.text = "";
    } catch (error) {
      upload.error = describe(error);
    } finally {
      upload.submitting = false;
      this.render();
    }
    void this.refreshClassifications();
  }

  // -- collection browsing ------------------------------------------------

  setClassFilter(label: string): void {
    this.state.collection.classFilter = label;
    this.state.collection.offset = 0;
    void this.loadCollection();
  }

  turnPage(delta: number): void {
    const collection = this.state.collection;
    const next = collection.offset + delta * collection.pageSize;
    collection.offset = Math.max(0, next);
    void this.loadCollection();
  }

  async loadCollection(): Promise<void> {
    const collection = this.state.collection;
    collection.loading = true;
    collection.error = null;
    this.render();
    try {
      collection.page = await this.api.collection(
        collection.classFilter || undefined,
        collection.offset,
        collection.pageSize,
      );
      this.state.classifications = await this.api.classifications();
    } catch (error) {
      collection.error = describe(error);
    } finally {
      collection.loading = false;
      this.render();
    }
  }
}
