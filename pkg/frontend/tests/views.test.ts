import { describe, expect, it } from "vitest";

import { initialState } from "../src/state.js";
import {
  esc,
  formatScore,
  renderApp,
  renderCollectionView,
  renderSearchView,
  renderUploadView,
} from "../src/views.js";
import { goldenRun, hit, stateWithRun } from "./helpers.js";

describe("search view", () => {
  it("renders the Dice worked example in rank order with 3-decimal scores", () => {
    const html = renderSearchView(stateWithRun());
    const d2 = html.indexOf("D2");
    const d3 = html.indexOf("D3");
    const d1 = html.indexOf("D1");
    expect(d2).toBeGreaterThan(-1);
    expect(d2).toBeLessThan(d3);
    expect(d3).toBeLessThan(d1);
    expect(html).toContain("0.653");
    expect(html).toContain("0.300");
    expect(html).toContain("0.077");
    expect(html).toContain("3 documents retrieved (run 1)");
  });

  it("gives each result row a judgment checkbox tagged with its doc id", () => {
    const html = renderSearchView(stateWithRun());
    expect(html.match(/data-action="toggle-judgment"/g)).toHaveLength(3);
    for (const docId of [1, 2, 3]) {
      expect(html).toContain(`data-doc="${docId}"`);
    }
  });

  it("shows precision from the judgment receipt", () => {
    const state = stateWithRun();
    state.search.feedback = {
      run_id: 1,
      precision: 1 / 3,
      recall: null,
      judged_count: 1,
      retrieved_count: 3,
      relevant_retrieved_count: 1,
    };
    const html = renderSearchView(state);
    expect(html).toContain("Precision <strong>0.333</strong>");
    expect(html).toContain("1 of 3");
    expect(html).not.toContain("recall");
  });

  it("includes recall when the receipt carries one", () => {
    const state = stateWithRun();
    state.search.feedback = {
      run_id: 1,
      precision: 0.5,
      recall: 0.25,
      judged_count: 2,
      retrieved_count: 4,
      relevant_retrieved_count: 2,
    };
    expect(renderSearchView(state)).toContain("recall 0.250");
  });

  it("reflects a checked verdict and disables the box while on the wire", () => {
    const state = stateWithRun();
    state.search.judgments[2] = { verdict: true, inFlight: true, queued: null };
    const html = renderSearchView(state);
    const row = html.slice(html.indexOf('data-doc="2"') - 400, html.indexOf('data-doc="2"') + 100);
    expect(row).toContain("checked");
    expect(row).toContain("disabled");
  });

  it("renders an empty run as a note, not a table", () => {
    const run = goldenRun();
    run.results = [];
    run.run_id = 7;
    const html = renderSearchView(stateWithRun(run));
    expect(html).toContain("No documents scored above the threshold (run 7)");
    expect(html).not.toContain("<table");
  });

  it("uses the singular for a one-document result list", () => {
    const run = goldenRun();
    run.results = [hit(1, 2, "D2", 0.6528)];
    expect(renderSearchView(stateWithRun(run))).toContain(
      "1 document retrieved (run 1)",
    );
  });

  it("marks an Arabic query right-to-left", () => {
    const state = initialState();
    state.search.queryText = "استرجاع النصوص";
    const html = renderSearchView(state);
    expect(html).toMatch(/<input type="search"[^>]*dir="rtl"/);
  });

  it("escapes hostile document names", () => {
    const run = goldenRun();
    run.results = [hit(1, 2, '<img src=x onerror="pwn()">', 0.5)];
    const html = renderSearchView(stateWithRun(run));
    expect(html).not.toContain("<img src=x");
    expect(html).toContain("&lt;img src=x onerror=&quot;pwn()&quot;&gt;");
  });

  it("surfaces a search error", () => {
    const state = initialState();
    state.search.error = "no documents have been indexed yet";
    expect(renderSearchView(state)).toContain("no documents have been indexed yet");
  });
});

describe("upload view", () => {
  it("disables submit without a classification", () => {
    const state = initialState();
    state.upload.name = "my-doc";
    state.upload.classification = "";
    state.upload.text = "some words";
    expect(renderUploadView(state)).toMatch(/<button type="submit" disabled>/);
  });

  it("disables submit without a name", () => {
    const state = initialState();
    state.upload.classification = "news";
    expect(renderUploadView(state)).toMatch(/<button type="submit" disabled>/);
  });

  it("enables submit once name and classification are set", () => {
    const state = initialState();
    state.upload.name = "my-doc";
    state.upload.classification = "news";
    expect(renderUploadView(state)).toMatch(/<button type="submit">/);
  });

  it("offers known classifications as suggestions", () => {
    const state = initialState();
    state.classifications = ["culture", "sport"];
    const html = renderUploadView(state);
    expect(html).toContain('<option value="culture">');
    expect(html).toContain('<option value="sport">');
  });

  it("shows the indexing receipt", () => {
    const state = initialState();
    state.upload.receipt = { doc_id: 4, term_count: 9, name: "guide" };
    const html = renderUploadView(state);
    expect(html).toContain("document 4");
    expect(html).toContain("9 distinct terms");
  });
});

describe("collection view", () => {
  it("lists documents with classification and term counts", () => {
    const state = initialState();
    state.collection.page = {
      total: 2,
      offset: 0,
      limit: 20,
      documents: [
        { doc_id: 1, name: "D1", classification: "general", term_count: 4 },
        { doc_id: 2, name: "وثيقة", classification: "news", term_count: 7 },
      ],
    };
    const html = renderCollectionView(state);
    expect(html).toContain("D1");
    expect(html).toContain("وثيقة");
    expect(html).toContain('dir="rtl"');
    expect(html).toContain("1–2 of 2");
  });

  it("disables paging buttons at the edges", () => {
    const state = initialState();
    state.collection.page = {
      total: 2,
      offset: 0,
      limit: 20,
      documents: [
        { doc_id: 1, name: "D1", classification: "general", term_count: 4 },
        { doc_id: 2, name: "D2", classification: "general", term_count: 4 },
      ],
    };
    const html = renderCollectionView(state);
    expect(html).toMatch(/data-action="page-prev" disabled/);
    expect(html).toMatch(/data-action="page-next" disabled/);
  });

  it("says so when the collection is empty", () => {
    const state = initialState();
    state.collection.page = { total: 0, offset: 0, limit: 20, documents: [] };
    expect(renderCollectionView(state)).toContain("The collection is empty.");
  });
});

describe("shell", () => {
  it("marks the active view in the navigation", () => {
    const state = initialState();
    state.view = "collection";
    const html = renderApp(state);
    expect(html).toContain('<a href="#/collection" class="current">');
    expect(html).toContain('<a href="#/search">');
  });
});

describe("primitives", () => {
  it("escapes all five HTML metacharacters", () => {
    expect(esc(`<a href="x" title='y'>&</a>`)).toBe(
      "&lt;a href=&quot;x&quot; title=&#39;y&#39;&gt;&amp;&lt;/a&gt;",
    );
  });

  it("formats scores to exactly three decimals", () => {
    expect(formatScore(0.6528)).toBe("0.653");
    expect(formatScore(0.3)).toBe("0.300");
    expect(formatScore(0)).toBe("0.000");
  });
});
