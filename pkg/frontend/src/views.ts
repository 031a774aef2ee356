/**
 * Pure view functions: application state in, HTML string out.
 *
 * No DOM access here — interactive elements carry data-action
 * attributes that the shell wires up with delegated listeners, which
 * keeps every view renderable (and testable) without a browser.
 */

import { JudgmentReceipt, QueryRun, SearchHit } from "./api.js";
import { AppState, JudgmentCell, View } from "./state.js";
import { dirAttr } from "./rtl.js";

const MEASURES = [
  ["inner_product", "Inner product"],
  ["cosine", "Cosine"],
  ["jaccard", "Jaccard"],
  ["dice", "Dice"],
] as const;

const NAV: ReadonlyArray<[View, string]> = [
  ["home", "Home"],
  ["search", "Search"],
  ["upload", "Upload"],
  ["collection", "Collection"],
  ["about", "About"],
];

/** Escape text for interpolation into HTML. */
export function esc(text: string): string {
  return text
    .replaceAll("&", "&amp;")
    .replaceAll("<", "&lt;")
    .replaceAll(">", "&gt;")
    .replaceAll('"', "&quot;")
    .replaceAll("'", "&#39;");
}

/** Scores are shown with three decimals everywhere. */
export function formatScore(score: number): string {
  return score.toFixed(3);
}

export function renderApp(state: AppState): string {
  const body = {
    home: renderHomeView,
    search: renderSearchView,
    upload: renderUploadView,
    collection: renderCollectionView,
    about: renderAboutView,
  }[state.view](state);
  const links = NAV.map(([view, label]) => {
    const current = view === state.view ? ' class="current"' : "";
    return `<a href="#/${view}"${current}>${label}</a>`;
  }).join("\n      ");
  return `
  <header>
    <h1><a href="#/home">vsmir</a></h1>
    <nav>
      ${links}
    </nav>
  </header>
  <main>${body}</main>`;
}

export function renderHomeView(state: AppState): string {
  const labels = state.classifications;
  const labelLine = labels.length
    ? `Classifications in use: ${labels.map((l) => `<code>${esc(l)}</code>`).join(", ")}.`
    : "No documents indexed yet — start on the Upload page.";
  return `
    <section class="intro">
      <h2>Vector-space document retrieval</h2>
      <p>
        Documents are indexed as tf-idf vectors; queries rank them under
        inner-product, cosine, Jaccard, or Dice similarity. Mark results
        relevant to get live precision and recall.
      </p>
      <p>${labelLine}</p>
      <p>
        <a class="button" href="#/search">Search the collection</a>
        <a class="button" href="#/upload">Add documents</a>
      </p>
    </section>`;
}

export function renderSearchView(state: AppState): string {
  const search = state.search;
  const options = MEASURES.map(([value, label]) => {
    const selected = value === search.measure ? " selected" : "";
    return `<option value="${value}"${selected}>${label}</option>`;
  }).join("");
  const classBoxes = state.classifications
    .map((label) => {
      const checked = search.selectedClasses.includes(label) ? " checked" : "";
      return `
        <label class="class-box">
          <input type="checkbox" data-action="toggle-class" value="${esc(label)}"${checked}>
          ${esc(label)}
        </label>`;
    })
    .join("");
  const error = search.error
    ? `<p class="error" role="alert">${esc(search.error)}</p>`
    : "";
  const results = search.run ? renderResults(search.run, search.judgments) : "";
  const feedback = search.feedback ? renderFeedback(search.feedback) : "";
  return `
    <section>
      <form id="search-form" data-action="search">
        <input type="search" name="q" placeholder="Enter a query…" ${dirAttr(search.queryText)}
               value="${esc(search.queryText)}" data-action="query-text" autofocus>
        <select name="measure" data-action="measure" aria-label="similarity measure">${options}</select>
        <input type="text" name="threshold" inputmode="decimal" placeholder="threshold"
               value="${esc(search.threshold)}" data-action="threshold" size="9">
        <input type="text" name="limit" inputmode="numeric" placeholder="limit"
               value="${esc(search.limit)}" data-action="limit" size="6">
        <button type="submit"${search.searching ? " disabled" : ""}>Search</button>
      </form>
      ${classBoxes ? `<div class="class-filter">Filter: ${classBoxes}</div>` : ""}
      ${error}
      ${feedback}
      ${results}
    </section>`;
}

function renderResults(run: QueryRun, judgments: Record<number, JudgmentCell>): string {
  if (run.results.length === 0) {
    return `<p class="empty">No documents scored above the threshold (run ${run.run_id}).</p>`;
  }
  const rows = run.results
    .map((hit) => renderResultRow(hit, judgments[hit.doc_id]))
    .join("\n");
  const plural = run.results.length === 1 ? "document" : "documents";
  return `
      <table class="results">
        <thead>
          <tr><th>Rank</th><th>Document</th><th>Classification</th><th>Score</th><th>Relevant?</th></tr>
        </thead>
        <tbody>
${rows}
        </tbody>
      </table>
      <p class="result-count">${run.results.length} ${plural} retrieved (run ${run.run_id})</p>`;
}

function renderResultRow(hit: SearchHit, cell: JudgmentCell | undefined): string {
  const shown =
    cell && cell.inFlight && cell.queued !== null ? cell.queued : cell?.verdict ?? null;
  const checked = shown === true ? " checked" : "";
  const busy = cell?.inFlight ? " disabled" : "";
  const judged = shown === null ? "" : ' class="judged"';
  return `          <tr${judged}>
            <td class="num">${hit.rank}</td>
            <td ${dirAttr(hit.name)}>${esc(hit.name)}</td>
            <td>${esc(hit.classification)}</td>
            <td class="num">${formatScore(hit.score)}</td>
            <td class="judge"><input type="checkbox" data-action="toggle-judgment"
                data-doc="${hit.doc_id}" aria-label="mark ${esc(hit.name)} relevant"${checked}${busy}></td>
          </tr>`;
}

function renderFeedback(feedback: JudgmentReceipt): string {
  const recall =
    feedback.recall === null ? "" : `, recall ${formatScore(feedback.recall)}`;
  return `
      <p class="feedback">
        Precision <strong>${formatScore(feedback.precision)}</strong>${recall}
        — ${feedback.relevant_retrieved_count} of ${feedback.retrieved_count}
        retrieved judged relevant (${feedback.judged_count} judged).
      </p>`;
}

export function renderUploadView(state: AppState): string {
  const upload = state.upload;
  const ready =
    upload.name.trim() !== "" &&
    upload.classification.trim() !== "" &&
    !upload.submitting;
  const labels = state.classifications
    .map((label) => `<option value="${esc(label)}"></option>`)
    .join("");
  const receipt = upload.receipt
    ? `<p class="receipt">Indexed <strong ${dirAttr(upload.receipt.name)}>${esc(
        upload.receipt.name,
      )}</strong> as document ${upload.receipt.doc_id} (${upload.receipt.term_count} distinct terms).</p>`
    : "";
  const error = upload.error
    ? `<p class="error" role="alert">${esc(upload.error)}</p>`
    : "";
  return `
    <section>
      <h2>Add a document</h2>
      <form id="upload-form" data-action="upload">
        <label>Name
          <input type="text" name="name" value="${esc(upload.name)}" ${dirAttr(upload.name)}
                 data-action="upload-name" required>
        </label>
        <label>Classification
          <input type="text" name="classification" value="${esc(upload.classification)}"
                 list="known-classes" data-action="upload-classification" required>
          <datalist id="known-classes">${labels}</datalist>
        </label>
        <label>Text
          <textarea name="text" rows="10" ${dirAttr(upload.text)}
                    data-action="upload-text">${esc(upload.text)}</textarea>
        </label>
        <label class="file-pick">…or load a text file
          <input type="file" accept=".txt,text/plain" data-action="upload-file">
        </label>
        <button type="submit"${ready ? "" : " disabled"}>
          ${upload.submitting ? "Uploading…" : "Upload"}
        </button>
      </form>
      ${error}
      ${receipt}
    </section>`;
}

export function renderCollectionView(state: AppState): string {
  const collection = state.collection;
  const options = ["", ...state.classifications]
    .map((label) => {
      const selected = label === collection.classFilter ? " selected" : "";
      const text = label === "" ? "all classifications" : esc(label);
      return `<option value="${esc(label)}"${selected}>${text}</option>`;
    })
    .join("");
  const error = collection.error
    ? `<p class="error" role="alert">${esc(collection.error)}</p>`
    : "";
  let table = "";
  if (collection.page) {
    const page = collection.page;
    if (page.total === 0) {
      table = `<p class="empty">The collection is empty.</p>`;
    } else {
      const rows = page.documents
        .map(
          (doc) => `          <tr>
            <td class="num">${doc.doc_id}</td>
            <td ${dirAttr(doc.name)}>${esc(doc.name)}</td>
            <td>${esc(doc.classification)}</td>
            <td class="num">${doc.term_count}</td>
          </tr>`,
        )
        .join("\n");
      const first = page.offset + 1;
      const last = page.offset + page.documents.length;
      const prevDisabled = page.offset === 0 ? " disabled" : "";
      const nextDisabled = last >= page.total ? " disabled" : "";
      table = `
      <table class="collection">
        <thead><tr><th>Id</th><th>Name</th><th>Classification</th><th>Distinct terms</th></tr></thead>
        <tbody>
${rows}
        </tbody>
      </table>
      <p class="pager">
        <button data-action="page-prev"${prevDisabled}>&larr; Previous</button>
        ${first}–${last} of ${page.total}
        <button data-action="page-next"${nextDisabled}>Next &rarr;</button>
      </p>`;
    }
  } else if (collection.loading) {
    table = `<p class="empty">Loading…</p>`;
  }
  return `
    <section>
      <h2>Collection</h2>
      <label>Show
        <select data-action="class-filter">${options}</select>
      </label>
      ${error}
      ${table}
    </section>`;
}

export function renderAboutView(_state: AppState): string {
  return `
    <section class="about">
      <h2>How ranking works</h2>
      <p>
        Each document is tokenized, normalized (Arabic diacritics and
        tatweel stripped, alef forms unified, case folded), stripped of
        stop words, and indexed as a vector of tf&#8239;&times;&#8239;idf
        weights with idf&#8239;=&#8239;log&#8321;&#8320;(N/df). Terms that
        appear in every document carry zero weight.
      </p>
      <ul>
        <li><strong>Inner product</strong> — raw overlap of weighted terms.</li>
        <li><strong>Cosine</strong> — inner product normalized by both vector lengths.</li>
        <li><strong>Jaccard</strong> — overlap over union-like mass.</li>
        <li><strong>Dice</strong> — overlap over total mass; ranks exactly like Jaccard.</li>
      </ul>
      <p>
        Results scoring strictly above the threshold are ranked highest
        first. Marking rows relevant computes precision (relevant
        retrieved&#8239;/&#8239;retrieved) on the server, live.
      </p>
    </section>`;
}
