/**
 * Browser entry point: hash routing plus delegated event wiring around
 * the pure views and the controller.
 */

import { ApiClient, Measure } from "./api.js";
import { Controller, View } from "./state.js";
import { renderApp } from "./views.js";

const VIEWS: readonly View[] = ["home", "search", "upload", "collection", "about"];

function viewFromHash(hash: string): View {
  const name = hash.replace(/^#\//, "");
  return (VIEWS as readonly string[]).includes(name) ? (name as View) : "home";
}

function start(): void {
  const root = document.getElementById("app");
  if (!root) {
    throw new Error("missing #app mount point");
  }
  const controller = new Controller(new ApiClient(), (state) => {
    root.innerHTML = renderApp(state);
  });

  const route = () => controller.showView(viewFromHash(location.hash));
  window.addEventListener("hashchange", route);

  root.addEventListener("submit", (event) => {
    const form = event.target as HTMLFormElement;
    const action = form.dataset["action"];
    if (!action) {
      return;
    }
    event.preventDefault();
    if (action === "search") {
      void controller.runSearch();
    } else if (action === "upload") {
      void controller.submitUpload();
    }
  });

  root.addEventListener("change", (event) => {
    const el = event.target as HTMLElement;
    switch (el.dataset["action"]) {
      case "measure":
        controller.setMeasure((el as HTMLSelectElement).value as Measure);
        break;
      case "toggle-class":
        controller.toggleClassFilter((el as HTMLInputElement).value);
        break;
      case "toggle-judgment": {
        const docId = Number((el as HTMLInputElement).dataset["doc"]);
        if (Number.isInteger(docId)) {
          controller.toggleJudgment(docId);
        }
        break;
      }
      case "class-filter":
        controller.setClassFilter((el as HTMLSelectElement).value);
        break;
      case "upload-file":
        void fillUploadFromFile(controller, el as HTMLInputElement);
        break;
      default:
        break;
    }
  });

  // Text fields update state silently; no re-render mid-keystroke.
  root.addEventListener("input", (event) => {
    const el = event.target as HTMLInputElement | HTMLTextAreaElement;
    switch (el.dataset["action"]) {
      case "query-text":
        controller.setQueryText(el.value);
        break;
      case "threshold":
        controller.setThreshold(el.value);
        break;
      case "limit":
        controller.setLimit(el.value);
        break;
      case "upload-name":
        controller.setUploadField("name", el.value);
        refreshSubmit(controller, el);
        break;
      case "upload-classification":
        controller.setUploadField("classification", el.value);
        refreshSubmit(controller, el);
        break;
      case "upload-text":
        controller.setUploadField("text", el.value);
        break;
      default:
        break;
    }
  });

  root.addEventListener("click", (event) => {
    const el = (event.target as HTMLElement).closest("[data-action]");
    if (!(el instanceof HTMLButtonElement)) {
      return;
    }
    if (el.dataset["action"] === "page-prev") {
      controller.turnPage(-1);
    } else if (el.dataset["action"] === "page-next") {
      controller.turnPage(1);
    }
  });

  route();
}

/** Enable/disable the upload button as required fields change. */
function refreshSubmit(controller: Controller, within: HTMLElement): void {
  const button = within
    .closest("form")
    ?.querySelector<HTMLButtonElement>("button[type=submit]");
  if (button) {
    button.disabled = !controller.uploadReady();
  }
}

/** Read a picked text file into the name and text fields. */
async function fillUploadFromFile(
  controller: Controller,
  input: HTMLInputElement,
): Promise<void> {
  const file = input.files?.[0];
  if (!file) {
    return;
  }
  const text = await file.text();
  controller.setUploadField("text", text);
  if (!controller.state.upload.name.trim()) {
    controller.setUploadField("name", file.name.replace(/\.[^.]*$/, ""));
  }
  controller.showView("upload");
}

document.addEventListener("DOMContentLoaded", start);
