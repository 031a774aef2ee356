/**
 * Right-to-left text support.
 *
 * The corpus mixes Arabic and English, so every place that echoes user
 * text (query box, result names, document bodies) picks its direction
 * from the content rather than the page.
 */

// Arabic, Hebrew, and the Arabic presentation-form blocks.
const RTL_CHARS = /[֐-׿؀-ۿݐ-ݿࢠ-ࣿﭐ-﷿ﹰ-﻿]/;

/** True when the text contains at least one right-to-left character. */
export function isRtlText(text: string): boolean {
  return RTL_CHARS.test(text);
}

/** The writing direction the text should be rendered in. */
export function directionFor(text: string): "rtl" | "ltr" {
  return isRtlText(text) ? "rtl" : "ltr";
}

/** A ready-to-embed dir attribute for the text. */
export function dirAttr(text: string): string {
  return `dir="${directionFor(text)}"`;
}
