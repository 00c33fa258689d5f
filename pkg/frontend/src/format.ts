/**
 * Lightweight typesetting of the service's canonical strings.
 *
 * This is string decoration only: exponents become superscripts, `*`
 * becomes a middle dot, `sqrt(...)` gets a radical sign.  No term is ever
 * reordered, simplified or evaluated here; the service's text is the truth.
 */

const ESCAPES: Record<string, string> = {
  "&": "&amp;",
  "<": "&lt;",
  ">": "&gt;",
  '"': "&quot;",
};

export function escapeHtml(text: string): string {
  return text.replace(/[&<>"]/g, (ch) => ESCAPES[ch] ?? ch);
}

/** Render a canonical value/formula string as display HTML. */
export function typeset(text: string): string {
  let html = escapeHtml(text);
  // exponents: m^2, s^-2, 2^2022, A^3
  html = html.replace(/\^(-?\d+)/g, "<sup>$1</sup>");
  // multiplication dots read better than stars in formulas
  html = html.replace(/\*/g, "·");
  // radicals: sqrt(…) -> √(…)
  html = html.replace(/\bsqrt\(/g, "√(");
  return html;
}

/** Typeset with the trailing unit de-emphasized ("8·A/(A + 8) min"). */
export function typesetValue(text: string): string {
  const match = /^(.*?)( [A-Za-z_][A-Za-z0-9_^*/]*)?$/.exec(text);
  if (match && match[2]) {
    return `${typeset(match[1] ?? "")}<span class="unit">${typeset(match[2])}</span>`;
  }
  return typeset(text);
}
