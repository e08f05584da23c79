/** DOM-scrape helpers: numeric tokens shown vs numerics present in payloads.
 *
 * Mirrors the server-side statistic extraction boundaries: digits embedded
 * in identifiers (R040C100) are not numerics; signs attach only after a
 * delimiter; percent suffixes stay on the token.
 */

const TOKEN_RE = /(?:\d{1,3}(?:,\d{3})+|\d+)(?:\.\d+)?%?/g;

export function extractNumericTokens(text: string): number[] {
  const values: number[] = [];
  for (const match of text.matchAll(TOKEN_RE)) {
    const start = match.index ?? 0;
    const before = start > 0 ? text[start - 1] : "";
    if (before && /[\w.]/.test(before)) continue;
    let surface = match[0];
    if (before === "-" || before === "+" || before === "−") {
      const prior = start > 1 ? text[start - 2] : "";
      if (!(prior && (/[\w.]/.test(prior) || "-+−".includes(prior)))) {
        surface = before + surface;
      }
    }
    const numeric = surface.endsWith("%") ? surface.slice(0, -1) : surface;
    values.push(Number(numeric.replace(/,/g, "").replace("−", "-")));
  }
  return values;
}

export function collectPayloadNumbers(node: unknown, into = new Set<number>()): Set<number> {
  if (typeof node === "number" && Number.isFinite(node)) {
    into.add(node);
    return into;
  }
  if (typeof node === "string") {
    for (const value of extractNumericTokens(node)) into.add(value);
    return into;
  }
  if (Array.isArray(node)) {
    for (const item of node) collectPayloadNumbers(item, into);
    return into;
  }
  if (node && typeof node === "object") {
    for (const [key, value] of Object.entries(node as Record<string, unknown>)) {
      collectPayloadNumbers(key, into);
      collectPayloadNumbers(value, into);
    }
  }
  return into;
}

/** Every numeric rendered inside the element must exist in the payload set. */
export function assertShownNumbersCovered(element: HTMLElement,
                                          allowed: Set<number>): void {
  const shown = extractNumericTokens(element.textContent ?? "");
  for (const value of shown) {
    if (!allowed.has(value)) {
      throw new Error(`numeric ${value} rendered but absent from payload`);
    }
  }
}
