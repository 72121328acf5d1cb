// Small DOM helpers shared by the views.

import type { ProvenanceOut, TermOut } from "./types.js";

export function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  attrs: Record<string, string> = {},
  children: (Node | string)[] = [],
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  for (const [key, value] of Object.entries(attrs)) {
    if (key === "class") node.className = value;
    else node.setAttribute(key, value);
  }
  for (const child of children) {
    node.append(child);
  }
  return node;
}

export function clear(node: HTMLElement): void {
  while (node.firstChild) node.removeChild(node.firstChild);
}

export function termText(term: TermOut): string {
  if (term.type === "literal") {
    return term.datatype ? `"${term.value}"^^<${term.datatype}>` : `"${term.value}"`;
  }
  return term.value;
}

export function shortName(iri: string): string {
  const cut = Math.max(iri.lastIndexOf("/"), iri.lastIndexOf("#"), iri.lastIndexOf(":"));
  return cut >= 0 && cut < iri.length - 1 ? iri.slice(cut + 1) : iri;
}

export function provenanceTooltip(records: ProvenanceOut[]): string {
  if (records.length === 0) return "marked complete (no provenance recorded)";
  return records
    .map((p) => {
      const parts = [];
      if (p.author) parts.push(`by ${p.author}`);
      if (p.timestamp) parts.push(`at ${p.timestamp}`);
      if (p.reference) parts.push(`ref ${p.reference}`);
      return parts.length > 0 ? parts.join(" ") : "(empty record)";
    })
    .join("\n");
}

let toastTimer: ReturnType<typeof setTimeout> | undefined;

export function toast(message: string): void {
  let node = document.getElementById("toast");
  if (!node) {
    node = el("div", { id: "toast" });
    document.body.append(node);
  }
  node.textContent = message;
  node.classList.add("visible");
  if (toastTimer) clearTimeout(toastTimer);
  toastTimer = setTimeout(() => node?.classList.remove("visible"), 4000);
}

export function debounce<A extends unknown[]>(
  fn: (...args: A) => void,
  waitMs: number,
): (...args: A) => void {
  let timer: ReturnType<typeof setTimeout> | undefined;
  return (...args: A) => {
    if (timer) clearTimeout(timer);
    timer = setTimeout(() => fn(...args), waitMs);
  };
}
