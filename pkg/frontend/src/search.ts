// Entity search box with debounced auto-complete suggestions.

import { searchEntities } from "./api.js";
import { clear, debounce, el, shortName } from "./render.js";
import type { SearchHit } from "./types.js";

export class SearchBox {
  private readonly input: HTMLInputElement;
  private readonly suggestions: HTMLElement;

  constructor(
    container: HTMLElement,
    private readonly onPick: (iri: string) => void,
    debounceMs = 250,
  ) {
    this.input = el("input", {
      class: "search-input",
      placeholder: "search entities…",
      type: "search",
    });
    this.suggestions = el("ul", { class: "suggestions" });
    const lookup = debounce(() => void this.lookup(), debounceMs);
    this.input.addEventListener("input", lookup);
    container.append(this.input, this.suggestions);
  }

  private async lookup(): Promise<void> {
    const prefix = this.input.value.trim();
    if (!prefix) {
      clear(this.suggestions);
      return;
    }
    let hits: SearchHit[];
    try {
      hits = await searchEntities(prefix);
    } catch {
      return; // keep previous suggestions on transient errors
    }
    if (this.input.value.trim() !== prefix) return; // stale response
    this.render(hits);
  }

  private render(hits: SearchHit[]): void {
    clear(this.suggestions);
    if (hits.length === 0) {
      this.suggestions.append(
        el("li", { class: "empty-hint" }, ["no matching entities"]),
      );
      return;
    }
    for (const hit of hits) {
      const item = el("li", { class: "suggestion", "data-iri": hit.iri }, [
        hit.label ? `${hit.label} — ${shortName(hit.iri)}` : shortName(hit.iri),
      ]);
      item.addEventListener("click", () => {
        clear(this.suggestions);
        this.input.value = "";
        this.onPick(hit.iri);
      });
      this.suggestions.append(item);
    }
  }
}
