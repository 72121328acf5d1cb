// Entity page: facts grouped by predicate with per-predicate completeness
// state. A checkmark means the store holds a completeness statement for
// (entity, predicate); a question mark means unknown. Toggling always goes
// through the API and then refetches — the page never updates
// optimistically, so what is shown is exactly what the server confirmed.

import { ApiError, addStatement, getEntity, removeStatement } from "./api.js";
import { clear, el, provenanceTooltip, shortName, termText, toast } from "./render.js";
import type { EntityViewOut, ProvenanceForm } from "./types.js";

// Monotonic token discards responses of superseded in-flight requests.
let requestToken = 0;

export class EntityPage {
  private current: string | null = null;

  constructor(private readonly container: HTMLElement) {}

  get entity(): string | null {
    return this.current;
  }

  async show(iri: string): Promise<void> {
    this.current = iri;
    const token = ++requestToken;
    let view: EntityViewOut;
    try {
      view = await getEntity(iri);
    } catch (error) {
      toast(`could not load entity: ${describe(error)}`);
      return;
    }
    if (token !== requestToken) return; // a newer navigation superseded us
    this.render(view);
  }

  private async refetch(): Promise<void> {
    if (this.current) await this.show(this.current);
  }

  private render(view: EntityViewOut): void {
    clear(this.container);
    this.container.append(
      el("h2", { class: "entity-title", title: view.entity }, [shortName(view.entity)]),
      el("div", { class: "entity-iri" }, [view.entity]),
    );

    const predicates = new Set<string>([
      ...Object.keys(view.facts),
      ...Object.keys(view.completeness),
    ]);
    if (predicates.size === 0) {
      this.container.append(
        el("p", { class: "empty-hint" }, ["no facts or completeness statements yet"]),
      );
      return;
    }

    const table = el("table", { class: "facts" });
    table.append(
      el("tr", {}, [
        el("th", {}, ["property"]),
        el("th", {}, ["values"]),
        el("th", {}, ["complete?"]),
      ]),
    );
    for (const predicate of [...predicates].sort()) {
      const objects = view.facts[predicate] ?? [];
      const values =
        objects.length > 0
          ? objects.map((o) => termText(o)).join(", ")
          : "(no values — known to have none when marked complete)";
      table.append(
        el("tr", { "data-predicate": predicate }, [
          el("td", { title: predicate }, [shortName(predicate)]),
          el("td", { class: "values" }, [values]),
          this.statusCell(view.entity, predicate, view.completeness[predicate]),
        ]),
      );
    }
    this.container.append(table);
  }

  private statusCell(
    entity: string,
    predicate: string,
    flag: { complete: boolean; provenance: { author?: string | null }[] } | undefined,
  ): HTMLElement {
    const cell = el("td", { class: "status" });
    if (flag?.complete) {
      const mark = el(
        "button",
        {
          class: "mark complete",
          title: provenanceTooltip(flag.provenance),
          "aria-label": `complete; click to retract`,
        },
        ["✓"],
      );
      mark.addEventListener("click", () => void this.retract(entity, predicate));
      cell.append(mark);
    } else {
      const mark = el(
        "button",
        {
          class: "mark unknown",
          title: "completeness unknown; click to mark complete",
          "aria-label": "unknown; click to mark complete",
        },
        ["?"],
      );
      mark.addEventListener("click", () => this.openProvenanceForm(cell, entity, predicate));
      cell.append(mark);
    }
    return cell;
  }

  private openProvenanceForm(cell: HTMLElement, entity: string, predicate: string): void {
    if (cell.querySelector("form")) return;
    const author = el("input", { placeholder: "author (optional)", name: "author" });
    const reference = el("input", { placeholder: "reference (optional)", name: "reference" });
    const confirm = el("button", { type: "submit" }, ["mark complete"]);
    const form = el("form", { class: "provenance-form" }, [author, reference, confirm]);
    form.addEventListener("submit", (event) => {
      event.preventDefault();
      const provenance: ProvenanceForm = {};
      if (author.value.trim()) provenance.author = author.value.trim();
      if (reference.value.trim()) provenance.reference = reference.value.trim();
      void this.assert(entity, predicate, provenance);
    });
    cell.append(form);
  }

  private async assert(
    entity: string,
    predicate: string,
    provenance: ProvenanceForm,
  ): Promise<void> {
    try {
      await addStatement(entity, predicate, provenance);
    } catch (error) {
      toast(`could not add statement: ${describe(error)}`);
      return; // page unchanged
    }
    await this.refetch();
  }

  private async retract(entity: string, predicate: string): Promise<void> {
    try {
      await removeStatement(entity, predicate);
    } catch (error) {
      toast(`could not remove statement: ${describe(error)}`);
      return; // page unchanged
    }
    await this.refetch();
  }
}

function describe(error: unknown): string {
  if (error instanceof ApiError) return error.message;
  return String(error);
}
