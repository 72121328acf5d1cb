// Aggregation page: every stored completeness statement, optionally
// filtered by property.

import { listStatements } from "./api.js";
import { clear, el, provenanceTooltip, shortName, toast } from "./render.js";
import type { StatementOut } from "./types.js";

export class StatementsPage {
  private readonly filter: HTMLInputElement;
  private readonly listing: HTMLElement;

  constructor(container: HTMLElement, private readonly onPickEntity: (iri: string) => void) {
    this.filter = el("input", {
      class: "predicate-filter",
      placeholder: "filter by property IRI (exact)",
    });
    const apply = el("button", {}, ["filter"]);
    apply.addEventListener("click", () => void this.reload());
    this.listing = el("div", { class: "statement-listing" });
    container.append(el("div", { class: "filter-row" }, [this.filter, apply]), this.listing);
  }

  async reload(): Promise<void> {
    let records: StatementOut[];
    try {
      records = await listStatements(this.filter.value.trim() || undefined);
    } catch (error) {
      toast(`could not list statements: ${String(error)}`);
      return;
    }
    clear(this.listing);
    if (records.length === 0) {
      this.listing.append(el("p", { class: "empty-hint" }, ["no statements stored"]));
      return;
    }
    const table = el("table", { class: "statements" });
    table.append(
      el("tr", {}, [el("th", {}, ["entity"]), el("th", {}, ["property"]), el("th", {}, ["provenance"])]),
    );
    for (const record of records) {
      const entity = el("a", { href: `#entity=${encodeURIComponent(record.subject)}`, title: record.subject }, [
        shortName(record.subject),
      ]);
      entity.addEventListener("click", () => this.onPickEntity(record.subject));
      table.append(
        el("tr", {}, [
          el("td", {}, [entity]),
          el("td", { title: record.predicate }, [shortName(record.predicate)]),
          el("td", { class: "prov" }, [
            record.provenance.length > 0 ? provenanceTooltip(record.provenance) : "—",
          ]),
        ]),
      );
    }
    this.listing.append(table);
  }
}
