// Query console: run a conjunctive query, show the answers, and show the
// completeness verdict banner. The banner always mirrors the last query
// response — complete / not complete (with the failing witness) /
// undecided — and is never computed client-side.

import { ApiError, runQuery } from "./api.js";
import { clear, el, termText, toast } from "./render.js";
import type { QueryResponse } from "./types.js";

export class QueryConsole {
  private readonly input: HTMLTextAreaElement;
  private readonly banner: HTMLElement;
  private readonly results: HTMLElement;

  constructor(container: HTMLElement, initialQuery = "") {
    this.input = el("textarea", { class: "query-input", rows: "4" });
    this.input.value = initialQuery;
    const run = el("button", { class: "run-query" }, ["run query"]);
    this.banner = el("div", { class: "verdict-banner", hidden: "hidden" });
    this.results = el("div", { class: "query-results" });
    run.addEventListener("click", () => void this.run());
    container.append(this.input, run, this.banner, this.results);
  }

  setQuery(text: string): void {
    this.input.value = text;
  }

  async run(): Promise<void> {
    let response: QueryResponse;
    try {
      response = await runQuery(this.input.value);
    } catch (error) {
      const detail = error instanceof ApiError ? error.message : String(error);
      toast(`query failed: ${detail}`);
      return;
    }
    this.renderBanner(response);
    this.renderResults(response);
  }

  private renderBanner(response: QueryResponse): void {
    this.banner.removeAttribute("hidden");
    this.banner.className = "verdict-banner";
    clear(this.banner);
    if (response.undecided) {
      this.banner.classList.add("undecided");
      this.banner.append(
        el("strong", {}, ["undecided"]),
        ` — the check ran out of budget${
          response.undecided_reason ? ` (${response.undecided_reason})` : ""
        }`,
      );
    } else if (response.complete) {
      this.banner.classList.add("complete");
      this.banner.append(
        el("strong", {}, ["complete"]),
        " — these are all the answers there are",
      );
    } else {
      this.banner.classList.add("incomplete");
      this.banner.append(el("strong", {}, ["not complete"]));
      if (response.witness) {
        const bindings = Object.entries(response.witness.instantiation)
          .map(([name, term]) => `?${name} = ${termText(term)}`)
          .join(", ");
        const missing = response.witness.missing.join(" . ");
        this.banner.append(
          ` — answers may be missing; e.g. ${bindings || "the query itself"}` +
            (missing ? ` is not closed off (${missing})` : ""),
        );
      }
    }
  }

  private renderResults(response: QueryResponse): void {
    clear(this.results);
    if (response.answers.length === 0) {
      this.results.append(el("p", { class: "empty-hint" }, ["no answers"]));
      return;
    }
    const table = el("table", { class: "answers" });
    table.append(
      el("tr", {}, response.variables.map((name) => el("th", {}, [`?${name}`]))),
    );
    for (const answer of response.answers) {
      table.append(
        el(
          "tr",
          {},
          response.variables.map((name) => {
            const term = answer[name];
            return el("td", {}, [term ? termText(term) : ""]);
          }),
        ),
      );
    }
    this.results.append(table);
  }
}
