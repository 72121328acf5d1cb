import { afterEach, beforeEach, describe, expect, it, vi } from "vitest";

import { QueryConsole } from "../src/queryConsole.js";
import { CHAIN_QUERY, EX, MockApi, NO_VALUE_QUERY, flush } from "./mockApi.js";

let api: MockApi;
let container: HTMLElement;
let console_: QueryConsole;

beforeEach(() => {
  api = new MockApi();
  api.install();
  document.body.innerHTML = "";
  container = document.createElement("div");
  document.body.append(container);
  console_ = new QueryConsole(container);
});

afterEach(() => {
  vi.unstubAllGlobals();
});

function banner(): HTMLElement | null {
  return container.querySelector(".verdict-banner");
}

describe("query console", () => {
  it("renders answers plus a complete banner for the seeded fixture", async () => {
    console_.setQuery(CHAIN_QUERY);
    await console_.run();
    expect(banner()?.classList.contains("complete")).toBe(true);
    expect(banner()?.textContent).toContain("complete");
    const rows = container.querySelectorAll("table.answers tr");
    expect(rows.length).toBe(2); // header + one answer
    expect(rows[1].textContent).toContain(EX.tony);
    expect(rows[1].textContent).toContain(EX.toby);
  });

  it("banner text mirrors the API verdict, not local computation", async () => {
    console_.setQuery(CHAIN_QUERY);
    await console_.run();
    const served = api.queryResponse(CHAIN_QUERY);
    expect(served.complete).toBe(true);
    expect(banner()?.classList.contains("complete")).toBe(true);
    // flip only the server state; identical query now renders not complete
    api.statements.delete(`${EX.ted} ${EX.child}`);
    await console_.run();
    expect(api.queryResponse(CHAIN_QUERY).complete).toBe(false);
    expect(banner()?.classList.contains("incomplete")).toBe(true);
  });

  it("shows a witness summary on a not-complete verdict", async () => {
    api.statements.delete(`${EX.ted} ${EX.child}`);
    console_.setQuery(CHAIN_QUERY);
    await console_.run();
    expect(banner()?.textContent).toContain("not complete");
    expect(banner()?.textContent).toContain(EX.ted);
  });

  it("renders the complete banner with zero answers (no-value case)", async () => {
    console_.setQuery(NO_VALUE_QUERY);
    await console_.run();
    expect(banner()?.classList.contains("complete")).toBe(true);
    expect(container.querySelector(".query-results")?.textContent).toContain(
      "no answers",
    );
  });

  it("renders the undecided banner", async () => {
    vi.stubGlobal(
      "fetch",
      async () =>
        new Response(
          JSON.stringify({
            answers: [],
            variables: [],
            complete: null,
            undecided: true,
            undecided_reason: "step budget of 1 exhausted",
          }),
          { status: 200, headers: { "Content-Type": "application/json" } },
        ),
    );
    console_.setQuery(CHAIN_QUERY);
    await console_.run();
    expect(banner()?.classList.contains("undecided")).toBe(true);
    expect(banner()?.textContent).toContain("budget");
  });

  it("toasts and keeps the previous state on a query error", async () => {
    console_.setQuery(CHAIN_QUERY);
    await console_.run();
    const before = banner()?.outerHTML;
    vi.stubGlobal(
      "fetch",
      async () =>
        new Response(JSON.stringify({ detail: "query must start with SELECT" }), {
          status: 400,
          headers: { "Content-Type": "application/json" },
        }),
    );
    console_.setQuery("FETCH ALL");
    await console_.run();
    await flush();
    expect(banner()?.outerHTML).toBe(before);
    expect(document.getElementById("toast")?.textContent).toContain(
      "query must start with SELECT",
    );
  });
});
