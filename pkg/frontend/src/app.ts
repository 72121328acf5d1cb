// Single-page wiring: search header, three tabs (entity, statements,
// query), and hash-based entity navigation.

import { setApiBase } from "./api.js";
import { EntityPage } from "./entityPage.js";
import { QueryConsole } from "./queryConsole.js";
import { SearchBox } from "./search.js";
import { StatementsPage } from "./statementsPage.js";
import { el } from "./render.js";

const TABS = ["entity", "statements", "query"] as const;
type Tab = (typeof TABS)[number];

export function mountApp(root: HTMLElement): {
  entityPage: EntityPage;
  queryConsole: QueryConsole;
  statementsPage: StatementsPage;
  showTab: (tab: Tab) => void;
} {
  if (root.dataset.apiBase) setApiBase(root.dataset.apiBase);
  const header = el("header", {}, [el("h1", {}, ["completeness browser"])]);
  const searchHost = el("div", { class: "search-host" });
  header.append(searchHost);

  const nav = el("nav", { class: "tabs" });
  const panels: Record<Tab, HTMLElement> = {
    entity: el("section", { class: "panel", id: "panel-entity" }),
    statements: el("section", { class: "panel", id: "panel-statements" }),
    query: el("section", { class: "panel", id: "panel-query" }),
  };

  function showTab(tab: Tab): void {
    for (const name of TABS) {
      panels[name].toggleAttribute("hidden", name !== tab);
      nav.querySelector(`[data-tab="${name}"]`)?.classList.toggle("active", name === tab);
    }
  }

  for (const name of TABS) {
    const button = el("button", { "data-tab": name }, [name]);
    button.addEventListener("click", () => {
      showTab(name);
      if (name === "statements") void statementsPage.reload();
    });
    nav.append(button);
  }

  root.append(header, nav, panels.entity, panels.statements, panels.query);

  const entityPage = new EntityPage(panels.entity);
  const queryConsole = new QueryConsole(panels.query);
  const statementsPage = new StatementsPage(panels.statements, (iri) => {
    showTab("entity");
    void entityPage.show(iri);
  });
  new SearchBox(searchHost, (iri) => {
    window.location.hash = `entity=${encodeURIComponent(iri)}`;
    showTab("entity");
    void entityPage.show(iri);
  });

  const fromHash = decodeURIComponent(
    (window.location.hash.match(/entity=([^&]+)/) ?? [])[1] ?? "",
  );
  showTab("entity");
  if (fromHash) void entityPage.show(fromHash);

  return { entityPage, queryConsole, statementsPage, showTab };
}

declare global {
  interface Window {
    __rdfcompleteApp?: ReturnType<typeof mountApp>;
  }
}

if (typeof document !== "undefined" && document.getElementById("app")) {
  window.__rdfcompleteApp = mountApp(document.getElementById("app")!);
}
