// Search page: search bar with kind checkboxes on top, result table on the
// left, curation list on the right; "go" opens the flower page for the
// curated selection (renameable).

import { ApiClient } from "./api.js";
import type { CurationItem } from "./state.js";
import type { EntityKind, SearchHitPayload } from "./types.js";

const KINDS: EntityKind[] = ["author", "venue", "institution", "topic", "paper"];

export interface SearchViewHandles {
  runSearch: (query: string) => Promise<void>;
  curation: () => CurationItem[];
}

export function renderSearchView(
  root: HTMLElement, api: ApiClient,
  onGo: (items: CurationItem[], displayName: string) => void,
): SearchViewHandles {
  root.replaceChildren();
  root.className = "search-view";

  const bar = document.createElement("form");
  bar.className = "search-bar";
  const input = document.createElement("input");
  input.type = "search";
  input.placeholder = "search authors, venues, institutions, topics, papers";
  bar.appendChild(input);
  const kindBoxes = new Map<EntityKind, HTMLInputElement>();
  for (const kind of KINDS) {
    const label = document.createElement("label");
    const box = document.createElement("input");
    box.type = "checkbox";
    box.checked = kind === "author";
    box.value = kind;
    kindBoxes.set(kind, box);
    label.append(box, kind);
    bar.appendChild(label);
  }
  const submit = document.createElement("button");
  submit.type = "submit";
  submit.textContent = "search";
  bar.appendChild(submit);
  root.appendChild(bar);

  const columns = document.createElement("div");
  columns.className = "search-columns";
  const results = document.createElement("div");
  results.className = "search-results";
  const side = document.createElement("div");
  side.className = "curation-panel";
  columns.append(results, side);
  root.appendChild(columns);

  const curated = new Map<string, CurationItem>();
  const rowBoxes = new Map<string, HTMLInputElement>();

  const nameInput = document.createElement("input");
  nameInput.className = "curation-name";
  nameInput.placeholder = "flower name";
  const list = document.createElement("ul");
  list.className = "curation-list";
  const go = document.createElement("button");
  go.textContent = "go";
  go.className = "go-button";
  side.append(nameInput, list, go);

  const key = (id: string, kind: string) => `${kind}:${id}`;

  function redrawCuration(): void {
    list.replaceChildren();
    for (const item of curated.values()) {
      const li = document.createElement("li");
      li.textContent = `${item.name} (${item.kind})`;
      li.title = "click to remove";
      li.addEventListener("click", () => {
        curated.delete(key(item.id, item.kind));
        rowBoxes.get(key(item.id, item.kind))?.click();
        redrawCuration();
      });
      list.appendChild(li);
    }
    go.disabled = curated.size === 0;
  }
  redrawCuration();

  function hitRow(hit: SearchHitPayload): HTMLTableRowElement {
    const tr = document.createElement("tr");
    for (const text of [hit.name, hit.kind, String(hit.paper_count),
                        String(hit.citation_count), hit.hint]) {
      const td = document.createElement("td");
      td.textContent = text;
      tr.appendChild(td);
    }
    const td = document.createElement("td");
    const box = document.createElement("input");
    box.type = "checkbox";
    const k = key(hit.entity_id, hit.kind);
    box.checked = curated.has(k);
    rowBoxes.set(k, box);
    box.addEventListener("change", () => {
      if (box.checked) {
        curated.set(k, { id: hit.entity_id, kind: hit.kind, name: hit.name });
        if (!nameInput.value) nameInput.value = hit.name;
      } else {
        curated.delete(k);
      }
      redrawCuration();
    });
    td.appendChild(box);
    tr.appendChild(td);
    return tr;
  }

  async function runSearch(query: string): Promise<void> {
    const kinds = [...kindBoxes.entries()]
      .filter(([, box]) => box.checked).map(([kind]) => kind);
    const hits = await api.search(query, kinds, 25);
    const table = document.createElement("table");
    table.className = "results-table";
    const head = document.createElement("tr");
    for (const title of ["name", "kind", "papers", "citations", "hint", ""]) {
      const th = document.createElement("th");
      th.textContent = title;
      head.appendChild(th);
    }
    table.appendChild(head);
    rowBoxes.clear();
    for (const hit of hits) table.appendChild(hitRow(hit));
    results.replaceChildren(table);
    if (!hits.length) {
      const empty = document.createElement("p");
      empty.textContent = "no matches";
      results.appendChild(empty);
    }
  }

  bar.addEventListener("submit", (event) => {
    event.preventDefault();
    if (input.value.trim()) void runSearch(input.value.trim());
  });
  go.addEventListener("click", () => {
    if (curated.size) {
      onGo([...curated.values()], nameInput.value || "curated selection");
    }
  });

  return { runSearch, curation: () => [...curated.values()] };
}
