// Detail page: the paper pairs behind one petal, three columns with the
// ego's own papers in the middle, rows chronological by the ego paper.
// Blue arrows point at the ego (alter papers that influenced it), red
// arrows point away (alter papers it influenced).

import { ApiClient } from "./api.js";
import type { DetailResponse, PaperInfoPayload } from "./types.js";

function paperCell(papers: PaperInfoPayload[], arrow: string,
                   className: string): HTMLTableCellElement {
  const td = document.createElement("td");
  td.className = className;
  for (const paper of papers) {
    const line = document.createElement("div");
    line.className = "detail-paper";
    line.textContent = `${arrow} ${paper.title} (${paper.year})`;
    td.appendChild(line);
  }
  return td;
}

export function renderDetailView(root: HTMLElement, api: ApiClient,
                                 configToken: string, alterId: string,
                                 onBack: () => void): Promise<DetailResponse> {
  root.replaceChildren();
  root.className = "detail-view";

  const back = document.createElement("button");
  back.textContent = "back to flower";
  back.addEventListener("click", onBack);
  root.appendChild(back);

  return api.detail(configToken, alterId).then((detail) => {
    const heading = document.createElement("h2");
    heading.textContent =
      `influence between the ego and ${detail.alter_name} `
      + `(${detail.pair_count} paper pairs)`;
    root.appendChild(heading);

    const table = document.createElement("table");
    table.className = "detail-table";
    const head = document.createElement("tr");
    for (const title of [`influenced the ego`, "ego papers", `influenced by the ego`]) {
      const th = document.createElement("th");
      th.textContent = title;
      head.appendChild(th);
    }
    table.appendChild(head);

    for (const row of detail.rows) {
      const tr = document.createElement("tr");
      tr.appendChild(paperCell(row.incoming, "→", "detail-in"));
      const ego = document.createElement("td");
      ego.className = "detail-ego";
      ego.textContent = `${row.ego_paper.title} (${row.ego_paper.year})`;
      tr.appendChild(ego);
      tr.appendChild(paperCell(row.outgoing, "→", "detail-out"));
      table.appendChild(tr);
    }
    root.appendChild(table);
    return detail;
  });
}
