// Overview bars: absolute reference/citation counts for the top alters,
// cross-linked to petals through shared alter ids.

import type { BarsPayload } from "./types.js";

export interface BarsHooks {
  onRowHover?: (alterId: string | null) => void;
}

export function renderBars(container: HTMLElement, bars: BarsPayload,
                           hooks: BarsHooks = {}): void {
  const wrap = document.createElement("div");
  wrap.className = "bars";

  const heading = document.createElement("div");
  heading.className = "bars-total";
  heading.textContent = `${bars.total_alters} entities`;
  wrap.appendChild(heading);

  const maxCount = Math.max(
    1, ...bars.rows.map((r) => Math.max(r.raw_ref_count, r.raw_cite_count)));

  for (const row of bars.rows) {
    const rowEl = document.createElement("div");
    rowEl.className = row.in_flower ? "bar-row in-flower" : "bar-row";
    rowEl.dataset.alterId = row.alter_id;

    const label = document.createElement("span");
    label.className = "bar-label";
    label.textContent = row.label;
    rowEl.appendChild(label);

    // blue bar: references the ego made to this alter (incoming influence)
    const refBar = document.createElement("span");
    refBar.className = "bar bar-ref";
    refBar.style.width = `${(100 * row.raw_ref_count) / maxCount}%`;
    refBar.title = `${row.raw_ref_count} references`;
    rowEl.appendChild(refBar);

    const refCount = document.createElement("span");
    refCount.className = "bar-count";
    refCount.textContent = String(row.raw_ref_count);
    rowEl.appendChild(refCount);

    // red bar: citations the ego received from this alter (outgoing influence)
    const citeBar = document.createElement("span");
    citeBar.className = "bar bar-cite";
    citeBar.style.width = `${(100 * row.raw_cite_count) / maxCount}%`;
    citeBar.title = `${row.raw_cite_count} citations`;
    rowEl.appendChild(citeBar);

    const citeCount = document.createElement("span");
    citeCount.className = "bar-count";
    citeCount.textContent = String(row.raw_cite_count);
    rowEl.appendChild(citeCount);

    rowEl.addEventListener("mouseenter", () => hooks.onRowHover?.(row.alter_id));
    rowEl.addEventListener("mouseleave", () => hooks.onRowHover?.(null));
    wrap.appendChild(rowEl);
  }
  container.replaceChildren(wrap);
}

export function highlightBarRow(container: HTMLElement,
                                alterId: string | null): void {
  for (const row of container.querySelectorAll<HTMLElement>(".bar-row")) {
    row.classList.toggle("highlight",
      alterId !== null && row.dataset.alterId === alterId);
  }
}
