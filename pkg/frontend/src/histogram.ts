// Year-range filter: publication (green) and citation (orange) charts that
// share one x-axis, each with a lo/hi slider pair.  Sliders recompute on
// release, not on every drag tick.

import type { StatsPayload, YearRange } from "./types.js";

export interface YearFilterHooks {
  // fired on slider release; the flower itself waits for "update flower"
  onPubRange?: (range: YearRange) => void;
  onCiteRange?: (range: YearRange) => void;
}

function sharedDomain(stats: StatsPayload): [number, number] {
  const years = [
    ...stats.pub_histogram.map(([y]) => y),
    ...stats.cite_histogram.map(([y]) => y),
  ];
  if (!years.length) return [1900, 2030];
  return [Math.min(...years), Math.max(...years)];
}

function chart(title: string, className: string, bins: [number, number][],
               domain: [number, number]): HTMLElement {
  const box = document.createElement("div");
  box.className = `year-chart ${className}`;
  const head = document.createElement("div");
  head.className = "chart-title";
  head.textContent = title;
  box.appendChild(head);

  const area = document.createElement("div");
  area.className = "chart-area";
  const counts = new Map(bins);
  const maxCount = Math.max(1, ...bins.map(([, c]) => c));
  for (let year = domain[0]; year <= domain[1]; year++) {
    const bar = document.createElement("span");
    bar.className = "year-bar";
    const count = counts.get(year) ?? 0;
    bar.style.height = `${(100 * count) / maxCount}%`;
    bar.title = `${year}: ${count}`;
    bar.dataset.year = String(year);
    area.appendChild(bar);
  }
  box.appendChild(area);
  return box;
}

function sliderPair(domain: [number, number], value: YearRange,
                    onRelease: (range: YearRange) => void): HTMLElement {
  const wrap = document.createElement("div");
  wrap.className = "slider-pair";
  const lo = document.createElement("input");
  const hi = document.createElement("input");
  for (const input of [lo, hi]) {
    input.type = "range";
    input.min = String(domain[0]);
    input.max = String(domain[1]);
  }
  lo.value = String(value[0]);
  hi.value = String(value[1]);
  const readout = document.createElement("span");
  readout.className = "slider-readout";

  const current = (): YearRange => {
    let a = Number(lo.value);
    let b = Number(hi.value);
    if (a > b) [a, b] = [b, a];
    return [a, b];
  };
  const show = () => {
    const [a, b] = current();
    readout.textContent = `${a} – ${b}`;
  };
  show();
  for (const input of [lo, hi]) {
    input.addEventListener("input", show);          // live readout while dragging
    input.addEventListener("change", () => onRelease(current()));  // commit on release
  }
  wrap.append(lo, hi, readout);
  return wrap;
}

export function renderYearFilter(container: HTMLElement, stats: StatsPayload,
                                 pubRange: YearRange | null,
                                 citeRange: YearRange | null,
                                 hooks: YearFilterHooks = {}): void {
  const domain = sharedDomain(stats);
  const wrap = document.createElement("div");
  wrap.className = "year-filter";

  wrap.appendChild(chart("publications", "pub-chart", stats.pub_histogram, domain));
  wrap.appendChild(sliderPair(domain, pubRange ?? domain,
    (range) => hooks.onPubRange?.(range)));
  wrap.appendChild(chart("citations received", "cite-chart",
    stats.cite_histogram, domain));
  wrap.appendChild(sliderPair(domain, citeRange ?? domain,
    (range) => hooks.onCiteRange?.(range)));

  const summary = document.createElement("dl");
  summary.className = "stats-summary";
  const entries: [string, string][] = [
    ["papers", String(stats.papers)],
    ["references", `${stats.refs_total} total, ${stats.refs_avg.toFixed(2)} per paper`],
    ["citations", `${stats.cites_total} total, ${stats.cites_avg.toFixed(2)} per paper`],
  ];
  for (const [term, value] of entries) {
    const dt = document.createElement("dt");
    dt.textContent = term;
    const dd = document.createElement("dd");
    dd.textContent = value;
    summary.append(dt, dd);
  }
  wrap.appendChild(summary);
  container.replaceChildren(wrap);
}
