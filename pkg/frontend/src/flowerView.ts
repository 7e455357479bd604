// Flower page: year-range filter and stats (left), fine-grained controls,
// influence type tabs, the flower itself, and the overview bars (right).
//
// Fine-grain changes apply only when "update flower" is pressed, and one
// press issues exactly one flower request.  Dragging the publication slider
// refreshes the stats panel (so the citation chart is recalculated for the
// chosen publication window) without redrawing the flower.

import { ApiClient } from "./api.js";
import { highlightBarRow, renderBars } from "./bars.js";
import { highlightPetal, renderFlower } from "./flowerRender.js";
import { renderYearFilter } from "./histogram.js";
import { switchTab, toConfigBody, type UiState } from "./state.js";
import type { AlterKind, FlowerResponse, SortMode } from "./types.js";

const TABS: AlterKind[] = ["author", "venue", "institution", "topic"];
const SORTS: SortMode[] = ["ratio", "influenced_by", "influencing", "total"];

export interface FlowerViewHandles {
  update: () => Promise<void>;
  state: () => UiState;
  lastResponse: () => FlowerResponse | null;
}

export function renderFlowerView(
  root: HTMLElement, api: ApiClient, initial: UiState,
  onDetail: (configToken: string, alterId: string) => void,
): FlowerViewHandles {
  let state = initial;
  let response: FlowerResponse | null = null;
  let flowerSvg: SVGSVGElement | null = null;

  root.replaceChildren();
  root.className = "flower-view";

  const left = document.createElement("aside");
  left.className = "left-panel";
  const yearPanel = document.createElement("section");
  const controls = document.createElement("section");
  controls.className = "fine-controls";
  left.append(yearPanel, controls);

  const middle = document.createElement("main");
  middle.className = "flower-panel";
  const tabBar = document.createElement("nav");
  tabBar.className = "tabs";
  const flowerBox = document.createElement("div");
  flowerBox.className = "flower-box";
  const linkBox = document.createElement("div");
  linkBox.className = "config-link-box";
  middle.append(tabBar, flowerBox, linkBox);

  const right = document.createElement("aside");
  right.className = "bars-panel";

  root.append(left, middle, right);

  // -- fine-grained controls (apply on "update flower" only) ---------------

  const petalsInput = document.createElement("input");
  petalsInput.type = "number";
  petalsInput.min = "1";
  petalsInput.max = "50";

  const sortSelect = document.createElement("select");
  for (const mode of SORTS) {
    const option = document.createElement("option");
    option.value = mode;
    option.textContent = mode.replace("_", " ");
    sortSelect.appendChild(option);
  }

  const selfBox = document.createElement("input");
  selfBox.type = "checkbox";
  const coBox = document.createElement("input");
  coBox.type = "checkbox";
  const anchorBox = document.createElement("input");
  anchorBox.type = "checkbox";

  const updateButton = document.createElement("button");
  updateButton.className = "update-flower";
  updateButton.textContent = "update flower";

  function labelled(text: string, input: HTMLElement): HTMLLabelElement {
    const label = document.createElement("label");
    label.append(input, text);
    return label;
  }
  controls.append(
    labelled("petals", petalsInput),
    labelled("sort", sortSelect),
    labelled("include self-citations", selfBox),
    labelled("exclude co-contributors", coBox),
    labelled("compare with anchor", anchorBox),
    updateButton,
  );

  function syncControls(): void {
    petalsInput.value = String(state.petalCount);
    sortSelect.value = state.sortMode;
    selfBox.checked = state.selfCitations;
    coBox.checked = state.excludeCoContributors;
    anchorBox.checked = state.compareWithAnchor;
  }
  syncControls();

  function readControls(): void {
    state = {
      ...state,
      petalCount: Number(petalsInput.value) || state.petalCount,
      sortMode: (sortSelect.value as SortMode) ?? state.sortMode,
      selfCitations: selfBox.checked,
      excludeCoContributors: coBox.checked,
      compareWithAnchor: anchorBox.checked,
      contrastPub: anchorBox.checked ? state.contrastPub ?? state.pubRange : null,
      contrastCite: anchorBox.checked ? state.contrastCite : null,
    };
  }

  // -- influence type tabs --------------------------------------------------

  function drawTabs(): void {
    tabBar.replaceChildren();
    for (const kind of TABS) {
      const tab = document.createElement("button");
      tab.className = kind === state.alterKind ? "tab active" : "tab";
      tab.textContent = kind;
      tab.dataset.kind = kind;
      tab.addEventListener("click", () => {
        // keep year ranges and filters across tabs
        state = switchTab(state, kind);
        void update();
      });
      tabBar.appendChild(tab);
    }
  }

  // -- wiring ---------------------------------------------------------------

  function crossHighlight(alterId: string | null): void {
    if (flowerSvg) highlightPetal(flowerSvg, alterId);
    highlightBarRow(right, alterId);
  }

  function drawResponse(): void {
    if (!response) return;
    flowerSvg = renderFlower(flowerBox, response.layout, {
      onPetalHover: crossHighlight,
      onPetalClick: (alterId) => onDetail(response!.config_link, alterId),
    });
    renderBars(right, response.bars, { onRowHover: crossHighlight });
    renderYearFilter(yearPanel, response.stats, state.pubRange, state.citeRange, {
      onPubRange: (range) => {
        state = { ...state, pubRange: range };
        void refreshStats();
      },
      onCiteRange: (range) => {
        state = { ...state, citeRange: range };
      },
    });
    linkBox.replaceChildren();
    const copy = document.createElement("button");
    copy.className = "copy-config";
    copy.textContent = "copy config";
    const link = document.createElement("code");
    link.className = "config-link";
    link.textContent = `#/flower?config=${response.config_link}`;
    copy.addEventListener("click", () => {
      void navigator.clipboard?.writeText(
        `${location.origin}${location.pathname}#/flower?config=${response!.config_link}`);
    });
    linkBox.append(copy, link);
    drawTabs();
  }

  // slider release: refresh histograms and the stats summary only
  async function refreshStats(): Promise<void> {
    const fresh = await api.flower(toConfigBody(state));
    renderYearFilter(yearPanel, fresh.stats, state.pubRange, state.citeRange, {
      onPubRange: (range) => {
        state = { ...state, pubRange: range };
        void refreshStats();
      },
      onCiteRange: (range) => {
        state = { ...state, citeRange: range };
      },
    });
  }

  async function update(): Promise<void> {
    response = await api.flower(toConfigBody(state));
    drawResponse();
    syncControls();
  }

  updateButton.addEventListener("click", () => {
    readControls();
    void update();  // exactly one flower request per press
  });

  drawTabs();
  void update();

  return {
    update,
    state: () => state,
    lastResponse: () => response,
  };
}
