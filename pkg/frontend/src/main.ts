// Hash router tying the four pages together.
//   #/search                      entity search and curation
//   #/flower?config=TOKEN         the flower page (token optional via "go")
//   #/detail?config=TOKEN&alter=  paper pairs behind one petal
//   #/gallery                     curated flowers

import { ApiClient, decodeConfigToken } from "./api.js";
import { renderDetailView } from "./detailView.js";
import { renderFlowerView } from "./flowerView.js";
import { renderGalleryView } from "./galleryView.js";
import { renderSearchView } from "./searchView.js";
import { fromConfigBody, setCuration, initialState, type UiState } from "./state.js";

const api = new ApiClient();
let flowerState: UiState = initialState();

function route(): { page: string; params: URLSearchParams } {
  const hash = location.hash.replace(/^#\/?/, "");
  const [page, query] = hash.split("?", 2);
  return { page: page || "search", params: new URLSearchParams(query ?? "") };
}

function goto(hash: string): void {
  location.hash = hash;
}

function render(): void {
  const root = document.getElementById("app");
  if (!root) return;
  const { page, params } = route();

  if (page === "flower") {
    const token = params.get("config");
    if (token) flowerState = fromConfigBody(decodeConfigToken(token));
    if (!flowerState.members.length) {
      goto("/search");
      return;
    }
    renderFlowerView(root, api, flowerState,
      (configToken, alterId) =>
        goto(`/detail?config=${configToken}&alter=${encodeURIComponent(alterId)}`));
  } else if (page === "detail") {
    const token = params.get("config") ?? "";
    const alter = params.get("alter") ?? "";
    void renderDetailView(root, api, token, alter,
      () => goto(`/flower?config=${token}`));
  } else if (page === "gallery") {
    void renderGalleryView(root, api, (token) => goto(`/flower?config=${token}`));
  } else {
    renderSearchView(root, api, (items, displayName) => {
      flowerState = setCuration(initialState(), items, displayName);
      goto("/flower");
    });
  }

  for (const link of document.querySelectorAll<HTMLAnchorElement>("nav.top a")) {
    link.classList.toggle("active", link.hash === `#/${page}`);
  }
}

window.addEventListener("hashchange", render);
window.addEventListener("DOMContentLoaded", render);
