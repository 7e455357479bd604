// Gallery page: curated flowers grouped by category (left nav), each entry
// with a short description; clicking one opens its flower page.

import { ApiClient } from "./api.js";

export function renderGalleryView(root: HTMLElement, api: ApiClient,
                                  onOpen: (configToken: string) => void): Promise<void> {
  root.replaceChildren();
  root.className = "gallery-view";

  return api.gallery().then((gallery) => {
    const nav = document.createElement("nav");
    nav.className = "gallery-nav";
    const body = document.createElement("div");
    body.className = "gallery-body";
    root.append(nav, body);

    const sections = new Map<string, HTMLElement>();
    for (const category of gallery.categories) {
      const link = document.createElement("a");
      link.textContent = category.category;
      link.href = "#";
      link.addEventListener("click", (event) => {
        event.preventDefault();
        sections.get(category.category)?.scrollIntoView();
      });
      nav.appendChild(link);

      const section = document.createElement("section");
      const heading = document.createElement("h2");
      heading.textContent = category.category;
      section.appendChild(heading);
      for (const entry of category.entries) {
        const card = document.createElement("div");
        card.className = "gallery-card";
        const name = document.createElement("a");
        name.textContent = entry.name;
        name.href = `#/flower?config=${entry.config_token}`;
        name.addEventListener("click", (event) => {
          event.preventDefault();
          onOpen(entry.config_token);
        });
        const description = document.createElement("p");
        description.textContent = entry.description;
        card.append(name, description);
        section.appendChild(card);
      }
      sections.set(category.category, section);
      body.appendChild(section);
    }
    if (!gallery.categories.length) {
      const empty = document.createElement("p");
      empty.textContent = "no curated flowers yet";
      body.appendChild(empty);
    }
  });
}
