// Render a layout payload as SVG DOM.  All visual quantities (angles,
// radii, widths, colors) come straight from the payload; this module only
// places them on screen.

import type {
  ContrastLayoutPayload,
  FlowerLayoutPayload,
  LayoutPayload,
  PetalPayload,
} from "./types.js";

const SVG_NS = "http://www.w3.org/2000/svg";
const WIDTH = 900;
const HEIGHT = 700;
const CX = 450;
const CY = 380;
const ARC_RADIUS = 280;

const IN_COLOR = "#2166ac";
const OUT_COLOR = "#b2182b";
const GREY = "#c4c4c4";

export interface FlowerHooks {
  onPetalHover?: (alterId: string | null) => void;
  onPetalClick?: (alterId: string) => void;
}

function el<K extends keyof SVGElementTagNameMap>(
  tag: K, attrs: Record<string, string | number>): SVGElementTagNameMap[K] {
  const node = document.createElementNS(SVG_NS, tag);
  for (const [key, value] of Object.entries(attrs)) {
    node.setAttribute(key, String(value));
  }
  return node;
}

function petalPosition(angleDeg: number, radius = ARC_RADIUS): [number, number] {
  const rad = (angleDeg * Math.PI) / 180;
  return [CX - radius * Math.cos(rad), CY - radius * Math.sin(rad)];
}

function edgePath(from: [number, number], to: [number, number],
                  fromClear: number, toClear: number): string {
  const dx = to[0] - from[0];
  const dy = to[1] - from[1];
  const dist = Math.hypot(dx, dy) || 1;
  const ux = dx / dist;
  const uy = dy / dist;
  const x0 = from[0] + ux * fromClear;
  const y0 = from[1] + uy * fromClear;
  const x1 = to[0] - ux * toClear;
  const y1 = to[1] - uy * toClear;
  const mx = (x0 + x1) / 2 - uy * 0.12 * dist;
  const my = (y0 + y1) / 2 + ux * 0.12 * dist;
  return `M ${x0.toFixed(2)} ${y0.toFixed(2)} Q ${mx.toFixed(2)} ${my.toFixed(2)} `
    + `${x1.toFixed(2)} ${y1.toFixed(2)}`;
}

function marker(id: string, color: string): SVGMarkerElement {
  const node = el("marker", {
    id, viewBox: "0 0 10 10", refX: 8, refY: 5,
    markerWidth: 5, markerHeight: 5, orient: "auto-start-reverse",
  });
  node.appendChild(el("path", { d: "M 0 0 L 10 5 L 0 10 z", fill: color }));
  return node;
}

function petalGroup(petal: PetalPayload, egoRadius: number, greyedOut: boolean,
                    hooks: FlowerHooks,
                    override?: { radius: number; inWidth: number;
                                 outWidth: number; color: string | null }): SVGGElement {
  const group = el("g", { class: "petal" });
  group.dataset.alterId = petal.alter_id;
  const pos = petalPosition(petal.angle);
  const center: [number, number] = [CX, CY];
  const radius = override ? override.radius : petal.node_radius;
  const inWidth = override ? override.inWidth : petal.in_width;
  const outWidth = override ? override.outWidth : petal.out_width;
  const fill = override ? override.color ?? GREY
    : greyedOut ? "#e0e0e0" : petal.color;

  if (inWidth > 0) {
    group.appendChild(el("path", {
      d: edgePath(pos, center, radius + 2, egoRadius + 4),
      fill: "none",
      stroke: greyedOut ? GREY : IN_COLOR,
      "stroke-width": inWidth.toFixed(2),
      "marker-end": greyedOut ? "url(#head-grey)" : "url(#head-in)",
      class: "edge edge-in",
    }));
  }
  if (outWidth > 0) {
    group.appendChild(el("path", {
      d: edgePath(center, pos, egoRadius + 2, radius + 4),
      fill: "none",
      stroke: greyedOut ? GREY : OUT_COLOR,
      "stroke-width": outWidth.toFixed(2),
      "marker-end": greyedOut ? "url(#head-grey)" : "url(#head-out)",
      class: "edge edge-out",
    }));
  }
  group.appendChild(el("circle", {
    cx: pos[0].toFixed(2), cy: pos[1].toFixed(2), r: radius.toFixed(2),
    fill, stroke: greyedOut ? "#b0b0b0" : "#555555", "stroke-width": 1,
    class: "petal-node",
  }));

  const [lx, ly] = petalPosition(petal.angle, ARC_RADIUS + radius + 12);
  const cos = Math.cos((petal.angle * Math.PI) / 180);
  const anchor = cos > 0.2 ? "end" : cos < -0.2 ? "start" : "middle";
  const label = el("text", {
    x: lx.toFixed(2), y: ly.toFixed(2), "text-anchor": anchor,
    class: greyedOut ? "label label-anchor"
      : petal.greyed ? "label label-grey" : "label",
  });
  label.textContent = petal.label;
  group.appendChild(label);

  if (!greyedOut) {
    group.addEventListener("mouseenter", () => hooks.onPetalHover?.(petal.alter_id));
    group.addEventListener("mouseleave", () => hooks.onPetalHover?.(null));
    group.addEventListener("click", () => hooks.onPetalClick?.(petal.alter_id));
  }
  return group;
}

function egoNode(layout: FlowerLayoutPayload): SVGGElement {
  const group = el("g", { class: "ego" });
  group.appendChild(el("circle", {
    cx: CX, cy: CY, r: layout.ego.radius.toFixed(2),
    fill: layout.ego.color, stroke: "#333333", "stroke-width": 1.5,
  }));
  const label = el("text", {
    x: CX, y: CY + layout.ego.radius + 18, "text-anchor": "middle",
    class: "label label-ego",
  });
  label.textContent = layout.ego.label;
  group.appendChild(label);
  return group;
}

export function renderFlower(container: HTMLElement, layout: LayoutPayload,
                             hooks: FlowerHooks = {}): SVGSVGElement {
  const svg = el("svg", {
    viewBox: `0 0 ${WIDTH} ${HEIGHT}`, width: WIDTH, height: HEIGHT,
    class: "flower",
  });
  const defs = el("defs", {});
  defs.appendChild(marker("head-in", IN_COLOR));
  defs.appendChild(marker("head-out", OUT_COLOR));
  defs.appendChild(marker("head-grey", GREY));
  svg.appendChild(defs);

  if (layout.type === "contrast") {
    renderContrast(svg, layout, hooks);
  } else {
    for (const petal of layout.petals) {
      svg.appendChild(petalGroup(petal, layout.ego.radius, false, hooks));
    }
    svg.appendChild(egoNode(layout));
  }
  container.replaceChildren(svg);
  return svg;
}

function renderContrast(svg: SVGSVGElement, layout: ContrastLayoutPayload,
                        hooks: FlowerHooks): void {
  const anchor = layout.anchor;
  for (const petal of anchor.petals) {
    svg.appendChild(petalGroup(petal, anchor.ego.radius, true, {}));
  }
  const anchorPetals = new Map(anchor.petals.map((p) => [p.alter_id, p]));
  for (const over of layout.overlay) {
    if (!over.present) continue;
    const base = anchorPetals.get(over.alter_id);
    if (!base) continue;
    svg.appendChild(petalGroup(base, anchor.ego.radius, false, hooks, {
      radius: over.node_radius,
      inWidth: over.in_width,
      outWidth: over.out_width,
      color: over.color,
    }));
  }
  svg.appendChild(egoNode(anchor));
}

// Hover cross-highlighting: mark exactly one petal group (and dim nothing
// else; the bar chart applies its own mark from the same alter id).
export function highlightPetal(svg: SVGSVGElement, alterId: string | null): void {
  for (const group of svg.querySelectorAll<SVGGElement>("g.petal")) {
    group.classList.toggle("highlight",
      alterId !== null && group.dataset.alterId === alterId);
  }
}
