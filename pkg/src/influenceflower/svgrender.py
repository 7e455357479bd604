"""Standalone SVG 1.1 rendering of flower layouts.

Output is deterministic: the same layout always yields byte-identical
markup (fixed float formatting, no timestamps, stable element order).
Incoming edges are drawn in the blue family with the arrowhead at the ego,
outgoing edges in the red family with the arrowhead at the alter.
"""

from __future__ import annotations

import math
from typing import Union

from .flowergeom import ContrastLayout, FlowerLayout, Petal, color_hex

WIDTH = 900
HEIGHT = 700
CENTER_X = 450.0
CENTER_Y = 380.0
ARC_RADIUS = 280.0

IN_EDGE_COLOR = "#2166ac"
OUT_EDGE_COLOR = "#b2182b"
GREY_EDGE_COLOR = "#c4c4c4"
GREY_NODE_FILL = "#e0e0e0"
GREY_STROKE = "#b0b0b0"


def _esc(text: str) -> str:
    return (text.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;")
            .replace('"', "&quot;"))


def _fmt(value: float) -> str:
    return f"{value:.2f}"


def _petal_pos(angle_deg: float) -> tuple[float, float]:
    # x grows with the angle so petals read left to right over an upward arc
    rad = math.radians(angle_deg)
    return CENTER_X - ARC_RADIUS * math.cos(rad), CENTER_Y - ARC_RADIUS * math.sin(rad)


def _edge_path(src: tuple[float, float], dst: tuple[float, float],
               src_clear: float, dst_clear: float, bow: float) -> str:
    """Quadratic curve from src to dst, endpoints pulled clear of the nodes."""
    dx, dy = dst[0] - src[0], dst[1] - src[1]
    dist = math.hypot(dx, dy) or 1.0
    ux, uy = dx / dist, dy / dist
    x0, y0 = src[0] + ux * src_clear, src[1] + uy * src_clear
    x1, y1 = dst[0] - ux * dst_clear, dst[1] - uy * dst_clear
    mx, my = (x0 + x1) / 2.0, (y0 + y1) / 2.0
    # perpendicular offset gives the two edges of one petal their bow
    px, py = -uy, ux
    cx, cy = mx + px * bow * dist, my + py * bow * dist
    return (f"M {_fmt(x0)} {_fmt(y0)} Q {_fmt(cx)} {_fmt(cy)} "
            f"{_fmt(x1)} {_fmt(y1)}")


def _markers() -> str:
    marker = ('<marker id="{mid}" viewBox="0 0 10 10" refX="8" refY="5" '
              'markerWidth="5" markerHeight="5" orient="auto-start-reverse">'
              '<path d="M 0 0 L 10 5 L 0 10 z" fill="{color}"/></marker>')
    return "<defs>" + "".join((
        marker.format(mid="arrow-in", color=IN_EDGE_COLOR),
        marker.format(mid="arrow-out", color=OUT_EDGE_COLOR),
        marker.format(mid="arrow-grey", color=GREY_EDGE_COLOR),
    )) + "</defs>"


def _petal_edges(petal: Petal, in_width: float, out_width: float,
                 in_color: str, out_color: str, in_marker: str,
                 out_marker: str, ego_radius: float,
                 node_radius: float) -> list[str]:
    pos = _petal_pos(petal.angle)
    center = (CENTER_X, CENTER_Y)
    parts = []
    if in_width > 0:
        path = _edge_path(pos, center, node_radius + 2, ego_radius + 4, 0.12)
        parts.append(f'<path d="{path}" fill="none" stroke="{in_color}" '
                     f'stroke-width="{_fmt(in_width)}" marker-end="url(#{in_marker})"/>')
    if out_width > 0:
        path = _edge_path(center, pos, ego_radius + 2, node_radius + 4, 0.12)
        parts.append(f'<path d="{path}" fill="none" stroke="{out_color}" '
                     f'stroke-width="{_fmt(out_width)}" marker-end="url(#{out_marker})"/>')
    return parts


def _petal_node(petal: Petal, fill: str, stroke: str, label_fill: str) -> list[str]:
    x, y = _petal_pos(petal.angle)
    rad = math.radians(petal.angle)
    label_r = ARC_RADIUS + petal.node_radius + 10
    lx = CENTER_X - label_r * math.cos(rad)
    ly = CENTER_Y - label_r * math.sin(rad)
    if math.cos(rad) > 0.2:
        anchor = "end"
    elif math.cos(rad) < -0.2:
        anchor = "start"
    else:
        anchor = "middle"
    return [
        f'<circle cx="{_fmt(x)}" cy="{_fmt(y)}" r="{_fmt(petal.node_radius)}" '
        f'fill="{fill}" stroke="{stroke}" stroke-width="1"/>',
        f'<text x="{_fmt(lx)}" y="{_fmt(ly)}" text-anchor="{anchor}" '
        f'font-family="Helvetica, Arial, sans-serif" font-size="12" '
        f'fill="{label_fill}">{_esc(petal.label)}</text>',
    ]


def _ego_node(label: str, radius: float) -> list[str]:
    return [
        f'<circle cx="{_fmt(CENTER_X)}" cy="{_fmt(CENTER_Y)}" r="{_fmt(radius)}" '
        f'fill="#ffffff" stroke="#333333" stroke-width="1.5"/>',
        f'<text x="{_fmt(CENTER_X)}" y="{_fmt(CENTER_Y + radius + 18)}" '
        f'text-anchor="middle" font-family="Helvetica, Arial, sans-serif" '
        f'font-size="14" font-weight="bold" fill="#222222">{_esc(label)}</text>',
    ]


def _render_flower_body(layout: FlowerLayout, greyed: bool = False) -> list[str]:
    parts = []
    for petal in layout.petals:
        if greyed:
            parts.extend(_petal_edges(petal, petal.in_width, petal.out_width,
                                      GREY_EDGE_COLOR, GREY_EDGE_COLOR,
                                      "arrow-grey", "arrow-grey",
                                      layout.ego_radius, petal.node_radius))
        else:
            parts.extend(_petal_edges(petal, petal.in_width, petal.out_width,
                                      IN_EDGE_COLOR, OUT_EDGE_COLOR,
                                      "arrow-in", "arrow-out",
                                      layout.ego_radius, petal.node_radius))
    for petal in layout.petals:
        if greyed:
            parts.extend(_petal_node(petal, GREY_NODE_FILL, GREY_STROKE, "#bbbbbb"))
        else:
            label_fill = "#999999" if petal.greyed else "#222222"
            parts.extend(_petal_node(petal, color_hex(petal.color_t), "#555555",
                                     label_fill))
    return parts


def render_svg(layout: Union[FlowerLayout, ContrastLayout]) -> str:
    """Render a flower or contrast layout as a standalone SVG document."""
    parts = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">',
        _markers(),
        f'<rect x="0" y="0" width="{WIDTH}" height="{HEIGHT}" fill="#ffffff"/>',
    ]
    if isinstance(layout, ContrastLayout):
        anchor = layout.anchor
        parts.extend(_render_flower_body(anchor, greyed=True))
        anchor_petals = {p.alter_id: p for p in anchor.petals}
        for over in layout.overlay:
            if not over.present:
                continue
            base = anchor_petals[over.alter_id]
            parts.extend(_petal_edges(base, over.in_width, over.out_width,
                                      IN_EDGE_COLOR, OUT_EDGE_COLOR,
                                      "arrow-in", "arrow-out",
                                      anchor.ego_radius, over.node_radius))
        for over in layout.overlay:
            if not over.present:
                continue
            base = anchor_petals[over.alter_id]
            x, y = _petal_pos(base.angle)
            parts.append(
                f'<circle cx="{_fmt(x)}" cy="{_fmt(y)}" r="{_fmt(over.node_radius)}" '
                f'fill="{color_hex(over.color_t)}" stroke="#555555" stroke-width="1"/>')
        parts.extend(_ego_node(anchor.ego_label, anchor.ego_radius))
    else:
        parts.extend(_render_flower_body(layout))
        parts.extend(_ego_node(layout.ego_label, layout.ego_radius))
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
