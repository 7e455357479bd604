"""Render-ready flower geometry: angles, node sizes, colors, edge widths.

A flower places the ego in the centre and the ordered alters evenly along an
upward arc, read left to right.  Petal node color encodes the influence
ratio on a blue-to-red axis (#053061 at pure incoming, #67001f at pure
outgoing), node size the total influence, and edge widths the log-normalized
per-direction scores.  A contrast layout overlays a sub-period flower on a
greyed anchor flower, keeping the anchor's order, positions, and scale.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Optional

from .influence import InfluenceProfile, influence_ratio

BLUE_END = "#053061"
RED_END = "#67001f"
MID_COLOR = "#f7f7f7"

MAX_PETALS = 50
BASE_SPAN = 180.0
MAX_SPAN = 270.0


@dataclass(frozen=True)
class DisplayParams:
    """Display-scale parameters; geometry is resolution independent."""

    node_radius_min: float = 4.0
    node_radius_max: float = 14.0
    edge_width_min: float = 1.0
    edge_width_max: float = 10.0


def angular_span(n_petals: int) -> float:
    """Arc span in degrees for a petal count (clamped to 1..50).

    Grows 18 degrees per petal up to the 180-degree base span at 10 petals,
    holds there through 25, then widens linearly to the 270-degree maximum
    at 50.
    """
    n = min(max(n_petals, 1), MAX_PETALS)
    if n < 10:
        return 18.0 * n
    if n <= 25:
        return BASE_SPAN
    return BASE_SPAN + (MAX_SPAN - BASE_SPAN) * (n - 25) / 25.0


def node_color(in_score: float, out_score: float) -> float:
    """Position on the blue-to-red axis in [0, 1].

    0 means purely incoming influence (blue), 1 purely outgoing (red),
    0.5 the balanced off-white midpoint.
    """
    ratio = influence_ratio(in_score, out_score)
    return (1.0 - ratio) / 2.0


def _hex_to_rgb(value: str) -> tuple[int, int, int]:
    return int(value[1:3], 16), int(value[3:5], 16), int(value[5:7], 16)


def color_hex(t: float) -> str:
    """Hex color for a ramp position, piecewise linear through off-white."""
    t = min(max(t, 0.0), 1.0)
    if t <= 0.5:
        lo, hi = _hex_to_rgb(BLUE_END), _hex_to_rgb(MID_COLOR)
        frac = t / 0.5
    else:
        lo, hi = _hex_to_rgb(MID_COLOR), _hex_to_rgb(RED_END)
        frac = (t - 0.5) / 0.5
    channels = (round(l + (h - l) * frac) for l, h in zip(lo, hi))
    return "#" + "".join(f"{c:02x}" for c in channels)


def edge_width(score: float, displayed_scores, wmin: float = 1.0,
               wmax: float = 10.0) -> float:
    """Log-normalized display width for one edge.

    ``displayed_scores`` are all scores drawn in the same flower; widths
    min-max normalize ln(1+score) over the nonzero ones.  A zero score has
    width 0 (the edge is omitted); when every displayed score is equal the
    width is the midpoint of the range.
    """
    if score <= 0:
        return 0.0
    logs = [math.log1p(s) for s in displayed_scores if s > 0]
    if not logs:
        return (wmin + wmax) / 2.0
    lo, hi = min(logs), max(logs)
    if hi == lo:
        return (wmin + wmax) / 2.0
    return wmin + (wmax - wmin) * (math.log1p(score) - lo) / (hi - lo)


@dataclass(frozen=True)
class Petal:
    alter_id: str
    label: str
    greyed: bool
    angle: float
    node_radius: float
    color_t: float
    in_width: float
    out_width: float
    in_score: float
    out_score: float

    def to_dict(self) -> dict:
        return {
            "alter_id": self.alter_id,
            "label": self.label,
            "greyed": self.greyed,
            "angle": self.angle,
            "node_radius": self.node_radius,
            "color_t": self.color_t,
            "color": color_hex(self.color_t),
            "in_width": self.in_width,
            "out_width": self.out_width,
            "in_score": self.in_score,
            "out_score": self.out_score,
        }


@dataclass(frozen=True)
class FlowerLayout:
    """Everything a renderer needs: the ego node plus ordered petals."""

    ego_label: str
    ego_radius: float
    span: float
    petals: tuple[Petal, ...]
    params: DisplayParams = field(default_factory=DisplayParams)

    def to_dict(self) -> dict:
        return {
            "type": "flower",
            "ego": {"label": self.ego_label, "radius": self.ego_radius,
                    "color": "#ffffff"},
            "span": self.span,
            "petals": [p.to_dict() for p in self.petals],
        }


@dataclass(frozen=True)
class OverlayPetal:
    alter_id: str
    present: bool
    node_radius: float
    in_width: float
    out_width: float
    color_t: Optional[float]
    in_score: float
    out_score: float

    def to_dict(self) -> dict:
        return {
            "alter_id": self.alter_id,
            "present": self.present,
            "node_radius": self.node_radius,
            "in_width": self.in_width,
            "out_width": self.out_width,
            "color_t": self.color_t,
            "color": color_hex(self.color_t) if self.color_t is not None else None,
            "in_score": self.in_score,
            "out_score": self.out_score,
        }


@dataclass(frozen=True)
class ContrastLayout:
    """A sub-period overlay drawn on a greyed anchor flower."""

    anchor: FlowerLayout
    overlay: tuple[OverlayPetal, ...]

    def to_dict(self) -> dict:
        return {
            "type": "contrast",
            "anchor": self.anchor.to_dict(),
            "overlay": [p.to_dict() for p in self.overlay],
        }


@dataclass(frozen=True)
class BarRow:
    alter_id: str
    label: str
    raw_ref_count: int
    raw_cite_count: int
    in_flower: bool

    def to_dict(self) -> dict:
        return {
            "alter_id": self.alter_id,
            "label": self.label,
            "raw_ref_count": self.raw_ref_count,
            "raw_cite_count": self.raw_cite_count,
            "in_flower": self.in_flower,
        }


@dataclass(frozen=True)
class OverviewBars:
    """Absolute reference/citation counts for the top alters."""

    rows: tuple[BarRow, ...]
    total_alters: int

    def to_dict(self) -> dict:
        return {
            "total_alters": self.total_alters,
            "rows": [r.to_dict() for r in self.rows],
        }


def petal_angles(n: int) -> list[float]:
    """Evenly spaced angles over the arc, left to right; one petal sits at 90."""
    if n <= 0:
        return []
    if n == 1:
        return [90.0]
    span = angular_span(n)
    return [90.0 - span / 2.0 + span * i / (n - 1) for i in range(n)]


def layout_flower(profile: InfluenceProfile, ordered_ids: list[str],
                  ego_label: str, name_of: Callable[[str, str], str],
                  params: DisplayParams = DisplayParams()) -> FlowerLayout:
    """Build the flower geometry for an ordered alter list.

    The largest alter (by total influence) shares the ego's maximum node
    radius; remaining totals map linearly down to the minimum radius.  Edge
    widths are normalized over every nonzero score displayed in this flower.
    """
    n = len(ordered_ids)
    angles = petal_angles(n)
    span = angular_span(n) if n else 0.0

    totals = [profile.alters[e].total for e in ordered_ids]
    displayed = []
    for entity_id in ordered_ids:
        score = profile.alters[entity_id]
        displayed.extend([score.in_score, score.out_score])

    t_min = min(totals) if totals else 0.0
    t_max = max(totals) if totals else 0.0

    def radius(total: float) -> float:
        if t_max == t_min:
            return params.node_radius_max
        frac = (total - t_min) / (t_max - t_min)
        return params.node_radius_min + \
            (params.node_radius_max - params.node_radius_min) * frac

    petals = []
    for i, entity_id in enumerate(ordered_ids):
        score = profile.alters[entity_id]
        petals.append(Petal(
            alter_id=entity_id,
            label=name_of(entity_id, profile.alter_kind),
            greyed=score.co_contributor,
            angle=angles[i],
            node_radius=radius(score.total),
            color_t=node_color(score.in_score, score.out_score),
            in_width=edge_width(score.in_score, displayed,
                                params.edge_width_min, params.edge_width_max),
            out_width=edge_width(score.out_score, displayed,
                                 params.edge_width_min, params.edge_width_max),
            in_score=score.in_score,
            out_score=score.out_score,
        ))
    return FlowerLayout(ego_label, params.node_radius_max, span, tuple(petals), params)


def compose_contrast(anchor_layout: FlowerLayout,
                     contrast_profile: InfluenceProfile) -> ContrastLayout:
    """Overlay a sub-period profile on its anchor flower.

    Node order and positions stay fixed by the anchor; each overlay node and
    edge scales the anchor's display size by the ratio of contrast to anchor
    score.  Alters with no influence in the contrast period are absent.
    """
    overlay = []
    for petal in anchor_layout.petals:
        score = contrast_profile.alters.get(petal.alter_id)
        in_c = score.in_score if score else 0.0
        out_c = score.out_score if score else 0.0
        total_c = in_c + out_c
        total_a = petal.in_score + petal.out_score
        present = total_c > 0
        overlay.append(OverlayPetal(
            alter_id=petal.alter_id,
            present=present,
            node_radius=petal.node_radius * (total_c / total_a) if total_a > 0 else 0.0,
            in_width=petal.in_width * (in_c / petal.in_score) if petal.in_score > 0 else 0.0,
            out_width=petal.out_width * (out_c / petal.out_score) if petal.out_score > 0 else 0.0,
            color_t=node_color(in_c, out_c) if present else None,
            in_score=in_c,
            out_score=out_c,
        ))
    return ContrastLayout(anchor_layout, tuple(overlay))


def overview_bars(profile: InfluenceProfile, petal_ids,
                  name_of: Callable[[str, str], str],
                  limit: int = 50) -> OverviewBars:
    """Top alters by peak influence with their absolute raw counts.

    Rows flagged ``in_flower`` correspond to petals; the rest give context
    the flower leaves out.
    """
    in_flower = set(petal_ids)
    ranked = sorted(profile.alters.items(),
                    key=lambda item: (-item[1].peak, -item[1].total, item[0]))
    rows = tuple(
        BarRow(entity_id, name_of(entity_id, profile.alter_kind),
               score.raw_ref_count, score.raw_cite_count, entity_id in in_flower)
        for entity_id, score in ranked[:limit]
    )
    return OverviewBars(rows, len(profile.alters))
