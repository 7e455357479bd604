"""Flower geometry: spans, colors, widths, layout, contrast, bars, SVG."""

import math
import random

import pytest

from influenceflower.flowergeom import (
    BLUE_END,
    RED_END,
    DisplayParams,
    angular_span,
    color_hex,
    compose_contrast,
    edge_width,
    layout_flower,
    node_color,
    overview_bars,
    petal_angles,
)
from influenceflower.influence import (
    AlterScore,
    InfluenceConfig,
    InfluenceProfile,
    compute_profile,
    select_alters,
    sort_alters,
)
from influenceflower.svgrender import render_svg


def names(eid, kind):
    return f"{kind} {eid}"


class TestAngularSpan:
    def test_endpoints(self):
        assert angular_span(50) == 270.0
        assert angular_span(25) == 180.0
        assert angular_span(10) == 180.0
        assert angular_span(5) == 90.0

    def test_monotone_on_full_range(self):
        spans = [angular_span(n) for n in range(1, 51)]
        assert all(b >= a for a, b in zip(spans, spans[1:]))
        assert spans[-1] == 270.0

    def test_clamped_outside_range(self):
        assert angular_span(0) == angular_span(1) == 18.0
        assert angular_span(99) == 270.0

    def test_continuous_at_ten(self):
        assert angular_span(9) == pytest.approx(162.0)
        assert angular_span(10) == 180.0


class TestNodeColor:
    def test_balanced_is_midpoint(self):
        assert node_color(3.5, 3.5) == 0.5

    def test_pure_incoming_is_blue_end(self):
        assert node_color(1.0, 0.0) == 0.0
        assert color_hex(0.0) == BLUE_END == "#053061"

    def test_pure_outgoing_is_red_end(self):
        assert node_color(0.0, 1.0) == 1.0
        assert color_hex(1.0) == RED_END == "#67001f"

    def test_antisymmetry(self):
        rng = random.Random(19)
        for _ in range(1000):
            a, b = rng.uniform(0, 100), rng.uniform(0, 100)
            if a + b == 0:
                continue
            assert node_color(a, b) == pytest.approx(1.0 - node_color(b, a), abs=1e-12)

    def test_scale_invariance(self):
        rng = random.Random(23)
        for _ in range(200):
            a, b = rng.uniform(0.01, 10), rng.uniform(0.01, 10)
            k = rng.uniform(0.1, 50)
            assert node_color(a, b) == pytest.approx(node_color(k * a, k * b), abs=1e-12)

    def test_midpoint_is_off_white(self):
        assert color_hex(0.5) == "#f7f7f7"


class TestEdgeWidth:
    def test_equal_scores_get_midpoint_width(self):
        displayed = [2.0, 2.0, 2.0]
        widths = {edge_width(s, displayed, 1, 10) for s in displayed}
        assert widths == {5.5}

    def test_zero_score_is_omitted(self):
        assert edge_width(0.0, [0.0, 1.0], 1, 10) == 0.0

    def test_log_map_endpoints(self):
        scores = [math.e - 1, math.e ** 2 - 1]
        assert edge_width(scores[0], scores, 1, 10) == pytest.approx(1.0)
        assert edge_width(scores[1], scores, 1, 10) == pytest.approx(10.0)


class TestLayout:
    @staticmethod
    def profile_of(scores: dict) -> InfluenceProfile:
        return InfluenceProfile("author", {
            eid: AlterScore(in_score=i, out_score=o) for eid, (i, o) in scores.items()
        }, 1)

    def test_two_petal_angles(self):
        assert petal_angles(2) == [72.0, 108.0]

    def test_single_petal_centered(self):
        assert petal_angles(1) == [90.0]

    def test_angles_strictly_increasing_and_even(self):
        for n in (3, 10, 25, 50):
            angles = petal_angles(n)
            gaps = [b - a for a, b in zip(angles, angles[1:])]
            assert all(g > 0 for g in gaps)
            assert max(gaps) - min(gaps) < 1e-9

    def test_largest_alter_has_ego_radius(self):
        profile = self.profile_of({"X": (5, 5), "Y": (1, 0)})
        layout = layout_flower(profile, ["X", "Y"], "ego", names)
        params = DisplayParams()
        by_id = {p.alter_id: p for p in layout.petals}
        assert by_id["X"].node_radius == params.node_radius_max == layout.ego_radius
        assert by_id["Y"].node_radius == params.node_radius_min

    def test_all_equal_totals_all_max_radius(self):
        profile = self.profile_of({"X": (1, 1), "Y": (2, 0)})
        layout = layout_flower(profile, ["X", "Y"], "ego", names)
        assert {p.node_radius for p in layout.petals} == {DisplayParams().node_radius_max}

    def test_empty_alter_list_is_ego_only(self):
        layout = layout_flower(self.profile_of({}), [], "ego", names)
        assert layout.petals == ()

    def test_width_positive_iff_score_positive(self):
        profile = self.profile_of({"X": (2, 0), "Y": (1, 3)})
        layout = layout_flower(profile, ["X", "Y"], "ego", names)
        for petal in layout.petals:
            assert (petal.in_width > 0) == (petal.in_score > 0)
            assert (petal.out_width > 0) == (petal.out_score > 0)

    def test_m1_author_flower(self, m1, m1_store, ego_a1):
        cfg = InfluenceConfig(alter_kind="author")
        profile = compute_profile(ego_a1, cfg, m1_store)
        ordered = sort_alters(profile, select_alters(profile, 25), "ratio")
        layout = layout_flower(profile, ordered, "Ada Lovelace", m1.name_of)
        assert [p.alter_id for p in layout.petals] == ["A2", "A3"]
        assert layout.petals[0].color_t == 0.0       # in 0.5 / out 0 -> pure blue
        assert layout.petals[1].color_t == 0.5       # in 1.0 / out 1.0 -> balanced
        assert all(p.greyed for p in layout.petals)  # both share a paper with A1
        assert [p.angle for p in layout.petals] == [72.0, 108.0]

    def test_ratio_sort_order_invariant_under_scaling(self):
        rng = random.Random(41)
        scores = {f"E{i}": (rng.uniform(0, 5), rng.uniform(0, 5)) for i in range(8)}
        profile = self.profile_of(scores)
        base = sort_alters(profile, list(scores), "ratio")
        scaled = self.profile_of({e: (3.7 * i, 3.7 * o) for e, (i, o) in scores.items()})
        assert sort_alters(scaled, list(scores), "ratio") == base


class TestContrast:
    @staticmethod
    def layouts(anchor_scores, contrast_scores):
        anchor = TestLayout.profile_of(anchor_scores)
        contrast = TestLayout.profile_of(contrast_scores)
        ordered = select_alters(anchor, 25)
        layout = layout_flower(anchor, ordered, "ego", names)
        return layout, compose_contrast(layout, contrast)

    def test_identical_period_reproduces_anchor(self):
        scores = {"X": (2.0, 1.0), "Y": (0.5, 3.0)}
        layout, contrast = self.layouts(scores, scores)
        for base, over in zip(layout.petals, contrast.overlay):
            assert over.present
            assert over.node_radius == pytest.approx(base.node_radius)
            assert over.in_width == pytest.approx(base.in_width)
            assert over.out_width == pytest.approx(base.out_width)
            assert over.color_t == pytest.approx(base.color_t)

    def test_zero_activity_means_absent(self):
        layout, contrast = self.layouts({"X": (2.0, 1.0)}, {})
        assert [o.present for o in contrast.overlay] == [False]
        assert contrast.overlay[0].node_radius == 0.0

    def test_half_score_halves_width(self):
        layout, contrast = self.layouts({"X": (2.0, 0.0)}, {"X": (1.0, 0.0)})
        assert contrast.overlay[0].in_width == pytest.approx(
            layout.petals[0].in_width / 2)

    def test_overlay_subset_and_bounded(self):
        layout, contrast = self.layouts(
            {"X": (2.0, 1.0), "Y": (1.0, 1.0)}, {"X": (1.0, 0.5)})
        present = [o.alter_id for o in contrast.overlay if o.present]
        assert present == ["X"]
        for base, over in zip(layout.petals, contrast.overlay):
            assert over.node_radius <= base.node_radius + 1e-12
            assert over.in_width <= base.in_width + 1e-12
            assert over.out_width <= base.out_width + 1e-12


class TestOverviewBars:
    @staticmethod
    def big_profile(n=60):
        return InfluenceProfile("author", {
            f"E{i:03d}": AlterScore(in_score=float(n - i), out_score=0.5,
                                    raw_ref_count=i % 4, raw_cite_count=i % 3)
            for i in range(n)
        }, 1)

    def test_caps_at_fifty_rows(self):
        profile = self.big_profile(60)
        bars = overview_bars(profile, {"E000"}, names)
        assert len(bars.rows) == 50
        assert bars.total_alters == 60

    def test_in_flower_flags_match_petals(self):
        profile = self.big_profile(60)
        petals = set(select_alters(profile, 25))
        bars = overview_bars(profile, petals, names)
        flagged = {r.alter_id for r in bars.rows if r.in_flower}
        assert flagged == petals

    def test_fewer_than_fifty_lists_all(self):
        profile = self.big_profile(7)
        bars = overview_bars(profile, set(), names)
        assert len(bars.rows) == 7

    def test_rows_carry_absolute_counts(self):
        profile = InfluenceProfile("author", {
            "X": AlterScore(in_score=1, out_score=0, raw_ref_count=3, raw_cite_count=0),
        }, 1)
        bars = overview_bars(profile, set(), names)
        assert (bars.rows[0].raw_ref_count, bars.rows[0].raw_cite_count) == (3, 0)


class TestSvg:
    def test_rerender_is_byte_identical(self, m1, m1_store, ego_a1):
        cfg = InfluenceConfig(alter_kind="author")
        profile = compute_profile(ego_a1, cfg, m1_store)
        ordered = sort_alters(profile, select_alters(profile, 25), "ratio")
        layout = layout_flower(profile, ordered, "Ada Lovelace", m1.name_of)
        assert render_svg(layout).encode() == render_svg(layout).encode()

    def test_ego_only_layout_has_one_white_node(self):
        layout = layout_flower(TestLayout.profile_of({}), [], "solo", names)
        svg = render_svg(layout)
        assert svg.count("<circle") == 1
        assert 'fill="#ffffff"' in svg

    def test_m1_flower_has_two_petals_three_edges(self, m1, m1_store, ego_a1):
        cfg = InfluenceConfig(alter_kind="author")
        profile = compute_profile(ego_a1, cfg, m1_store)
        ordered = sort_alters(profile, select_alters(profile, 25), "ratio")
        layout = layout_flower(profile, ordered, "Ada Lovelace", m1.name_of)
        svg = render_svg(layout)
        assert svg.count("<circle") == 3  # ego + 2 alters
        # A2 has no outgoing edge, so: A2 in, A3 in, A3 out
        assert svg.count('marker-end="url(#arrow-in)"') == 2
        assert svg.count('marker-end="url(#arrow-out)"') == 1

    def test_contrast_render_marks_anchor_grey(self):
        layout, contrast = TestContrast.layouts(
            {"X": (2.0, 1.0), "Y": (1.0, 1.0)}, {"X": (1.0, 0.5)})
        svg = render_svg(contrast)
        assert "#c4c4c4" in svg  # greyed anchor edges
        assert svg.count("<circle") == 4  # 2 anchor nodes + 1 overlay + ego

    def test_labels_are_escaped(self):
        profile = TestLayout.profile_of({"X": (1.0, 0.0)})
        layout = layout_flower(profile, ["X"], 'R&D <"flowers">', names)
        svg = render_svg(layout)
        assert "R&amp;D &lt;&quot;flowers&quot;&gt;" in svg
