"""Influence scoring: normalization, profiles, selection, details, stats.

Hand-derived expectations were computed with the dense-matrix oracle first
and frozen here; the oracle-equivalence sweep then checks the indexed engine
against the same oracle on random corpora.
"""

import math
import random

import pytest

from influenceflower.corpus import (
    Corpus,
    EntityRecord,
    EntitySelection,
    PaperRecord,
)
from influenceflower.indexstore import build_indexes
from influenceflower.influence import (
    InfluenceConfig,
    InfluenceProfile,
    AlterScore,
    compute_profile,
    detail_pairs,
    influence_ratio,
    is_co_contributor,
    normalization_weight,
    select_alters,
    sort_alters,
    summary_stats,
)
from influenceflower.oracle import brute_force_profile, profiles_match
from influenceflower.synth import EGO_KINDS, random_corpus, random_selection

AUTHOR_CFG = InfluenceConfig(alter_kind="author")


def profile_scores(profile):
    return {eid: (round(s.in_score, 12), round(s.out_score, 12))
            for eid, s in profile.alters.items()}


class TestNormalizationWeight:
    def test_two_authors_split_evenly(self, m1):
        assert normalization_weight(m1.papers["P1"], "author", "A1") == 0.5
        assert normalization_weight(m1.papers["P1"], "author", "A2") == 0.5

    def test_venue_always_full_unit(self, m1):
        for pid in ("P1", "P2", "P3"):
            paper = m1.papers[pid]
            assert normalization_weight(paper, "venue", paper.venue_id) == 1.0

    def test_institution_share_of_slots(self):
        slots = tuple((f"A{i}", "MIT" if i < 3 else "CMU") for i in range(5))
        paper = PaperRecord("P", "t", 2000, None, slots, ())
        assert normalization_weight(paper, "institution", "MIT") == pytest.approx(0.6)
        assert normalization_weight(paper, "institution", "CMU") == pytest.approx(0.4)

    def test_topic_split_within_level(self, m1):
        assert normalization_weight(m1.papers["P2"], "topic", "T1") == 0.5
        assert normalization_weight(m1.papers["P3"], "topic", "T2") == 1.0

    def test_entity_not_on_paper_raises(self, m1):
        with pytest.raises(ValueError):
            normalization_weight(m1.papers["P2"], "author", "A1")

    def test_weight_one_when_normalization_off(self, m1):
        assert normalization_weight(m1.papers["P1"], "author", "A1", s1=False) == 1.0


class TestM1Fixture:
    def test_author_flower_self_citations_on(self, m1, m1_store, ego_a1):
        profile = compute_profile(ego_a1, AUTHOR_CFG, m1_store)
        assert profile_scores(profile) == {"A2": (0.5, 0.0), "A3": (1.0, 1.0)}
        oracle = brute_force_profile(ego_a1, AUTHOR_CFG, m1)
        assert profiles_match(profile, oracle)[0]

    def test_author_flower_self_citations_off(self, m1, m1_store, ego_a1):
        cfg = InfluenceConfig(alter_kind="author", include_self_citations=False)
        profile = compute_profile(ego_a1, cfg, m1_store)
        assert profile_scores(profile) == {"A3": (1.0, 0.5)}
        assert profiles_match(profile, brute_force_profile(ego_a1, cfg, m1))[0]

    def test_venue_flower_matches_oracle(self, m1, m1_store, ego_a1):
        # oracle-frozen values: each reference carries a full venue unit in,
        # each citation carries the ego's half share of P1 out
        cfg = InfluenceConfig(alter_kind="venue")
        profile = compute_profile(ego_a1, cfg, m1_store)
        assert profile_scores(profile) == {"V1": (1.0, 0.5), "V2": (1.0, 0.5)}
        assert profiles_match(profile, brute_force_profile(ego_a1, cfg, m1))[0]

    def test_venue_ego_excludes_own_venue(self, m1, m1_store):
        ego = EntitySelection((("V1", "venue"),), "Journal of Petal Analysis")
        profile = compute_profile(ego, InfluenceConfig(alter_kind="venue"), m1_store)
        assert "V1" not in profile.alters

    def test_raw_counts_and_flags(self, m1_store, ego_a1):
        profile = compute_profile(ego_a1, AUTHOR_CFG, m1_store)
        a3 = profile.alters["A3"]
        assert (a3.raw_ref_count, a3.raw_cite_count) == (1, 2)
        assert a3.co_contributor  # shares P3 with A1
        assert profile.alters["A2"].co_contributor  # shares P1

    def test_empty_ego_profile(self):
        corpus = Corpus.from_records(
            [PaperRecord("P1", "t", 2000, None, (("A1", None),), ())],
            [],
            [EntityRecord("A1", "author", "One"),
             EntityRecord("A9", "author", "Paperless")],
        )
        store = build_indexes(corpus)
        ego = EntitySelection((("A9", "author"),), "Paperless")
        profile = compute_profile(ego, AUTHOR_CFG, store)
        assert profile.alters == {} and profile.ego_paper_count == 0

    def test_pub_range_missing_all_papers_is_empty_not_error(self, m1_store, ego_a1):
        cfg = InfluenceConfig(alter_kind="author", pub_range=(1900, 1950))
        profile = compute_profile(ego_a1, cfg, m1_store)
        assert profile.alters == {}
        assert profile.in_total == 0.0 and profile.out_total == 0.0

    def test_ego_with_no_links(self):
        corpus = Corpus.from_records(
            [PaperRecord("P1", "t", 2000, None, (("A1", None),), ())],
            [],
            [EntityRecord("A1", "author", "One")],
        )
        store = build_indexes(corpus)
        profile = compute_profile(
            EntitySelection((("A1", "author"),), "One"), AUTHOR_CFG, store)
        assert profile.alters == {}
        assert profile.in_total == profile.out_total == 0.0


class TestCoContributors:
    def test_shared_paper_flags(self, m1_store):
        assert is_co_contributor(("P1", "P3"), "A2", "author", m1_store)
        assert not is_co_contributor(("P1", "P3"), "V2", "venue", m1_store)
        assert is_co_contributor(("P1", "P3"), "V1", "venue", m1_store)

    def test_exclusion_refills_before_selection(self, m1_store, ego_a1):
        cfg = InfluenceConfig(alter_kind="author", exclude_co_contributors=True)
        profile = compute_profile(ego_a1, cfg, m1_store)
        # both alters are co-contributors of A1, so nothing remains
        assert profile.alters == {}


class TestSelectionAndSorting:
    @staticmethod
    def synthetic_profile():
        return InfluenceProfile("author", {
            "X": AlterScore(in_score=2.0, out_score=1.0),
            "Y": AlterScore(in_score=0.0, out_score=3.0),
            "Z": AlterScore(in_score=1.0, out_score=1.0),
        }, ego_paper_count=1)

    def test_top_k_by_peak(self):
        assert select_alters(self.synthetic_profile(), 2) == ["Y", "X"]

    def test_k_larger_than_alter_count(self):
        assert select_alters(self.synthetic_profile(), 10) == ["Y", "X", "Z"]

    def test_equal_peak_and_total_breaks_by_id(self):
        profile = InfluenceProfile("author", {
            "B": AlterScore(in_score=1.0, out_score=1.0),
            "A": AlterScore(in_score=1.0, out_score=1.0),
        }, 1)
        assert select_alters(profile, 2) == ["A", "B"]

    def test_invalid_petal_count(self):
        with pytest.raises(ValueError):
            select_alters(self.synthetic_profile(), 0)

    def test_ratio_sort(self):
        profile = InfluenceProfile("author", {
            "X": AlterScore(in_score=2.0, out_score=1.0),
            "Y": AlterScore(in_score=0.0, out_score=3.0),
        }, 1)
        assert sort_alters(profile, ["X", "Y"], "ratio") == ["X", "Y"]
        assert sort_alters(profile, ["X", "Y"], "influencing") == ["Y", "X"]

    def test_total_sort_tie_keeps_id_order(self):
        profile = InfluenceProfile("author", {
            "B": AlterScore(in_score=2.0, out_score=0.0),
            "A": AlterScore(in_score=0.0, out_score=2.0),
            "C": AlterScore(in_score=3.0, out_score=0.0),
        }, 1)
        assert sort_alters(profile, ["B", "A", "C"], "total") == ["C", "A", "B"]

    def test_sort_is_permutation_and_selection_sort_invariant(self):
        rng = random.Random(11)
        for seed in range(20):
            corpus = random_corpus(seed)
            store = build_indexes(corpus)
            selection = random_selection(rng, corpus, rng.choice(EGO_KINDS))
            if selection is None:
                continue
            profile = compute_profile(selection, AUTHOR_CFG, store)
            selected = select_alters(profile, 10) if profile.alters else []
            for mode in ("ratio", "influenced_by", "influencing", "total"):
                ordered = sort_alters(profile, selected, mode)
                assert sorted(ordered) == sorted(selected)


class TestDetailPairs:
    def test_m1_fixture_rows(self, m1_store, ego_a1):
        pairs = detail_pairs(ego_a1, "A3", AUTHOR_CFG, m1_store)
        rows = [(r.ego_paper, r.incoming, r.outgoing) for r in pairs.rows]
        # chronological by the ego's own papers: P1 (2000) then P3 (2005)
        assert rows == [("P1", (), ("P2", "P3")), ("P3", ("P2",), ())]

    def test_self_citation_toggle_drops_p3(self, m1_store, ego_a1):
        cfg = InfluenceConfig(alter_kind="author", include_self_citations=False)
        pairs = detail_pairs(ego_a1, "A3", cfg, m1_store)
        rows = [(r.ego_paper, r.incoming, r.outgoing) for r in pairs.rows]
        assert rows == [("P1", (), ("P2",)), ("P3", ("P2",), ())]

    def test_alter_with_no_surviving_edges_is_empty(self, m1_store):
        ego = EntitySelection((("A2", "author"),), "Charles Babbage")
        cfg = InfluenceConfig(alter_kind="author",
                              pub_range=(1990, 1995))  # excludes P1
        pairs = detail_pairs(ego, "A3", cfg, m1_store)
        assert pairs.rows == () and pairs.pair_count == 0

    def test_pair_count_equals_raw_counts(self, m1_store, ego_a1):
        for self_cit in (True, False):
            cfg = InfluenceConfig(alter_kind="author",
                                  include_self_citations=self_cit)
            profile = compute_profile(ego_a1, cfg, m1_store)
            for alter_id, score in profile.alters.items():
                pairs = detail_pairs(ego_a1, alter_id, cfg, m1_store)
                assert pairs.pair_count == score.raw_ref_count + score.raw_cite_count

    def test_pair_count_matches_on_random_corpora(self):
        rng = random.Random(3)
        for seed in range(10):
            corpus = random_corpus(seed)
            store = build_indexes(corpus)
            selection = random_selection(rng, corpus, "author")
            if selection is None:
                continue
            cfg = InfluenceConfig(alter_kind=rng.choice(
                ("author", "venue", "institution", "topic")))
            profile = compute_profile(selection, cfg, store)
            for alter_id, score in list(profile.alters.items())[:10]:
                pairs = detail_pairs(selection, alter_id, cfg, store)
                assert pairs.pair_count == score.raw_ref_count + score.raw_cite_count


class TestSummaryStats:
    def test_m1_totals(self, m1_store, ego_a1):
        stats = summary_stats(ego_a1, AUTHOR_CFG, m1_store)
        assert stats.papers == 2
        assert stats.refs_total == 2
        assert stats.cites_total == 2
        assert stats.refs_avg == 1.0 and stats.cites_avg == 1.0
        assert stats.pub_histogram == {2000: 1, 2005: 1}
        assert stats.cite_histogram == {2001: 1, 2005: 1}

    def test_pub_range_excluding_everything(self, m1_store, ego_a1):
        cfg = InfluenceConfig(alter_kind="author", pub_range=(1900, 1950))
        stats = summary_stats(ego_a1, cfg, m1_store)
        assert stats.papers == 0
        assert stats.refs_total == 0 and stats.cites_total == 0
        assert stats.pub_histogram == {} and stats.cite_histogram == {}

    def test_histograms_sum_to_totals(self):
        rng = random.Random(5)
        for seed in range(10):
            corpus = random_corpus(seed)
            store = build_indexes(corpus)
            selection = random_selection(rng, corpus, "author")
            if selection is None:
                continue
            cfg = InfluenceConfig(alter_kind="author",
                                  pub_range=(1990, 2015),
                                  include_self_citations=rng.random() < 0.5)
            stats = summary_stats(selection, cfg, store)
            assert sum(stats.pub_histogram.values()) == stats.papers
            assert sum(stats.cite_histogram.values()) == stats.cites_total


class TestSchemesAndProperties:
    def test_all_schemes_off_equals_raw_counts(self):
        rng = random.Random(13)
        for seed in range(10):
            corpus = random_corpus(seed)
            store = build_indexes(corpus)
            selection = random_selection(rng, corpus, rng.choice(EGO_KINDS))
            if selection is None:
                continue
            cfg = InfluenceConfig(alter_kind="author", s1=False, s2=False, s3=False)
            profile = compute_profile(selection, cfg, store)
            for score in profile.alters.values():
                assert score.in_score == pytest.approx(score.raw_ref_count, abs=1e-12)
                assert score.out_score == pytest.approx(score.raw_cite_count, abs=1e-12)

    def test_scores_nonnegative_and_finite(self):
        rng = random.Random(17)
        for seed in range(15):
            corpus = random_corpus(seed)
            store = build_indexes(corpus)
            selection = random_selection(rng, corpus, rng.choice(EGO_KINDS))
            if selection is None:
                continue
            cfg = InfluenceConfig(
                alter_kind=rng.choice(("author", "venue", "institution", "topic")),
                s1=rng.random() < 0.6, s2=rng.random() < 0.4, s3=rng.random() < 0.4)
            profile = compute_profile(selection, cfg, store)
            for score in profile.alters.values():
                assert score.in_score >= 0 and math.isfinite(score.in_score)
                assert score.out_score >= 0 and math.isfinite(score.out_score)

    def test_oracle_equivalence_with_filters(self):
        rng = random.Random(23)
        for seed in range(25):
            corpus = random_corpus(seed)
            store = build_indexes(corpus)
            selection = random_selection(rng, corpus, rng.choice(EGO_KINDS))
            if selection is None:
                continue
            pub = None
            cite = None
            if rng.random() < 0.6:
                lo = rng.randint(1985, 2024)
                pub = (lo, rng.randint(lo, 2024))
            if rng.random() < 0.6:
                lo = rng.randint(1985, 2024)
                cite = (lo, rng.randint(lo, 2024))
            cfg = InfluenceConfig(
                alter_kind=rng.choice(("author", "venue", "institution", "topic")),
                pub_range=pub, cite_range=cite,
                include_self_citations=rng.random() < 0.6,
                exclude_co_contributors=rng.random() < 0.3,
                s1=rng.random() < 0.6, s2=rng.random() < 0.4, s3=rng.random() < 0.4,
                topic_level=rng.choice((1, 2)))
            fast = compute_profile(selection, cfg, store)
            slow = brute_force_profile(selection, cfg, corpus)
            ok, why = profiles_match(fast, slow)
            assert ok, f"seed {seed}: {why}"

    def test_transpose_symmetry(self):
        # with no year filters and self-citations kept, my outgoing influence
        # on you equals your incoming influence from me
        rng = random.Random(29)
        checked = 0
        for seed in range(12):
            corpus = random_corpus(seed)
            store = build_indexes(corpus)
            for _ in range(6):
                kind_e = rng.choice(("author", "venue", "institution", "topic"))
                kind_x = rng.choice(("author", "venue", "institution", "topic"))
                ego = random_selection(rng, corpus, kind_e)
                alter = random_selection(rng, corpus, kind_x)
                if ego is None or alter is None:
                    continue
                (eid_e, _), = ego.members
                (eid_x, _), = alter.members
                if eid_e == eid_x:
                    continue
                if kind_e == "topic" or kind_x == "topic":
                    continue  # topic alters are level-filtered; covered elsewhere
                schemes = dict(s1=rng.random() < 0.6, s2=rng.random() < 0.4,
                               s3=rng.random() < 0.4)
                profile_e = compute_profile(
                    ego, InfluenceConfig(alter_kind=kind_x, **schemes), store)
                profile_x = compute_profile(
                    alter, InfluenceConfig(alter_kind=kind_e, **schemes), store)
                out_e = profile_e.alters.get(eid_x, AlterScore()).out_score
                in_x = profile_x.alters.get(eid_e, AlterScore()).in_score
                assert out_e == pytest.approx(in_x, abs=1e-9)
                checked += 1
        assert checked >= 20

    def test_unit_conservation_s1(self):
        # one citation: the cited side's same-kind weights sum to exactly 1
        for seed in range(10):
            corpus = random_corpus(seed)
            for citing, cited_list in corpus.refs.items():
                for cited in cited_list:
                    paper = corpus.papers[cited]
                    for kind in ("author", "venue", "institution"):
                        from influenceflower.influence import _record_incidence
                        counts, _ = _record_incidence(
                            paper.author_slots, paper.venue_id,
                            paper.topic_ids, kind, None)
                        total = sum(
                            normalization_weight(paper, kind, eid)
                            for eid in counts)
                        if kind == "venue":
                            expected = 1.0 if paper.venue_id is not None else 0.0
                        else:
                            expected = 1.0 if counts else 0.0
                        assert total == pytest.approx(expected, abs=1e-12)

    def test_monotone_in_ranges(self):
        rng = random.Random(31)
        for seed in range(10):
            corpus = random_corpus(seed)
            store = build_indexes(corpus)
            selection = random_selection(rng, corpus, "author")
            if selection is None:
                continue
            narrow = InfluenceConfig(alter_kind="author",
                                     pub_range=(2000, 2010), cite_range=(2000, 2010))
            wide = InfluenceConfig(alter_kind="author",
                                   pub_range=(1985, 2024), cite_range=(1985, 2024))
            p_narrow = compute_profile(selection, narrow, store)
            p_wide = compute_profile(selection, wide, store)
            for eid, score in p_narrow.alters.items():
                wide_score = p_wide.alters[eid]
                assert wide_score.in_score >= score.in_score - 1e-12
                assert wide_score.out_score >= score.out_score - 1e-12

    def test_self_citation_filter_never_increases(self):
        rng = random.Random(37)
        for seed in range(10):
            corpus = random_corpus(seed)
            store = build_indexes(corpus)
            selection = random_selection(rng, corpus, rng.choice(EGO_KINDS))
            if selection is None:
                continue
            kept = compute_profile(selection, AUTHOR_CFG, store)
            dropped = compute_profile(
                selection,
                InfluenceConfig(alter_kind="author", include_self_citations=False),
                store)
            for eid, score in dropped.alters.items():
                assert score.in_score <= kept.alters[eid].in_score + 1e-12
                assert score.out_score <= kept.alters[eid].out_score + 1e-12


class TestProfileExport:
    def test_records_schema(self, m1, m1_store, ego_a1):
        profile = compute_profile(ego_a1, AUTHOR_CFG, m1_store)
        records = profile.records(m1.name_of)
        assert [r["alter_id"] for r in records] == ["A2", "A3"]
        first = records[0]
        assert set(first) == {"alter_id", "name", "kind", "in_score", "out_score",
                              "raw_ref_count", "raw_cite_count", "co_contributor"}
        assert first["name"] == "Charles Babbage"


class TestInfluenceRatio:
    def test_known_values(self):
        assert influence_ratio(2, 1) == pytest.approx(1 / 3)
        assert influence_ratio(0, 3) == -1.0
        assert influence_ratio(0, 0) == 0.0
