"""Name search ranking and curation."""

import math
import random

import pytest

from influenceflower.corpus import Corpus, EntityRecord, PaperRecord
from influenceflower.indexstore import build_indexes
from influenceflower.search import SearchIndex, adjusted_relevance, curate, tokenize


@pytest.fixture
def author_corpus():
    papers = []
    # H1 and H2 share one name: the duplicate-id case entity resolution leaves
    entities = [
        EntityRecord("H1", "author", "John L. Hennessy", "Stanford"),
        EntityRecord("H2", "author", "John L. Hennessy", "Dublin"),
        EntityRecord("P1", "author", "David Patterson", "Berkeley"),
        EntityRecord("V1", "venue", "John Symposium", "JS"),
        EntityRecord("T1", "topic", "computer architecture"),
    ]
    # H1 gets well-cited papers, H2 a single uncited one
    for i in range(4):
        papers.append(PaperRecord(f"PP{i}", f"Quantitative design {i}", 2000 + i,
                                  "V1", (("H1", None),), (("T1", 1),)))
    papers.append(PaperRecord("PP9", "Uncited note", 2010, None,
                              (("H2", None),), ()))
    papers.append(PaperRecord("PC0", "A citing paper", 2015, None,
                              (("P1", None),), ()))
    edges = [("PC0", "PP0"), ("PC0", "PP1"), ("PC0", "PP2")]
    return Corpus.from_records(papers, edges, entities)


@pytest.fixture
def index(author_corpus):
    return SearchIndex(author_corpus, build_indexes(author_corpus))


class TestAdjustedRelevance:
    def test_formula_exact(self):
        assert adjusted_relevance(10, 100) == pytest.approx(
            1000 * math.log(102), abs=1e-9)

    def test_zero_citations_stays_positive(self):
        assert adjusted_relevance(10, 0) == pytest.approx(1000 * math.log(2))
        assert adjusted_relevance(10, 0) > 0

    def test_monotone_in_citations_and_base(self):
        rng = random.Random(3)
        for _ in range(300):
            base = rng.uniform(0.1, 30)
            n = rng.randint(0, 10_000)
            assert adjusted_relevance(base, n + 1) > adjusted_relevance(base, n)
            assert adjusted_relevance(base + 0.1, n) > adjusted_relevance(base, n)


class TestBaseRelevance:
    def test_exact_match_is_maximal_for_query(self, index):
        query = "John L. Hennessy"
        scores = {doc.entity_id: index.base_relevance(query, doc.tokens)
                  for doc in index._docs}
        exact = {"H1", "H2"}
        best = max(scores.values())
        for entity_id, score in scores.items():
            if entity_id in exact:
                assert score == best
            else:
                assert score < best

    def test_abbreviated_name_matches(self, index):
        score = index.base_relevance("J Hennessy", tokenize("John L. Hennessy"))
        assert score > 0

    def test_disjoint_tokens_score_zero(self, index):
        assert index.base_relevance("quantum flowers", tokenize("David Patterson")) == 0.0

    def test_missing_middle_initial_still_matches(self, index):
        assert index.base_relevance("John Hennessy", tokenize("John L. Hennessy")) > 0


class TestSearchEntities:
    def test_no_match_is_empty(self, index):
        assert index.search("zzzz nothing") == []

    def test_same_name_authors_higher_cited_first(self, index):
        hits = index.search("Hennessy", kinds=["author"])
        assert [h.entity_id for h in hits[:2]] == ["H1", "H2"]
        assert hits[0].citation_count == 3
        assert hits[1].citation_count == 0

    def test_kind_filter_excludes_other_kinds(self, index):
        hits = index.search("John", kinds=["venue"])
        assert {h.kind for h in hits} == {"venue"}
        assert [h.entity_id for h in hits] == ["V1"]

    def test_hits_carry_counts_and_hints(self, index):
        hits = index.search("John L. Hennessy", kinds=["author"])
        top = hits[0]
        assert top.paper_count == 4
        assert top.hint == "Stanford"

    def test_papers_searchable_by_title(self, index):
        hits = index.search("Quantitative design", kinds=["paper"])
        assert len(hits) == 4
        assert all(h.kind == "paper" for h in hits)
        # paper hints name the authors
        assert "John L. Hennessy" in hits[0].hint

    def test_unknown_kind_rejected(self, index):
        with pytest.raises(ValueError):
            index.search("x", kinds=["galaxy"])

    def test_ranking_is_deterministic(self, index):
        first = [h.entity_id for h in index.search("John")]
        second = [h.entity_id for h in index.search("John")]
        assert first == second


class TestCurate:
    def test_duplicate_ids_become_one_selection(self, author_corpus, index):
        hits = index.search("Hennessy", kinds=["author"])
        selection = curate(hits[:2], "John Hennessy (merged)")
        assert selection.display_name == "John Hennessy (merged)"
        from influenceflower.corpus import resolve_selection
        papers = resolve_selection(selection, author_corpus)
        assert set(papers) == {"PP0", "PP1", "PP2", "PP3", "PP9"}

    def test_sixteen_paper_project(self):
        papers = [PaperRecord(f"P{i:02d}", f"t{i}", 2000 + i % 9, None,
                              (("A1", None),), ()) for i in range(16)]
        corpus = Corpus.from_records(papers, [], [EntityRecord("A1", "author", "A")])
        selection = curate([(f"P{i:02d}", "paper") for i in range(16)], "benchmark project")
        from influenceflower.corpus import resolve_selection
        assert len(resolve_selection(selection, corpus)) == 16

    def test_single_entity_identity(self):
        selection = curate([("A1", "author")], "solo")
        assert selection.members == (("A1", "author"),)
