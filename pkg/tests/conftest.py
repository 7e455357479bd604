"""Shared fixtures: the M1 micro-corpus and helpers.

M1 layout (citing -> cited edges: P2->P1, P3->P1, P3->P2):

    P1 (2000, venue V1, authors A1+A2, topic T1)
    P2 (2001, venue V2, author A3, topics T1+T2)
    P3 (2005, venue V1, authors A1+A3, topic T2)

Influence flows opposite the citations, so P1 influences P2 and P3, and P2
influences P3.  All hand-derived expectations in the tests were computed
with the dense-matrix oracle first and frozen.
"""

import pytest

from influenceflower.corpus import Corpus, EntityRecord, EntitySelection, PaperRecord
from influenceflower.indexstore import build_indexes


def make_m1() -> Corpus:
    papers = [
        PaperRecord("P1", "Foundations of petal analysis", 2000, "V1",
                    (("A1", None), ("A2", None)), (("T1", 1),)),
        PaperRecord("P2", "Petal analysis in practice", 2001, "V2",
                    (("A3", None),), (("T1", 1), ("T2", 1))),
        PaperRecord("P3", "A survey of petal methods", 2005, "V1",
                    (("A1", None), ("A3", None)), (("T2", 1),)),
    ]
    edges = [("P2", "P1"), ("P3", "P1"), ("P3", "P2")]
    entities = [
        EntityRecord("A1", "author", "Ada Lovelace", "Analytical Society"),
        EntityRecord("A2", "author", "Charles Babbage", "Analytical Society"),
        EntityRecord("A3", "author", "George Boole", "Lincoln Mechanics"),
        EntityRecord("V1", "venue", "Journal of Petal Analysis", "JPA"),
        EntityRecord("V2", "venue", "Flower Computing Letters", "FCL"),
        EntityRecord("T1", "topic", "Petal geometry"),
        EntityRecord("T2", "topic", "Influence metrics"),
    ]
    return Corpus.from_records(papers, edges, entities)


@pytest.fixture
def m1() -> Corpus:
    return make_m1()


@pytest.fixture
def m1_store(m1):
    return build_indexes(m1)


@pytest.fixture
def ego_a1() -> EntitySelection:
    return EntitySelection((("A1", "author"),), "Ada Lovelace")


@pytest.fixture
def m1_files(tmp_path, m1):
    from influenceflower.synth import write_corpus_files

    return write_corpus_files(m1, tmp_path / "corpus")
