"""Dense-matrix reference computation of influence profiles.

This is the slow, obviously-correct route: materialize the full citation
matrix and per-kind association matrices as numpy arrays, normalize the
association columns where a scheme asks for it, and take the matrix product.
Filters are applied by zeroing matrix entries.  The indexed engine in
:mod:`influenceflower.influence` must agree with this module to 1e-9 on
every alter; it shares no traversal or weighting code with it.
"""

from __future__ import annotations

import weakref
from typing import Optional

import numpy as np

from .corpus import Corpus, EntitySelection
from .influence import AlterScore, InfluenceConfig, InfluenceProfile


class DenseCorpus:
    """Dense matrices for one corpus, built once and reused across queries."""

    def __init__(self, corpus: Corpus):
        self.corpus = corpus
        self.papers = sorted(corpus.papers)
        self.index = {pid: i for i, pid in enumerate(self.papers)}
        n = len(self.papers)
        self.year = np.array([corpus.papers[p].year for p in self.papers], dtype=np.int64)

        # citation[i, j] = 1 iff paper j cites paper i (influence flows i -> j)
        self.citation = np.zeros((n, n), dtype=np.float64)
        for citing, cited_list in corpus.refs.items():
            j = self.index[citing]
            for cited in cited_list:
                self.citation[self.index[cited], j] = 1.0
        self.ref_counts = self.citation.sum(axis=0)

        self._counts: dict[tuple, tuple[list[str], np.ndarray]] = {}

    def count_matrix(self, kind: str, topic_level: Optional[int] = None):
        """(entities, appearances matrix) for one kind; topics per level."""
        key = (kind, topic_level)
        if key in self._counts:
            return self._counts[key]
        n = len(self.papers)
        cells: dict[str, dict[int, int]] = {}

        def bump(entity_id: str, col: int, amount: int = 1):
            cells.setdefault(entity_id, {})[col] = cells.get(entity_id, {}).get(col, 0) + amount

        for pid in self.papers:
            col = self.index[pid]
            rec = self.corpus.papers[pid]
            if kind == "author":
                for author_id, _inst in rec.author_slots:
                    bump(author_id, col)
            elif kind == "institution":
                for _author, inst_id in rec.author_slots:
                    if inst_id is not None:
                        bump(inst_id, col)
            elif kind == "venue":
                if rec.venue_id is not None:
                    bump(rec.venue_id, col)
            elif kind == "topic":
                for topic_id, level in rec.topic_ids:
                    if topic_level is None or level == topic_level:
                        bump(topic_id, col)
            else:
                raise ValueError(f"unknown kind {kind!r}")

        entities = sorted(cells)
        matrix = np.zeros((len(entities), n), dtype=np.float64)
        for row, entity_id in enumerate(entities):
            for col, amount in cells[entity_id].items():
                matrix[row, col] = amount
        self._counts[key] = (entities, matrix)
        return entities, matrix

    def normalized_matrix(self, kind: str, topic_level: Optional[int] = None):
        """Column-normalized association: each column sums to 1 where nonempty."""
        entities, counts = self.count_matrix(kind, topic_level)
        if kind == "venue":
            return entities, (counts > 0).astype(np.float64)
        col_sums = counts.sum(axis=0)
        safe = np.where(col_sums > 0, col_sums, 1.0)
        return entities, counts / safe

    def binary_matrix(self, kind: str, topic_level: Optional[int] = None):
        entities, counts = self.count_matrix(kind, topic_level)
        return entities, (counts > 0).astype(np.float64)


_dense_cache: "weakref.WeakKeyDictionary[Corpus, DenseCorpus]" = weakref.WeakKeyDictionary()


def dense_corpus(corpus: Corpus) -> DenseCorpus:
    cached = _dense_cache.get(corpus)
    if cached is None:
        cached = _dense_cache[corpus] = DenseCorpus(corpus)
    return cached


def _member_row(dc: DenseCorpus, members, normalized: bool) -> np.ndarray:
    """The ego's paper-space row vector.

    Plain membership indicator when not normalized (union of member paper
    sets, no double counting); otherwise the sum of each member's normalized
    association row, with paper members as full-unit indicators.
    """
    n = len(dc.papers)
    if not normalized:
        row = np.zeros(n, dtype=np.float64)
        for entity_id, kind in members:
            for pid in dc.corpus.papers_of(entity_id, kind):
                row[dc.index[pid]] = 1.0
        return row
    row = np.zeros(n, dtype=np.float64)
    for entity_id, kind in members:
        if kind == "paper":
            if entity_id in dc.index:
                row[dc.index[entity_id]] += 1.0
            continue
        if kind == "topic":
            levels = set()
            for pid in dc.corpus.papers_of(entity_id, kind):
                rec = dc.corpus.papers[pid]
                levels.update(lv for t, lv in rec.topic_ids if t == entity_id)
            for level in levels:
                entities, matrix = dc.normalized_matrix("topic", level)
                if entity_id in entities:
                    row += matrix[entities.index(entity_id)]
            continue
        entities, matrix = dc.normalized_matrix(kind)
        if entity_id in entities:
            row += matrix[entities.index(entity_id)]
    return row


def profiles_match(left: InfluenceProfile, right: InfluenceProfile,
                   tolerance: float = 1e-9) -> tuple[bool, str]:
    """Compare two profiles alter by alter; returns (ok, first difference)."""
    if set(left.alters) != set(right.alters):
        missing = set(left.alters).symmetric_difference(right.alters)
        return False, f"alter sets differ on {sorted(missing)[:5]}"
    for entity_id in sorted(left.alters):
        a, b = left.alters[entity_id], right.alters[entity_id]
        if abs(a.in_score - b.in_score) > tolerance:
            return False, f"{entity_id}: in_score {a.in_score} vs {b.in_score}"
        if abs(a.out_score - b.out_score) > tolerance:
            return False, f"{entity_id}: out_score {a.out_score} vs {b.out_score}"
        if a.raw_ref_count != b.raw_ref_count:
            return False, f"{entity_id}: raw_ref {a.raw_ref_count} vs {b.raw_ref_count}"
        if a.raw_cite_count != b.raw_cite_count:
            return False, f"{entity_id}: raw_cite {a.raw_cite_count} vs {b.raw_cite_count}"
        if a.co_contributor != b.co_contributor:
            return False, f"{entity_id}: co_contributor flags differ"
    return True, ""


def brute_force_profile(ego: EntitySelection, config: InfluenceConfig,
                        corpus: Corpus) -> InfluenceProfile:
    """Profile via explicit matrix products; the test oracle for the engine."""
    dc = dense_corpus(corpus)
    n = len(dc.papers)

    ego_papers = set()
    for entity_id, kind in ego.members:
        ego_papers.update(dc.corpus.papers_of(entity_id, kind))
    ego_idx = np.array(sorted(dc.index[p] for p in ego_papers), dtype=np.intp)

    pub_mask = np.ones(n, dtype=np.float64)
    if config.pub_range is not None:
        lo, hi = config.pub_range
        pub_mask = ((dc.year >= lo) & (dc.year <= hi)).astype(np.float64)
    cite_mask = np.ones(n, dtype=np.float64)
    if config.cite_range is not None:
        lo, hi = config.cite_range
        cite_mask = ((dc.year >= lo) & (dc.year <= hi)).astype(np.float64)

    citation = dc.citation
    if not config.include_self_citations and len(ego_idx):
        citation = citation.copy()
        citation[np.ix_(ego_idx, ego_idx)] = 0.0

    weighted = citation
    if config.s2:
        safe = np.where(dc.ref_counts > 0, dc.ref_counts, 1.0)
        weighted = weighted / safe[None, :]

    topic_level = config.topic_level if config.alter_kind == "topic" else None
    alter_norm = dc.normalized_matrix(config.alter_kind, topic_level)
    alter_bin = dc.binary_matrix(config.alter_kind, topic_level)
    entities = alter_norm[0]

    ego_cited = _member_row(dc, ego.members, normalized=config.s1) * pub_mask
    ego_citing = _member_row(dc, ego.members, normalized=config.s3) * pub_mask
    citing_side = alter_norm[1] if config.s3 else alter_bin[1]
    cited_side = alter_norm[1] if config.s1 else alter_bin[1]

    out_scores = (ego_cited @ (weighted * cite_mask[None, :])) @ citing_side.T
    in_scores = cited_side @ (weighted @ ego_citing)

    ego_ind = np.zeros(n, dtype=np.float64)
    ego_ind[ego_idx] = 1.0
    ego_ind *= pub_mask
    raw_cite = (ego_ind @ (citation * cite_mask[None, :])) @ alter_bin[1].T
    raw_ref = alter_bin[1] @ (citation @ ego_ind)

    # co-contributor flags consider the alter's presence on any ego paper,
    # topics at any level
    flag_entities, flag_bin = dc.binary_matrix(config.alter_kind, None)
    on_ego = flag_bin[:, ego_idx].sum(axis=1) > 0 if len(ego_idx) else \
        np.zeros(len(flag_entities), dtype=bool)
    flags = {e: bool(v) for e, v in zip(flag_entities, on_ego)}

    excluded = ego.member_ids(config.alter_kind)
    alters: dict[str, AlterScore] = {}
    for row, entity_id in enumerate(entities):
        if entity_id in excluded:
            continue
        rr = int(round(raw_ref[row]))
        rc = int(round(raw_cite[row]))
        if rr == 0 and rc == 0:
            continue
        flag = flags.get(entity_id, False)
        if config.exclude_co_contributors and flag:
            continue
        alters[entity_id] = AlterScore(
            in_score=float(in_scores[row]),
            out_score=float(out_scores[row]),
            raw_ref_count=rr,
            raw_cite_count=rc,
            co_contributor=flag,
        )
    return InfluenceProfile(config.alter_kind, alters, len(ego_papers))
