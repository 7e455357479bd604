"""Bi-directional influence profiles between an ego and alters of one kind.

One citation is one unit of influence, flowing from the cited paper to the
citing paper (opposite the citation arrow).  For an ego selection, the
profile aggregates:

* outgoing influence -- other entities' papers cite the ego's papers
* incoming influence -- the ego's papers reference other entities' papers

Three optional weighting schemes temper the raw unit:

* s1 divides each unit by the number of same-kind entities on the *cited*
  paper (authors and topics share equally; an institution takes its fraction
  of author slots; a venue keeps the whole unit since a paper has at most
  one venue).
* s2 divides each unit by the citing paper's reference count.
* s3 applies the s1 rule on the *citing* side.

s1 alone is the default.  Year windows: ``pub_range`` restricts the ego's
own paper years on both sides; ``cite_range`` restricts citing-paper years on
the outgoing side only.  A self-citation is a citation whose endpoints are
both ego papers; such edges are skipped when self-citations are toggled off.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Optional

from .corpus import ALTER_KINDS, EntitySelection, PaperRecord
from .indexstore import LEVEL_COMPLETE, IndexStore, PaperBundle

SORT_MODES = ("ratio", "influenced_by", "influencing", "total")


@dataclass(frozen=True)
class InfluenceConfig:
    """Knobs governing one profile computation."""

    alter_kind: str
    pub_range: Optional[tuple[int, int]] = None
    cite_range: Optional[tuple[int, int]] = None
    include_self_citations: bool = True
    exclude_co_contributors: bool = False
    s1: bool = True
    s2: bool = False
    s3: bool = False
    topic_level: int = 1

    def __post_init__(self):
        if self.alter_kind not in ALTER_KINDS:
            raise ValueError(f"alter_kind must be one of {ALTER_KINDS}")
        for name in ("pub_range", "cite_range"):
            rng = getattr(self, name)
            if rng is not None:
                lo, hi = rng
                if lo > hi:
                    raise ValueError(f"{name} is empty: {rng}")


@dataclass
class AlterScore:
    """Scores and raw counts for one alter entity."""

    in_score: float = 0.0
    out_score: float = 0.0
    raw_ref_count: int = 0
    raw_cite_count: int = 0
    co_contributor: bool = False

    @property
    def total(self) -> float:
        return self.in_score + self.out_score

    @property
    def peak(self) -> float:
        return max(self.in_score, self.out_score)


@dataclass
class InfluenceProfile:
    """Per-alter influence scores for one ego; the ego is never an alter."""

    alter_kind: str
    alters: dict[str, AlterScore]
    ego_paper_count: int

    @property
    def in_total(self) -> float:
        return sum(s.in_score for s in self.alters.values())

    @property
    def out_total(self) -> float:
        return sum(s.out_score for s in self.alters.values())

    def records(self, name_of: Callable[[str, str], str]) -> list[dict]:
        """Line-delimited export schema, one record per alter, sorted by id."""
        return [
            {
                "alter_id": eid,
                "name": name_of(eid, self.alter_kind),
                "kind": self.alter_kind,
                "in_score": score.in_score,
                "out_score": score.out_score,
                "raw_ref_count": score.raw_ref_count,
                "raw_cite_count": score.raw_cite_count,
                "co_contributor": score.co_contributor,
            }
            for eid, score in sorted(self.alters.items())
        ]


@dataclass(frozen=True)
class DetailRow:
    """Paper-level influence pairs anchored on one ego paper."""

    ego_paper: str
    incoming: tuple[str, ...]
    outgoing: tuple[str, ...]


@dataclass(frozen=True)
class DetailPairs:
    """Rows keyed by ego paper, chronological by the ego paper's year."""

    alter_id: str
    rows: tuple[DetailRow, ...]

    @property
    def pair_count(self) -> int:
        return sum(len(r.incoming) + len(r.outgoing) for r in self.rows)


@dataclass
class SummaryStats:
    """Totals, per-paper averages, and yearly histograms for the ego."""

    papers: int = 0
    refs_total: int = 0
    cites_total: int = 0
    refs_avg: float = 0.0
    cites_avg: float = 0.0
    pub_histogram: dict[int, int] = field(default_factory=dict)
    cite_histogram: dict[int, int] = field(default_factory=dict)


def _in_range(year: int, rng: Optional[tuple[int, int]]) -> bool:
    return rng is None or rng[0] <= year <= rng[1]


def _record_incidence(author_slots, venue_id, topics, kind: str,
                      topic_level: Optional[int]) -> tuple[dict[str, int], int]:
    """Appearance counts of kind-`kind` entities from raw paper fields."""
    if kind == "author":
        counts: dict[str, int] = {}
        for author_id, _inst in author_slots:
            counts[author_id] = counts.get(author_id, 0) + 1
        return counts, len(author_slots)
    if kind == "institution":
        counts = {}
        total = 0
        for _author, inst_id in author_slots:
            if inst_id is not None:
                counts[inst_id] = counts.get(inst_id, 0) + 1
                total += 1
        return counts, total
    if kind == "venue":
        return ({venue_id: 1}, 1) if venue_id is not None else ({}, 0)
    if kind == "topic":
        picked = [t for t, lv in topics if topic_level is None or lv == topic_level]
        return {t: 1 for t in picked}, len(picked)
    raise ValueError(f"unknown kind {kind!r}")


def normalization_weight(paper: PaperRecord, kind: str, entity_id: str,
                         s1: bool = True, topic_level: Optional[int] = None) -> float:
    """Weight of one entity's share of a cited paper's influence unit.

    With ``s1`` off every association weighs 1.  With it on, the weight is
    the entity's share of same-kind appearances on the paper: authors and
    topics split evenly, an institution takes (slots from it) / (slots
    carrying any institution), and a venue always weighs 1 since a paper is
    published to at most one venue.

    Raises ``ValueError`` when the entity is not associated with the paper.
    """
    if kind == "topic" and topic_level is None:
        topic_level = next((lv for t, lv in paper.topic_ids if t == entity_id), None)
    counts, total = _record_incidence(paper.author_slots, paper.venue_id,
                                      paper.topic_ids, kind, topic_level)
    n = counts.get(entity_id, 0)
    if n == 0:
        raise ValueError(f"{kind} {entity_id!r} is not on paper {paper.paper_id!r}")
    if not s1 or kind == "venue":
        return 1.0
    return n / total


class _PaperView:
    """Uniform read surface over a complete bundle or the bare index."""

    __slots__ = ("year", "venue_id", "author_slots", "topics", "refs", "citers")

    def __init__(self, year, venue_id, author_slots, topics, refs, citers):
        self.year = year
        self.venue_id = venue_id
        self.author_slots = author_slots
        self.topics = topics
        self.refs = refs
        self.citers = citers


def _view(store: IndexStore, bundles: Optional[dict[str, PaperBundle]],
          paper_id: str) -> _PaperView:
    if bundles is not None:
        bundle = bundles.get(paper_id)
        if bundle is not None and bundle.level == LEVEL_COMPLETE:
            return _PaperView(bundle.year, bundle.venue_id, bundle.author_slots,
                              bundle.topics, bundle.refs, bundle.citers)
    rec = store.corpus.papers[paper_id]
    return _PaperView(rec.year, rec.venue_id, rec.author_slots, rec.topic_ids,
                      store.refs.get(paper_id, ()), store.citers.get(paper_id, ()))


def _ego_weight(members, view: _PaperView, paper_id: str, normalized: bool) -> float:
    """The ego selection's combined share of one of its own papers.

    Without normalization the selection is a plain membership indicator: the
    paper contributes weight 1 no matter how many members sit on it.  With
    normalization each member contributes its own kind's share (paper-kind
    members count as a full unit).
    """
    if not normalized:
        return 1.0
    weight = 0.0
    for entity_id, kind in members:
        if kind == "paper":
            if entity_id == paper_id:
                weight += 1.0
        elif kind == "venue":
            if view.venue_id == entity_id:
                weight += 1.0
        elif kind == "topic":
            level = next((lv for t, lv in view.topics if t == entity_id), None)
            if level is not None:
                counts, total = _record_incidence(view.author_slots, view.venue_id,
                                                  view.topics, "topic", level)
                weight += 1.0 / total
        else:
            counts, total = _record_incidence(view.author_slots, view.venue_id,
                                              view.topics, kind, None)
            n = counts.get(entity_id, 0)
            if n:
                weight += n / total
    return weight


def is_co_contributor(ego_papers, alter_id: str, alter_kind: str,
                      store: IndexStore) -> bool:
    """True iff some ego paper carries the alter entity.

    For venue alters this means the ego published a paper in that venue; for
    topic alters, that an ego paper carries the topic (at any level).
    """
    for pid in ego_papers:
        if alter_kind == "venue":
            if store.paper_venue.get(pid) == alter_id:
                return True
        elif alter_kind == "topic":
            if store.topic_level_of(pid, alter_id) is not None:
                return True
        else:
            counts, _total = store.kind_incidence(pid, alter_kind)
            if alter_id in counts:
                return True
    return False


def compute_profile(ego: EntitySelection, config: InfluenceConfig,
                    store: IndexStore,
                    bundles: Optional[dict[str, PaperBundle]] = None,
                    ego_papers: Optional[tuple[str, ...]] = None) -> InfluenceProfile:
    """Aggregate influence between the ego and every alter of the chosen kind.

    Walks the ego papers' citer and reference lists (from ``bundles`` when
    supplied, otherwise straight from the index) and accumulates weighted
    contributions per alter entity.  Raw counts tally unweighted edge
    incidences under the same filters.  Alters that are themselves members
    of the ego selection are excluded, as are flagged co-contributors when
    the config says so.
    """
    papers = store.resolve(ego) if ego_papers is None else ego_papers
    ego_set = frozenset(papers)
    alter_kind = config.alter_kind
    excluded = ego.member_ids(alter_kind)
    topic_level = config.topic_level if alter_kind == "topic" else None

    alters: dict[str, AlterScore] = {}
    for pid in sorted(papers):
        view = _view(store, bundles, pid)
        if not _in_range(view.year, config.pub_range):
            continue
        w_cited_ego = _ego_weight(ego.members, view, pid, normalized=config.s1)
        w_citing_ego = _ego_weight(ego.members, view, pid, normalized=config.s3)

        for citing in view.citers:
            if not _in_range(store.paper_year[citing], config.cite_range):
                continue
            if citing in ego_set and not config.include_self_citations:
                continue
            base = w_cited_ego
            if config.s2:
                base /= len(store.refs[citing])
            counts, total = store.kind_incidence(citing, alter_kind, topic_level)
            for entity_id, n in counts.items():
                if entity_id in excluded:
                    continue
                score = alters.get(entity_id)
                if score is None:
                    score = alters[entity_id] = AlterScore()
                score.out_score += base * (n / total if config.s3 else 1.0)
                score.raw_cite_count += 1

        ref_count = len(view.refs)
        for cited in view.refs:
            if cited in ego_set and not config.include_self_citations:
                continue
            base = w_citing_ego
            if config.s2:
                base /= ref_count
            counts, total = store.kind_incidence(cited, alter_kind, topic_level)
            for entity_id, n in counts.items():
                if entity_id in excluded:
                    continue
                score = alters.get(entity_id)
                if score is None:
                    score = alters[entity_id] = AlterScore()
                score.in_score += base * (n / total if config.s1 else 1.0)
                score.raw_ref_count += 1

    for entity_id, score in alters.items():
        score.co_contributor = is_co_contributor(papers, entity_id, alter_kind, store)
    if config.exclude_co_contributors:
        alters = {e: s for e, s in alters.items() if not s.co_contributor}

    return InfluenceProfile(alter_kind, alters, len(papers))


def select_alters(profile: InfluenceProfile, k: int) -> list[str]:
    """Top-k alters by the larger of incoming and outgoing influence.

    Ties break by total influence, then by entity id, so selection is
    deterministic.  The result never depends on any sort mode.
    """
    if k < 1:
        raise ValueError("petal count must be at least 1")
    ranked = sorted(profile.alters.items(),
                    key=lambda item: (-item[1].peak, -item[1].total, item[0]))
    return [eid for eid, _score in ranked[:k]]


def influence_ratio(in_score: float, out_score: float) -> float:
    """(incoming - outgoing) / (incoming + outgoing); 0 when both are 0."""
    total = in_score + out_score
    if total == 0:
        return 0.0
    return (in_score - out_score) / total


def sort_alters(profile: InfluenceProfile, selected: list[str], mode: str) -> list[str]:
    """Reorder selected alters without changing the set.

    ``ratio`` goes from most incoming-dominant (blue) to most
    outgoing-dominant (red); the other modes sort by incoming, outgoing, or
    total influence descending.  Ties break by total then id.
    """
    if mode not in SORT_MODES:
        raise ValueError(f"sort mode must be one of {SORT_MODES}")

    def key(entity_id: str):
        score = profile.alters[entity_id]
        if mode == "ratio":
            primary = -influence_ratio(score.in_score, score.out_score)
        elif mode == "influenced_by":
            primary = -score.in_score
        elif mode == "influencing":
            primary = -score.out_score
        else:
            primary = -score.total
        return (primary, -score.total, entity_id)

    return sorted(selected, key=key)


def detail_pairs(ego: EntitySelection, alter_id: str, config: InfluenceConfig,
                 store: IndexStore,
                 bundles: Optional[dict[str, PaperBundle]] = None,
                 ego_papers: Optional[tuple[str, ...]] = None) -> DetailPairs:
    """Paper-level pairs behind one alter's petal, under the profile filters.

    Each row anchors on one ego paper (rows chronological by its year):
    the incoming column lists alter papers this ego paper references, the
    outgoing column lists alter papers citing it.
    """
    papers = store.resolve(ego) if ego_papers is None else ego_papers
    ego_set = frozenset(papers)
    topic_level = config.topic_level if config.alter_kind == "topic" else None

    def carries_alter(pid: str) -> bool:
        counts, _total = store.kind_incidence(pid, config.alter_kind, topic_level)
        return alter_id in counts

    rows = []
    for pid in sorted(papers, key=lambda p: (store.paper_year[p], p)):
        view = _view(store, bundles, pid)
        if not _in_range(view.year, config.pub_range):
            continue
        incoming = tuple(sorted(
            (r for r in view.refs
             if (config.include_self_citations or r not in ego_set) and carries_alter(r)),
            key=lambda p: (store.paper_year[p], p)))
        outgoing = tuple(sorted(
            (q for q in view.citers
             if _in_range(store.paper_year[q], config.cite_range)
             and (config.include_self_citations or q not in ego_set)
             and carries_alter(q)),
            key=lambda p: (store.paper_year[p], p)))
        if incoming or outgoing:
            rows.append(DetailRow(pid, incoming, outgoing))
    return DetailPairs(alter_id, tuple(rows))


def summary_stats(ego: EntitySelection, config: InfluenceConfig,
                  store: IndexStore,
                  bundles: Optional[dict[str, PaperBundle]] = None,
                  ego_papers: Optional[tuple[str, ...]] = None) -> SummaryStats:
    """Publication and citation totals for ego papers in the selected window.

    The citation histogram counts citing-paper years for ego papers inside
    ``pub_range`` (intentionally ignoring ``cite_range``: the histogram is
    what a citation window is picked from).  The self-citation toggle applies
    here exactly as in profile scoring.
    """
    papers = store.resolve(ego) if ego_papers is None else ego_papers
    ego_set = frozenset(papers)
    stats = SummaryStats()
    for pid in sorted(papers):
        view = _view(store, bundles, pid)
        if not _in_range(view.year, config.pub_range):
            continue
        stats.papers += 1
        stats.pub_histogram[view.year] = stats.pub_histogram.get(view.year, 0) + 1
        for cited in view.refs:
            if not config.include_self_citations and cited in ego_set:
                continue
            stats.refs_total += 1
        for citing in view.citers:
            if not config.include_self_citations and citing in ego_set:
                continue
            year = store.paper_year[citing]
            stats.cite_histogram[year] = stats.cite_histogram.get(year, 0) + 1
            stats.cites_total += 1
    if stats.papers:
        stats.refs_avg = stats.refs_total / stats.papers
        stats.cites_avg = stats.cites_total / stats.papers
    return stats
