"""Neutral data model for a citation corpus, plus loading and selections.

The on-disk format is three plain-text files:

* papers    -- one JSON object per line:
               ``{"id", "title", "year", "venue"?, "authors": [{"id", "inst"?}],
               "topics": [{"id", "level"}]}``
* citations -- tab-separated ``citing_id<TAB>cited_id`` lines, UTF-8, no header
* entities  -- one JSON object per line: ``{"id", "kind", "name", "extra"?}``

A loaded :class:`Corpus` is immutable; all cleanup (duplicate or dangling
citation rows, self-loops, dual-venue source rows) happens during load and is
tallied in a :class:`LoadReport`.
"""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Optional

logger = logging.getLogger(__name__)

ENTITY_KINDS = ("author", "venue", "institution", "topic", "paper")
ALTER_KINDS = ("author", "venue", "institution", "topic")

YEAR_MIN = 1000
YEAR_MAX = 3000


class CorpusError(Exception):
    """Base class for corpus loading and lookup failures."""


class CorpusFormatError(CorpusError):
    """A malformed row in one of the corpus files."""

    def __init__(self, filename: str, line_no: int, reason: str):
        self.filename = filename
        self.line_no = line_no
        self.reason = reason
        super().__init__(f"{filename}:{line_no}: {reason}")


class DuplicateIdError(CorpusError):
    """Two rows claim the same id."""


class UnknownEntityError(CorpusError):
    """A selection member does not exist in the corpus."""


@dataclass(frozen=True)
class PaperRecord:
    """One publication.

    ``author_slots`` preserves author order; each slot is
    ``(author_id, institution_id or None)``.  ``topic_ids`` holds
    ``(topic_id, level)`` pairs, deduplicated per paper.
    """

    paper_id: str
    title: str
    year: int
    venue_id: Optional[str]
    author_slots: tuple[tuple[str, Optional[str]], ...]
    topic_ids: tuple[tuple[str, int], ...]


@dataclass(frozen=True)
class EntityRecord:
    """A named academic entity of one of the five kinds."""

    entity_id: str
    kind: str
    name: str
    extra: str = ""


@dataclass(frozen=True)
class EntitySelection:
    """The ego of a flower: one or more entities aggregated into a paper set.

    Members are ``(entity_id, kind)`` pairs; the selection realizes the exact
    union of the member paper sets (no double counting).  Multi-member
    selections model projects, merged duplicate ids, and renamed groups.
    """

    members: tuple[tuple[str, str], ...]
    display_name: str

    def __post_init__(self):
        if not self.members:
            raise ValueError("selection needs at least one member")
        deduped = tuple(sorted(set(self.members)))
        object.__setattr__(self, "members", deduped)
        for entity_id, kind in deduped:
            if kind not in ENTITY_KINDS:
                raise ValueError(f"unknown member kind {kind!r} for {entity_id!r}")

    def member_ids(self, kind: str) -> frozenset[str]:
        return frozenset(eid for eid, k in self.members if k == kind)


@dataclass
class LoadReport:
    """Tallies from one load: what was kept, dropped, and repaired."""

    papers: int = 0
    edges: int = 0
    dangling: int = 0
    duplicates: int = 0
    self_loops: int = 0
    venue_conflicts: int = 0
    unknown_topics: int = 0

    def to_dict(self) -> dict:
        return {
            "papers": self.papers,
            "edges": self.edges,
            "dangling": self.dangling,
            "duplicates": self.duplicates,
            "self_loops": self.self_loops,
            "venue_conflicts": self.venue_conflicts,
            "unknown_topics": self.unknown_topics,
        }


class Corpus:
    """An immutable in-memory citation corpus.

    Safe for unlimited concurrent readers once constructed.  ``refs`` maps a
    citing paper to the papers it cites; ``citers`` is the exact transpose.
    """

    def __init__(
        self,
        papers: dict[str, PaperRecord],
        refs: dict[str, tuple[str, ...]],
        citers: dict[str, tuple[str, ...]],
        entities: dict[tuple[str, str], EntityRecord],
        entity_papers: dict[str, dict[str, tuple[str, ...]]],
        report: LoadReport,
    ):
        self.papers = papers
        self.refs = refs
        self.citers = citers
        self.entities = entities
        self.entity_papers = entity_papers
        self.report = report

    @classmethod
    def from_records(
        cls,
        papers: Iterable[PaperRecord],
        citation_pairs: Iterable[tuple[str, str]],
        entities: Iterable[EntityRecord],
        report: Optional[LoadReport] = None,
    ) -> "Corpus":
        """Assemble a corpus from already-parsed records.

        Deduplicates citation pairs, drops dangling or self-loop rows, drops
        paper topics that have no entity record, and counts each repair in
        the report.
        """
        report = report or LoadReport()

        entity_map: dict[tuple[str, str], EntityRecord] = {}
        for rec in entities:
            key = (rec.kind, rec.entity_id)
            if key in entity_map:
                raise DuplicateIdError(f"duplicate entity id {rec.entity_id!r} (kind {rec.kind})")
            entity_map[key] = rec

        known_topics = {eid for kind, eid in entity_map if kind == "topic"}
        paper_map: dict[str, PaperRecord] = {}
        for rec in papers:
            if rec.paper_id in paper_map:
                raise DuplicateIdError(f"duplicate paper id {rec.paper_id!r}")
            kept_topics = []
            for topic_id, level in rec.topic_ids:
                if topic_id in known_topics:
                    kept_topics.append((topic_id, level))
                else:
                    report.unknown_topics += 1
                    logger.warning("paper %s: topic %s missing from entity file, dropped",
                                   rec.paper_id, topic_id)
            if len(kept_topics) != len(rec.topic_ids):
                rec = PaperRecord(rec.paper_id, rec.title, rec.year, rec.venue_id,
                                  rec.author_slots, tuple(kept_topics))
            paper_map[rec.paper_id] = rec
        report.papers = len(paper_map)

        seen: set[tuple[str, str]] = set()
        refs_mut: dict[str, list[str]] = {pid: [] for pid in paper_map}
        citers_mut: dict[str, list[str]] = {pid: [] for pid in paper_map}
        for citing, cited in citation_pairs:
            if citing == cited:
                report.self_loops += 1
                continue
            if citing not in paper_map or cited not in paper_map:
                report.dangling += 1
                continue
            if (citing, cited) in seen:
                report.duplicates += 1
                continue
            seen.add((citing, cited))
            refs_mut[citing].append(cited)
            citers_mut[cited].append(citing)
        report.edges = len(seen)

        refs = {pid: tuple(sorted(lst)) for pid, lst in refs_mut.items()}
        citers = {pid: tuple(sorted(lst)) for pid, lst in citers_mut.items()}
        entity_papers = _build_entity_papers(paper_map)
        return cls(paper_map, refs, citers, entity_map, entity_papers, report)

    # -- lookups -----------------------------------------------------------

    def has_member(self, entity_id: str, kind: str) -> bool:
        if (kind, entity_id) in self.entities:
            return True
        if kind == "paper" and entity_id in self.papers:
            return True
        return entity_id in self.entity_papers.get(kind, {})

    def name_of(self, entity_id: str, kind: str) -> str:
        rec = self.entities.get((kind, entity_id))
        if rec is not None:
            return rec.name
        if kind == "paper" and entity_id in self.papers:
            return self.papers[entity_id].title
        return entity_id

    def papers_of(self, entity_id: str, kind: str) -> tuple[str, ...]:
        if kind == "paper":
            return (entity_id,) if entity_id in self.papers else ()
        return self.entity_papers.get(kind, {}).get(entity_id, ())


def _build_entity_papers(papers: dict[str, PaperRecord]) -> dict[str, dict[str, tuple[str, ...]]]:
    by_kind: dict[str, dict[str, set[str]]] = {kind: {} for kind in ENTITY_KINDS}
    for pid, rec in papers.items():
        for author_id, inst_id in rec.author_slots:
            by_kind["author"].setdefault(author_id, set()).add(pid)
            if inst_id is not None:
                by_kind["institution"].setdefault(inst_id, set()).add(pid)
        if rec.venue_id is not None:
            by_kind["venue"].setdefault(rec.venue_id, set()).add(pid)
        for topic_id, _level in rec.topic_ids:
            by_kind["topic"].setdefault(topic_id, set()).add(pid)
        by_kind["paper"][pid] = {pid}
    return {
        kind: {eid: tuple(sorted(pids)) for eid, pids in sorted(entries.items())}
        for kind, entries in by_kind.items()
    }


# -- file parsing ----------------------------------------------------------


def _parse_paper_line(filename: str, line_no: int, line: str) -> tuple[PaperRecord, bool]:
    try:
        obj = json.loads(line)
    except json.JSONDecodeError as exc:
        raise CorpusFormatError(filename, line_no, f"invalid JSON: {exc.msg}") from exc
    if not isinstance(obj, dict):
        raise CorpusFormatError(filename, line_no, "paper row must be a JSON object")

    paper_id = obj.get("id")
    if not isinstance(paper_id, str) or not paper_id:
        raise CorpusFormatError(filename, line_no, "missing or empty 'id'")
    title = obj.get("title", "")
    if not isinstance(title, str):
        raise CorpusFormatError(filename, line_no, "'title' must be a string")
    year = obj.get("year")
    if not isinstance(year, int) or isinstance(year, bool):
        raise CorpusFormatError(filename, line_no, "missing or non-integer 'year'")
    if not YEAR_MIN <= year <= YEAR_MAX:
        raise CorpusFormatError(filename, line_no,
                                f"year {year} outside [{YEAR_MIN}, {YEAR_MAX}]")

    venue = obj.get("venue")
    venue_conflict = False
    if venue is None or venue == "":
        venue_id = None
    elif isinstance(venue, str):
        venue_id = venue
    elif isinstance(venue, list) and venue and all(isinstance(v, str) for v in venue):
        # Source rows that carry both a journal and a conference: keep the
        # first-listed venue, never split influence between the two.
        venue_id = venue[0]
        venue_conflict = len(venue) > 1
    else:
        raise CorpusFormatError(filename, line_no, "'venue' must be a string or list of strings")

    slots = []
    for author in obj.get("authors", []):
        if not isinstance(author, dict) or not isinstance(author.get("id"), str):
            raise CorpusFormatError(filename, line_no, "author entries need a string 'id'")
        inst = author.get("inst")
        if inst is not None and not isinstance(inst, str):
            raise CorpusFormatError(filename, line_no, "author 'inst' must be a string")
        slots.append((author["id"], inst))

    topics = []
    seen_topics = set()
    for topic in obj.get("topics", []):
        if not isinstance(topic, dict) or not isinstance(topic.get("id"), str):
            raise CorpusFormatError(filename, line_no, "topic entries need a string 'id'")
        level = topic.get("level", 1)
        if not isinstance(level, int) or isinstance(level, bool) or not 0 <= level <= 5:
            raise CorpusFormatError(filename, line_no, "topic 'level' must be an integer in 0..5")
        if topic["id"] not in seen_topics:
            seen_topics.add(topic["id"])
            topics.append((topic["id"], level))

    rec = PaperRecord(paper_id, title, year, venue_id, tuple(slots), tuple(topics))
    if venue_conflict:
        logger.info("paper %s lists %d venues; kept %s", paper_id, len(venue), venue_id)
    return rec, venue_conflict


def _parse_entity_line(filename: str, line_no: int, line: str) -> EntityRecord:
    try:
        obj = json.loads(line)
    except json.JSONDecodeError as exc:
        raise CorpusFormatError(filename, line_no, f"invalid JSON: {exc.msg}") from exc
    if not isinstance(obj, dict):
        raise CorpusFormatError(filename, line_no, "entity row must be a JSON object")
    entity_id = obj.get("id")
    kind = obj.get("kind")
    name = obj.get("name")
    if not isinstance(entity_id, str) or not entity_id:
        raise CorpusFormatError(filename, line_no, "missing or empty 'id'")
    if kind not in ENTITY_KINDS:
        raise CorpusFormatError(filename, line_no, f"unknown kind {kind!r}")
    if not isinstance(name, str) or not name:
        raise CorpusFormatError(filename, line_no, "missing or empty 'name'")
    extra = obj.get("extra", "")
    if not isinstance(extra, str):
        raise CorpusFormatError(filename, line_no, "'extra' must be a string")
    return EntityRecord(entity_id, kind, name, extra)


def load_corpus(paper_file: str | Path, citation_file: str | Path,
                entity_file: str | Path) -> Corpus:
    """Load and validate a corpus from the three files.

    Duplicate citation rows are deduplicated, dangling rows (either endpoint
    unknown) are dropped, and both are counted in the returned corpus's
    ``report``.  Malformed rows raise :class:`CorpusFormatError` carrying the
    file name and line number; id collisions raise :class:`DuplicateIdError`.

    Loading is deterministic: the same files always produce a structurally
    identical corpus.
    """
    paper_path = Path(paper_file)
    citation_path = Path(citation_file)
    entity_path = Path(entity_file)

    entities = []
    with entity_path.open(encoding="utf-8") as fh:
        for line_no, line in enumerate(fh, start=1):
            line = line.strip()
            if not line:
                continue
            entities.append(_parse_entity_line(entity_path.name, line_no, line))

    report = LoadReport()
    papers = []
    with paper_path.open(encoding="utf-8") as fh:
        for line_no, line in enumerate(fh, start=1):
            line = line.strip()
            if not line:
                continue
            rec, venue_conflict = _parse_paper_line(paper_path.name, line_no, line)
            if venue_conflict:
                report.venue_conflicts += 1
            papers.append(rec)

    pairs = []
    with citation_path.open(encoding="utf-8") as fh:
        for line_no, line in enumerate(fh, start=1):
            line = line.rstrip("\n").rstrip("\r")
            if not line:
                continue
            parts = line.split("\t")
            if len(parts) != 2 or not parts[0] or not parts[1]:
                raise CorpusFormatError(citation_path.name, line_no,
                                        "expected 'citing_id<TAB>cited_id'")
            pairs.append((parts[0], parts[1]))

    return Corpus.from_records(papers, pairs, entities, report)


def resolve_selection(selection: EntitySelection, corpus: Corpus) -> tuple[str, ...]:
    """Realize a selection as the deduplicated union of member paper sets.

    Raises :class:`UnknownEntityError` naming the first member that does not
    exist in the corpus.  The result is sorted for determinism.
    """
    result: set[str] = set()
    for entity_id, kind in selection.members:
        if not corpus.has_member(entity_id, kind):
            raise UnknownEntityError(f"unknown {kind} {entity_id!r} in selection")
        result.update(corpus.papers_of(entity_id, kind))
    return tuple(sorted(result))
