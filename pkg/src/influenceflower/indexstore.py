"""Inverted indexes over a corpus and a two-tier per-paper bundle cache.

The :class:`IndexStore` holds everything flower generation reads about
*linked* papers (years, venue, entity incidences, adjacency).  The
:class:`BundleCache` holds per-paper bundles at two levels:

* ``partial``  -- metadata only: year, venue, authors (+institutions), topics
* ``complete`` -- metadata plus reference and citer id lists

Generating a flower for an ego with N papers costs exactly N+1 fetches
against the cache: one selection lookup plus one complete bundle per ego
paper.  The :class:`FetchLedger` counts them per request, split by hit/miss.

Cache entries persist (optionally) in a two-level fan-out directory, one
JSON record per paper, written atomically under a single-writer lock.
"""

from __future__ import annotations

import hashlib
import json
import os
import threading
import urllib.parse
from collections import OrderedDict
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

from .corpus import Corpus, EntitySelection, UnknownEntityError, resolve_selection

LEVEL_PARTIAL = "partial"
LEVEL_COMPLETE = "complete"


@dataclass
class FetchLedger:
    """Per-request counters of cache traffic; never decreases within a request."""

    hits: int = 0
    misses: int = 0
    selection_lookups: int = 0

    @property
    def fetches(self) -> int:
        return self.hits + self.misses + self.selection_lookups

    def reset(self) -> None:
        self.hits = 0
        self.misses = 0
        self.selection_lookups = 0


@dataclass(frozen=True)
class PaperBundle:
    """Cached per-paper record.

    A complete bundle carries the same metadata as the partial bundle for the
    same paper, plus reference and citer id lists.
    """

    paper_id: str
    level: str
    year: int
    venue_id: Optional[str]
    author_slots: tuple[tuple[str, Optional[str]], ...]
    topics: tuple[tuple[str, int], ...]
    refs: Optional[tuple[str, ...]] = None
    citers: Optional[tuple[str, ...]] = None

    def to_record(self) -> dict:
        rec = {
            "id": self.paper_id,
            "level": self.level,
            "year": self.year,
            "venue": self.venue_id,
            "authors": [[a, i] for a, i in self.author_slots],
            "topics": [[t, lv] for t, lv in self.topics],
        }
        if self.level == LEVEL_COMPLETE:
            rec["refs"] = list(self.refs or ())
            rec["citers"] = list(self.citers or ())
        return rec

    @classmethod
    def from_record(cls, rec: dict) -> "PaperBundle":
        level = rec["level"]
        return cls(
            paper_id=rec["id"],
            level=level,
            year=rec["year"],
            venue_id=rec["venue"],
            author_slots=tuple((a, i) for a, i in rec["authors"]),
            topics=tuple((t, lv) for t, lv in rec["topics"]),
            refs=tuple(rec["refs"]) if level == LEVEL_COMPLETE else None,
            citers=tuple(rec["citers"]) if level == LEVEL_COMPLETE else None,
        )


class IndexStore:
    """Immutable indexes derived from one corpus; safe for concurrent readers.

    ``citers`` is the exact transpose of ``refs``.  Per-entity citation
    totals sum the citer counts over each entity's papers (used by search
    ranking).
    """

    def __init__(self, corpus: Corpus):
        self.corpus = corpus
        self.refs = corpus.refs
        self.citers = corpus.citers
        self.entity_papers = corpus.entity_papers

        self.paper_year: dict[str, int] = {}
        self.paper_venue: dict[str, Optional[str]] = {}
        # per paper: author -> slot count, institution -> slot count,
        # topic level -> sorted topic ids
        self._author_counts: dict[str, dict[str, int]] = {}
        self._author_total: dict[str, int] = {}
        self._inst_counts: dict[str, dict[str, int]] = {}
        self._inst_total: dict[str, int] = {}
        self._topics_by_level: dict[str, dict[int, tuple[str, ...]]] = {}
        self._topic_level: dict[str, dict[str, int]] = {}

        for pid, rec in corpus.papers.items():
            self.paper_year[pid] = rec.year
            self.paper_venue[pid] = rec.venue_id
            authors: dict[str, int] = {}
            insts: dict[str, int] = {}
            inst_total = 0
            for author_id, inst_id in rec.author_slots:
                authors[author_id] = authors.get(author_id, 0) + 1
                if inst_id is not None:
                    insts[inst_id] = insts.get(inst_id, 0) + 1
                    inst_total += 1
            self._author_counts[pid] = authors
            self._author_total[pid] = len(rec.author_slots)
            self._inst_counts[pid] = insts
            self._inst_total[pid] = inst_total
            levels: dict[int, list[str]] = {}
            tlv: dict[str, int] = {}
            for topic_id, level in rec.topic_ids:
                levels.setdefault(level, []).append(topic_id)
                tlv[topic_id] = level
            self._topics_by_level[pid] = {lv: tuple(sorted(ts)) for lv, ts in levels.items()}
            self._topic_level[pid] = tlv

        self.citation_totals: dict[str, dict[str, int]] = {}
        self.paper_counts: dict[str, dict[str, int]] = {}
        for kind, entries in self.entity_papers.items():
            totals = {}
            counts = {}
            for entity_id, pids in entries.items():
                totals[entity_id] = sum(len(self.citers.get(p, ())) for p in pids)
                counts[entity_id] = len(pids)
            self.citation_totals[kind] = totals
            self.paper_counts[kind] = counts

    # -- incidence tables used by influence scoring -------------------------

    def kind_incidence(self, paper_id: str, kind: str,
                       topic_level: Optional[int] = None) -> tuple[dict[str, int], int]:
        """Appearance counts of kind-`kind` entities on a paper.

        Returns ``(entity -> appearances, total appearances)``.  Venue
        incidence is 0/1.  For topics, only the requested level counts; with
        ``topic_level=None`` every topic on the paper counts.
        """
        if kind == "author":
            return self._author_counts[paper_id], self._author_total[paper_id]
        if kind == "institution":
            return self._inst_counts[paper_id], self._inst_total[paper_id]
        if kind == "venue":
            venue = self.paper_venue[paper_id]
            return ({venue: 1}, 1) if venue is not None else ({}, 0)
        if kind == "topic":
            by_level = self._topics_by_level[paper_id]
            if topic_level is None:
                merged = {t: 1 for ts in by_level.values() for t in ts}
                return merged, len(merged)
            topics = by_level.get(topic_level, ())
            return {t: 1 for t in topics}, len(topics)
        raise ValueError(f"no incidence table for kind {kind!r}")

    def topic_level_of(self, paper_id: str, topic_id: str) -> Optional[int]:
        return self._topic_level[paper_id].get(topic_id)

    def resolve(self, selection: EntitySelection) -> tuple[str, ...]:
        return resolve_selection(selection, self.corpus)

    def bundle(self, paper_id: str, level: str) -> PaperBundle:
        """Materialize a bundle straight from the index (never cached here)."""
        rec = self.corpus.papers.get(paper_id)
        if rec is None:
            raise UnknownEntityError(f"unknown paper {paper_id!r}")
        refs = self.refs.get(paper_id, ()) if level == LEVEL_COMPLETE else None
        citers = self.citers.get(paper_id, ()) if level == LEVEL_COMPLETE else None
        return PaperBundle(paper_id, level, rec.year, rec.venue_id,
                           rec.author_slots, rec.topic_ids, refs, citers)


def build_indexes(corpus: Corpus) -> IndexStore:
    """Build all index families; deterministic for a given corpus."""
    return IndexStore(corpus)


@dataclass
class WarmReport:
    """New cache entries written by one warming pass."""

    complete: int = 0
    partial: int = 0

    def to_dict(self) -> dict:
        return {"complete": self.complete, "partial": self.partial}


class BundleCache:
    """Two-tier bundle cache: in-memory MRU layer over an optional directory.

    Entries are created on first fetch and persisted (when a directory is
    configured) as one JSON record per paper under a two-level fan-out.
    Writes are serialized and atomic, so readers never observe torn entries.
    A ``max_memory_entries`` cap evicts least-recently-used entries from the
    memory layer only; persisted records stay on disk.
    """

    def __init__(self, store: IndexStore, directory: Optional[str | Path] = None,
                 max_memory_entries: Optional[int] = None):
        self.store = store
        self.directory = Path(directory) if directory is not None else None
        if self.directory is not None:
            self.directory.mkdir(parents=True, exist_ok=True)
        self.max_memory_entries = max_memory_entries
        self._memory: OrderedDict[str, PaperBundle] = OrderedDict()
        self._write_lock = threading.Lock()

    # -- fetch paths --------------------------------------------------------

    def fetch(self, paper_id: str, level: str = LEVEL_COMPLETE,
              ledger: Optional[FetchLedger] = None) -> PaperBundle:
        """Return a bundle at the requested level or higher.

        A hit means an entry at a sufficient level already existed (memory or
        disk).  On miss the bundle is materialized from the index and the
        cache entry is created; an existing partial entry is upgraded in
        place when a complete bundle is requested, never downgraded.
        """
        cached = self._lookup(paper_id)
        if cached is not None and (cached.level == LEVEL_COMPLETE or level == LEVEL_PARTIAL):
            if ledger is not None:
                ledger.hits += 1
            self._touch(paper_id, cached)
            return cached

        bundle = self.store.bundle(paper_id, level)
        if ledger is not None:
            ledger.misses += 1
        self._put(paper_id, bundle)
        return bundle

    def fetch_selection_papers(self, selection: EntitySelection,
                               ledger: Optional[FetchLedger] = None) -> tuple[str, ...]:
        """Resolve the ego's paper set; counts as one fetch in the ledger."""
        if ledger is not None:
            ledger.selection_lookups += 1
        return self.store.resolve(selection)

    def warm(self, selection: EntitySelection) -> WarmReport:
        """Pre-populate the cache for one ego.

        Ego papers are cached at complete level; every referenced or citing
        paper at partial level.  Counts only newly written entries, so a
        second identical warming reports zero.
        """
        report = WarmReport()
        ego_papers = self.store.resolve(selection)
        linked: set[str] = set()
        for pid in ego_papers:
            linked.update(self.store.refs.get(pid, ()))
            linked.update(self.store.citers.get(pid, ()))
            cached = self._lookup(pid)
            if cached is None or cached.level != LEVEL_COMPLETE:
                self._put(pid, self.store.bundle(pid, LEVEL_COMPLETE))
                report.complete += 1
        for pid in sorted(linked.difference(ego_papers)):
            if self._lookup(pid) is None:
                self._put(pid, self.store.bundle(pid, LEVEL_PARTIAL))
                report.partial += 1
        return report

    def cached_level(self, paper_id: str) -> Optional[str]:
        cached = self._lookup(paper_id)
        return cached.level if cached is not None else None

    # -- memory layer --------------------------------------------------------

    def _touch(self, paper_id: str, bundle: PaperBundle) -> None:
        with self._write_lock:
            self._memory[paper_id] = bundle
            self._memory.move_to_end(paper_id)
            self._evict()

    def _evict(self) -> None:
        if self.max_memory_entries is None:
            return
        while len(self._memory) > self.max_memory_entries:
            self._memory.popitem(last=False)

    def _lookup(self, paper_id: str) -> Optional[PaperBundle]:
        bundle = self._memory.get(paper_id)
        if bundle is not None:
            return bundle
        return self._read_disk(paper_id)

    def _put(self, paper_id: str, bundle: PaperBundle) -> None:
        with self._write_lock:
            self._memory[paper_id] = bundle
            self._memory.move_to_end(paper_id)
            self._evict()
            self._write_disk(paper_id, bundle)

    # -- disk layer ----------------------------------------------------------

    def _entry_path(self, paper_id: str) -> Optional[Path]:
        if self.directory is None:
            return None
        digest = hashlib.md5(paper_id.encode("utf-8")).hexdigest()
        safe = urllib.parse.quote(paper_id, safe="")
        return self.directory / digest[:2] / digest[2:4] / f"{safe}.json"

    def _read_disk(self, paper_id: str) -> Optional[PaperBundle]:
        path = self._entry_path(paper_id)
        if path is None or not path.exists():
            return None
        with path.open(encoding="utf-8") as fh:
            line = fh.readline().strip()
        if not line:
            return None
        return PaperBundle.from_record(json.loads(line))

    def _write_disk(self, paper_id: str, bundle: PaperBundle) -> None:
        path = self._entry_path(paper_id)
        if path is None:
            return
        path.parent.mkdir(parents=True, exist_ok=True)
        tmp = path.with_suffix(".tmp")
        with tmp.open("w", encoding="utf-8") as fh:
            fh.write(json.dumps(bundle.to_record(), sort_keys=True))
            fh.write("\n")
        os.replace(tmp, path)


def fetch_bundle(cache: BundleCache, paper_id: str, level: str,
                 ledger: Optional[FetchLedger] = None) -> PaperBundle:
    """Module-level convenience wrapper around :meth:`BundleCache.fetch`."""
    return cache.fetch(paper_id, level, ledger)


def warm_cache(cache: BundleCache, selection: EntitySelection) -> WarmReport:
    """Module-level convenience wrapper around :meth:`BundleCache.warm`."""
    return cache.warm(selection)
