"""Entity name search with citation-boosted relevance, plus curation.

Base relevance is tf-idf over the entity-name corpus with case-insensitive
tokens.  Single-letter query tokens match name tokens by initial, so
abbreviated author names ("J Hennessy") still find their full forms, and a
query that exactly matches a full name always outranks partial matches.
The final ranking boosts well-cited entities:

    adjusted = base ** 3 * ln(citation_count + 2)

The +2 keeps the boost positive for entities with zero citations.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from typing import Iterable, Optional

from .corpus import ENTITY_KINDS, Corpus, EntitySelection
from .indexstore import IndexStore

CITATION_EPSILON = 2.0

_TOKEN_RE = re.compile(r"[^0-9a-z]+")


def tokenize(text: str) -> list[str]:
    return [t for t in _TOKEN_RE.split(text.lower()) if t]


@dataclass(frozen=True)
class SearchHit:
    entity_id: str
    kind: str
    name: str
    paper_count: int
    citation_count: int
    hint: str
    base_relevance: float
    adjusted_relevance: float

    def to_dict(self) -> dict:
        return {
            "entity_id": self.entity_id,
            "kind": self.kind,
            "name": self.name,
            "paper_count": self.paper_count,
            "citation_count": self.citation_count,
            "hint": self.hint,
            "base_relevance": self.base_relevance,
            "adjusted_relevance": self.adjusted_relevance,
        }


def adjusted_relevance(base: float, citation_count: int,
                       epsilon: float = CITATION_EPSILON) -> float:
    """base^3 * ln(citations + epsilon): strictly increasing in both inputs."""
    return base ** 3 * math.log(citation_count + epsilon)


@dataclass(frozen=True)
class _Doc:
    entity_id: str
    kind: str
    name: str
    tokens: tuple[str, ...]
    hint: str


class SearchIndex:
    """Token index over entity names.

    Indexes every record in the entity file plus any corpus paper that lacks
    one (searchable by title), so all five kinds are reachable by name.
    """

    def __init__(self, corpus: Corpus, store: IndexStore):
        self.corpus = corpus
        self.store = store
        self._docs: list[_Doc] = []
        seen_papers = set()
        for (kind, entity_id), rec in sorted(corpus.entities.items()):
            hint = rec.extra
            if kind == "paper":
                seen_papers.add(entity_id)
                hint = hint or self._author_hint(entity_id)
            self._docs.append(_Doc(entity_id, kind, rec.name,
                                   tuple(tokenize(rec.name)), hint))
        for pid in sorted(corpus.papers):
            if pid in seen_papers:
                continue
            title = corpus.papers[pid].title or pid
            self._docs.append(_Doc(pid, "paper", title, tuple(tokenize(title)),
                                   self._author_hint(pid)))

        self._doc_count = len(self._docs)
        df: dict[str, int] = {}
        for doc in self._docs:
            for token in set(doc.tokens):
                df[token] = df.get(token, 0) + 1
        self._idf = {t: math.log((1 + self._doc_count) / (1 + n)) + 1.0
                     for t, n in df.items()}

    def _author_hint(self, paper_id: str) -> str:
        rec = self.corpus.papers.get(paper_id)
        if rec is None:
            return ""
        names = [self.corpus.name_of(a, "author") for a, _ in rec.author_slots[:3]]
        return ", ".join(names)

    # -- scoring -------------------------------------------------------------

    def _idf_of(self, token: str) -> float:
        # unseen tokens can still match by initial; give them the max idf
        return self._idf.get(token, math.log(1 + self._doc_count) + 1.0)

    def base_relevance(self, query: str, doc_tokens: Iterable[str]) -> float:
        """tf-idf over matched tokens; exact full-name matches dominate.

        A query token matches a name token exactly, or by initial when the
        query token is a single letter (half credit).  Disjoint token sets
        score zero.
        """
        query_tokens = tokenize(query)
        name_tokens = list(doc_tokens)
        if not query_tokens or not name_tokens:
            return 0.0
        counts: dict[str, int] = {}
        for token in name_tokens:
            counts[token] = counts.get(token, 0) + 1

        score = 0.0
        matched_any = False
        for qt in query_tokens:
            if qt in counts:
                tf = counts[qt] / len(name_tokens)
                score += tf * self._idf_of(qt)
                matched_any = True
            elif len(qt) == 1:
                initials = [t for t in counts if t.startswith(qt)]
                if initials:
                    tf = sum(counts[t] for t in initials) / len(name_tokens)
                    score += 0.5 * tf * max(self._idf_of(t) for t in initials)
                    matched_any = True
        if not matched_any:
            return 0.0
        if query_tokens == name_tokens:
            score += (1 + len(query_tokens)) * 1e6
        return score

    def search(self, query: str, kinds: Optional[Iterable[str]] = None,
               limit: int = 20) -> list[SearchHit]:
        """Ranked hits for a name query, optionally filtered by kind.

        Sorted by adjusted relevance descending; ties go to the higher-cited
        entity, then to id order.
        """
        if kinds is not None:
            kinds = set(kinds)
            unknown = kinds.difference(ENTITY_KINDS)
            if unknown:
                raise ValueError(f"unknown search kinds: {sorted(unknown)}")
        hits = []
        for doc in self._docs:
            if kinds is not None and doc.kind not in kinds:
                continue
            base = self.base_relevance(query, doc.tokens)
            if base <= 0:
                continue
            citations = self.store.citation_totals.get(doc.kind, {}).get(doc.entity_id, 0)
            papers = self.store.paper_counts.get(doc.kind, {}).get(doc.entity_id, 0)
            hits.append(SearchHit(
                entity_id=doc.entity_id,
                kind=doc.kind,
                name=doc.name,
                paper_count=papers,
                citation_count=citations,
                hint=doc.hint,
                base_relevance=base,
                adjusted_relevance=adjusted_relevance(base, citations),
            ))
        hits.sort(key=lambda h: (-h.adjusted_relevance, -h.citation_count, h.entity_id))
        return hits[:limit]


def curate(chosen: Iterable[tuple[str, str]] | Iterable[SearchHit],
           display_name: str) -> EntitySelection:
    """Bundle chosen entities (or hits) into one named selection.

    The selection realizes the union of the members' paper sets; it never
    mutates the corpus or any score.
    """
    members = []
    for item in chosen:
        if isinstance(item, SearchHit):
            members.append((item.entity_id, item.kind))
        else:
            entity_id, kind = item
            members.append((entity_id, kind))
    return EntitySelection(tuple(members), display_name)
