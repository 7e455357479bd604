"""Seeded synthetic corpora for self-checks, property tests, and demos.

Everything here is deterministic for a given seed.  Generated corpora
exercise the awkward shapes real data has: papers without venues, author
slots without institutions, duplicate-institution slots, multi-level topics,
and citation edges in both time directions.
"""

from __future__ import annotations

import json
import random
from pathlib import Path
from typing import Optional

from .config import ContrastSpec, FlowerConfig
from .corpus import Corpus, EntityRecord, EntitySelection, PaperRecord

EGO_KINDS = ("author", "venue", "institution", "topic", "paper", "project")


def random_corpus(seed: int, max_papers: int = 50, max_entities: int = 20,
                  max_edges: int = 200) -> Corpus:
    rng = random.Random(seed)
    n_papers = rng.randint(3, max_papers)
    authors = [f"A{i:03d}" for i in range(rng.randint(2, max_entities))]
    venues = [f"V{i:03d}" for i in range(rng.randint(1, max(2, max_entities // 2)))]
    insts = [f"I{i:03d}" for i in range(rng.randint(1, max(2, max_entities // 2)))]
    topics = [f"T{i:03d}" for i in range(rng.randint(2, max_entities))]
    topic_level = {t: rng.choice((1, 1, 1, 2)) for t in topics}

    papers = []
    for i in range(n_papers):
        pid = f"P{i:04d}"
        year = rng.randint(1985, 2024)
        venue = rng.choice(venues) if rng.random() < 0.85 else None
        slots = []
        n_slots = rng.choice((0, 1, 1, 2, 2, 2, 3, 4))
        if n_slots:
            chosen = [rng.choice(authors) for _ in range(n_slots)]
            for author in chosen:
                inst = rng.choice(insts) if rng.random() < 0.8 else None
                slots.append((author, inst))
        n_topics = rng.choice((0, 1, 1, 2, 2, 3))
        paper_topics = tuple(
            (t, topic_level[t]) for t in rng.sample(topics, min(n_topics, len(topics))))
        papers.append(PaperRecord(pid, f"Study {i} of synthetic phenomena",
                                  year, venue, tuple(slots), paper_topics))

    pids = [p.paper_id for p in papers]
    edges = set()
    for _ in range(rng.randint(0, max_edges)):
        citing, cited = rng.sample(pids, 2)
        edges.add((citing, cited))

    entities = []
    for author in authors:
        entities.append(EntityRecord(author, "author", f"Author {author[1:]}",
                                     f"Institute {rng.randint(0, 9)}"))
    for venue in venues:
        entities.append(EntityRecord(venue, "venue", f"Venue {venue[1:]}", venue))
    for inst in insts:
        entities.append(EntityRecord(inst, "institution", f"Institution {inst[1:]}"))
    for topic in topics:
        entities.append(EntityRecord(topic, "topic", f"Topic {topic[1:]}"))

    return Corpus.from_records(papers, sorted(edges), entities)


def random_selection(rng: random.Random, corpus: Corpus,
                     kind: str) -> Optional[EntitySelection]:
    """A selection of the given ego kind; 'project' mixes 2-3 members."""
    def pool(k: str) -> list[str]:
        if k == "paper":
            return sorted(corpus.papers)
        return sorted(corpus.entity_papers.get(k, {}))

    if kind == "project":
        candidates = [(eid, k) for k in ("author", "venue", "paper", "topic")
                      for eid in pool(k)]
        if len(candidates) < 2:
            return None
        members = rng.sample(candidates, rng.randint(2, min(3, len(candidates))))
        return EntitySelection(tuple(members), "Synthetic project")
    ids = pool(kind)
    if not ids:
        return None
    return EntitySelection(((rng.choice(ids), kind),), f"Synthetic {kind}")


def random_config(rng: random.Random, corpus: Corpus) -> Optional[FlowerConfig]:
    """A valid random FlowerConfig against this corpus."""
    kind = rng.choice(EGO_KINDS)
    selection = random_selection(rng, corpus, kind)
    if selection is None:
        return None
    alter_kind = rng.choice(("author", "venue", "institution", "topic"))
    pub = None
    cite = None
    if rng.random() < 0.5:
        lo = rng.randint(1985, 2024)
        pub = (lo, rng.randint(lo, 2024))
    if rng.random() < 0.5:
        lo = rng.randint(1985, 2024)
        cite = (lo, rng.randint(lo, 2024))
    contrast = None
    if pub is not None and cite is not None and rng.random() < 0.3:
        c_lo = rng.randint(pub[0], pub[1])
        c_pub = (c_lo, rng.randint(c_lo, pub[1]))
        contrast = ContrastSpec(pub_range=c_pub, cite_range=None)
    return FlowerConfig(
        members=selection.members,
        display_name=selection.display_name,
        alter_kind=alter_kind,
        pub_range=pub,
        cite_range=cite,
        petal_count=rng.randint(1, 50),
        sort_mode=rng.choice(("ratio", "influenced_by", "influencing", "total")),
        include_self_citations=rng.random() < 0.7,
        exclude_co_contributors=rng.random() < 0.3,
        s1=rng.random() < 0.7,
        s2=rng.random() < 0.3,
        s3=rng.random() < 0.3,
        topic_level=rng.choice((1, 1, 1, 2)),
        contrast=contrast,
    )


def write_corpus_files(corpus: Corpus, directory: str | Path,
                       ) -> tuple[Path, Path, Path]:
    """Serialize a corpus back to the three-file ingest format."""
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    papers_path = directory / "papers.jsonl"
    citations_path = directory / "citations.tsv"
    entities_path = directory / "entities.jsonl"

    with papers_path.open("w", encoding="utf-8") as fh:
        for pid in sorted(corpus.papers):
            rec = corpus.papers[pid]
            row = {
                "id": rec.paper_id,
                "title": rec.title,
                "year": rec.year,
                "venue": rec.venue_id,
                "authors": [{"id": a, **({"inst": i} if i else {})}
                            for a, i in rec.author_slots],
                "topics": [{"id": t, "level": lv} for t, lv in rec.topic_ids],
            }
            fh.write(json.dumps(row, sort_keys=True) + "\n")

    with citations_path.open("w", encoding="utf-8") as fh:
        for citing in sorted(corpus.refs):
            for cited in corpus.refs[citing]:
                fh.write(f"{citing}\t{cited}\n")

    with entities_path.open("w", encoding="utf-8") as fh:
        for (kind, eid) in sorted(corpus.entities):
            rec = corpus.entities[(kind, eid)]
            row = {"id": rec.entity_id, "kind": rec.kind, "name": rec.name}
            if rec.extra:
                row["extra"] = rec.extra
            fh.write(json.dumps(row, sort_keys=True) + "\n")

    return papers_path, citations_path, entities_path
