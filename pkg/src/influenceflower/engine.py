"""One request surface shared by the HTTP server and the batch CLI.

The engine owns the corpus, indexes, bundle cache, and search index, and
turns a :class:`FlowerConfig` into the full response payload (layout, bars,
stats, canonical config link, fetch diagnostics).  Responses are pure
functions of the config against an unchanged corpus; the diagnostics block
is the only part that varies with cache temperature.
"""

from __future__ import annotations

from dataclasses import replace
from typing import Optional

from .config import ConfigError, FlowerConfig, encode_config
from .corpus import Corpus, EntitySelection, load_corpus
from .flowergeom import (
    DisplayParams,
    compose_contrast,
    layout_flower,
    overview_bars,
)
from .indexstore import (
    LEVEL_COMPLETE,
    BundleCache,
    FetchLedger,
    IndexStore,
    WarmReport,
    build_indexes,
)
from .influence import (
    InfluenceProfile,
    compute_profile,
    detail_pairs,
    select_alters,
    sort_alters,
    summary_stats,
)
from .search import SearchIndex
from .svgrender import render_svg


class AlterNotFound(KeyError):
    """The requested alter has no influence relation with the ego."""


class FlowerEngine:
    def __init__(self, corpus: Corpus, cache_dir: Optional[str] = None,
                 cache_cap: Optional[int] = None,
                 display: DisplayParams = DisplayParams()):
        self.corpus = corpus
        self.store: IndexStore = build_indexes(corpus)
        self.cache = BundleCache(self.store, cache_dir, cache_cap)
        self.search_index = SearchIndex(corpus, self.store)
        self.display = display

    @classmethod
    def from_files(cls, papers, citations, entities,
                   cache_dir: Optional[str] = None,
                   cache_cap: Optional[int] = None) -> "FlowerEngine":
        return cls(load_corpus(papers, citations, entities),
                   cache_dir=cache_dir, cache_cap=cache_cap)

    # -- helpers ---------------------------------------------------------------

    def warm(self, selection: EntitySelection) -> WarmReport:
        return self.cache.warm(selection)

    def search(self, query: str, kinds=None, limit: int = 20) -> list[dict]:
        return [hit.to_dict() for hit in
                self.search_index.search(query, kinds, limit)]

    def _full_span(self, papers, bundles) -> tuple[int, int]:
        """The ego's academic span: first publication to last citation year."""
        if not papers:
            return (0, 0)
        years = [bundles[p].year for p in papers]
        last = max(years)
        for pid in papers:
            for citing in bundles[pid].citers:
                year = self.store.paper_year[citing]
                if year > last:
                    last = year
        return (min(years), last)

    def _resolved(self, config: FlowerConfig, ledger: FetchLedger):
        """Fetch ego bundles and pin down concrete year ranges."""
        selection = config.selection()
        papers = self.cache.fetch_selection_papers(selection, ledger)
        bundles = {p: self.cache.fetch(p, LEVEL_COMPLETE, ledger) for p in papers}
        full = self._full_span(papers, bundles)
        pub_range = config.pub_range or full
        cite_range = config.cite_range or full
        return selection, papers, bundles, pub_range, cite_range

    @staticmethod
    def _check_contrast(config: FlowerConfig, pub_range, cite_range):
        if config.contrast is None:
            return None
        c_pub = config.contrast.pub_range or pub_range
        c_cite = config.contrast.cite_range or cite_range
        if not (pub_range[0] <= c_pub[0] and c_pub[1] <= pub_range[1]):
            raise ConfigError("contrast publication range must lie within the anchor range")
        if not (cite_range[0] <= c_cite[0] and c_cite[1] <= cite_range[1]):
            raise ConfigError("contrast citation range must lie within the anchor range")
        return c_pub, c_cite

    @staticmethod
    def _stats_dict(stats) -> dict:
        return {
            "papers": stats.papers,
            "refs_total": stats.refs_total,
            "cites_total": stats.cites_total,
            "refs_avg": stats.refs_avg,
            "cites_avg": stats.cites_avg,
            "pub_histogram": [[y, c] for y, c in sorted(stats.pub_histogram.items())],
            "cite_histogram": [[y, c] for y, c in sorted(stats.cite_histogram.items())],
        }

    # -- the main entry points ---------------------------------------------------

    def _compose(self, config: FlowerConfig, ledger: FetchLedger):
        """Resolve, score, select, sort, and lay out one flower."""
        selection, papers, bundles, pub_range, cite_range = \
            self._resolved(config, ledger)
        contrast_ranges = self._check_contrast(config, pub_range, cite_range)

        anchor_cfg = config.influence_config(pub_range, cite_range)
        profile = compute_profile(selection, anchor_cfg, self.store,
                                  bundles=bundles, ego_papers=papers)
        selected = select_alters(profile, config.petal_count) if profile.alters else []
        ordered = sort_alters(profile, selected, config.sort_mode)
        layout = layout_flower(profile, ordered, selection.display_name,
                               self.corpus.name_of, self.display)
        if contrast_ranges is not None:
            c_cfg = replace(anchor_cfg, pub_range=contrast_ranges[0],
                            cite_range=contrast_ranges[1])
            c_profile = compute_profile(selection, c_cfg, self.store,
                                        bundles=bundles, ego_papers=papers)
            layout = compose_contrast(layout, c_profile)
        return selection, papers, bundles, pub_range, cite_range, \
            anchor_cfg, profile, ordered, layout

    def flower_response(self, config: FlowerConfig) -> dict:
        """Compute the full flower payload for one config.

        With a warm cache this performs exactly N+1 fetches for an ego of N
        papers (the selection lookup plus one complete bundle per paper),
        reported in the diagnostics block.
        """
        ledger = FetchLedger()
        (selection, papers, bundles, pub_range, cite_range,
         anchor_cfg, profile, ordered, layout) = self._compose(config, ledger)

        bars = overview_bars(profile, set(ordered), self.corpus.name_of)
        stats = summary_stats(selection, anchor_cfg, self.store,
                              bundles=bundles, ego_papers=papers)
        link = encode_config(config.with_ranges(pub_range, cite_range))
        return {
            "layout": layout.to_dict(),
            "bars": bars.to_dict(),
            "stats": self._stats_dict(stats),
            "config_link": link,
            "diagnostics": {
                "ego_papers": len(papers),
                "fetches": ledger.fetches,
                "hits": ledger.hits,
                "misses": ledger.misses,
            },
        }

    def flower_layout(self, config: FlowerConfig):
        """The layout object alone (used by the SVG emitter)."""
        return self._compose(config, FetchLedger())[-1]

    def flower_svg(self, config: FlowerConfig) -> str:
        return render_svg(self.flower_layout(config))

    def profile_for(self, config: FlowerConfig) -> InfluenceProfile:
        ledger = FetchLedger()
        selection, papers, bundles, pub_range, cite_range = \
            self._resolved(config, ledger)
        anchor_cfg = config.influence_config(pub_range, cite_range)
        return compute_profile(selection, anchor_cfg, self.store,
                               bundles=bundles, ego_papers=papers)

    def detail_response(self, config: FlowerConfig, alter_id: str) -> dict:
        """Paper-level pairs behind one petal, under the flower's filters."""
        ledger = FetchLedger()
        selection, papers, bundles, pub_range, cite_range = \
            self._resolved(config, ledger)
        anchor_cfg = config.influence_config(pub_range, cite_range)
        profile = compute_profile(selection, anchor_cfg, self.store,
                                  bundles=bundles, ego_papers=papers)
        if alter_id not in profile.alters:
            raise AlterNotFound(alter_id)
        pairs = detail_pairs(selection, alter_id, anchor_cfg, self.store,
                             bundles=bundles, ego_papers=papers)

        def paper_info(pid: str) -> dict:
            rec = self.corpus.papers[pid]
            return {"id": pid, "title": rec.title, "year": rec.year}

        return {
            "alter_id": alter_id,
            "alter_name": self.corpus.name_of(alter_id, config.alter_kind),
            "pair_count": pairs.pair_count,
            "rows": [
                {
                    "ego_paper": paper_info(row.ego_paper),
                    "incoming": [paper_info(p) for p in row.incoming],
                    "outgoing": [paper_info(p) for p in row.outgoing],
                }
                for row in pairs.rows
            ],
        }

    def profile_records(self, config: FlowerConfig) -> list[dict]:
        """Line-delimited profile export (consumed by the CSV emitter)."""
        return self.profile_for(config).records(self.corpus.name_of)
