"""Citation-derived bi-directional influence, laid out as flower charts.

The package splits into: corpus loading (:mod:`corpus`), inverted indexes
and the bundle cache (:mod:`indexstore`), influence scoring
(:mod:`influence`, checked against the dense :mod:`oracle`), flower geometry
and SVG rendering (:mod:`flowergeom`, :mod:`svgrender`), entity search
(:mod:`search`), and the query surface (:mod:`config`, :mod:`engine`,
:mod:`server`, :mod:`cli`).
"""

from .config import ConfigError, ContrastSpec, FlowerConfig, decode_config, encode_config
from .corpus import (
    Corpus,
    CorpusError,
    CorpusFormatError,
    DuplicateIdError,
    EntityRecord,
    EntitySelection,
    LoadReport,
    PaperRecord,
    UnknownEntityError,
    load_corpus,
    resolve_selection,
)
from .engine import FlowerEngine
from .flowergeom import (
    ContrastLayout,
    DisplayParams,
    FlowerLayout,
    OverviewBars,
    angular_span,
    color_hex,
    compose_contrast,
    edge_width,
    layout_flower,
    node_color,
    overview_bars,
)
from .indexstore import (
    BundleCache,
    FetchLedger,
    IndexStore,
    PaperBundle,
    WarmReport,
    build_indexes,
    fetch_bundle,
    warm_cache,
)
from .influence import (
    AlterScore,
    DetailPairs,
    InfluenceConfig,
    InfluenceProfile,
    SummaryStats,
    compute_profile,
    detail_pairs,
    influence_ratio,
    is_co_contributor,
    normalization_weight,
    select_alters,
    sort_alters,
    summary_stats,
)
from .oracle import brute_force_profile, profiles_match
from .search import SearchHit, SearchIndex, adjusted_relevance, curate
from .svgrender import render_svg

__version__ = "0.1.0"
