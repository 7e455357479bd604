"""Operator command line: ingest, index, warm, flower, serve, oracle-check.

Exit codes: 0 success, 1 user error (bad inputs, malformed files),
2 internal error (unexpected failure or a failed self-check).
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import pickle
import random
import sys
import traceback
from pathlib import Path

from .config import ConfigError, FlowerConfig
from .corpus import CorpusError, EntitySelection, load_corpus
from .engine import FlowerEngine
from .indexstore import build_indexes
from .influence import InfluenceConfig, compute_profile
from .oracle import brute_force_profile, profiles_match
from .synth import EGO_KINDS, random_corpus, random_selection

EXIT_OK = 0
EXIT_USER = 1
EXIT_INTERNAL = 2


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on usage errors; the CLI contract reserves 2 for
    # internal failures, so route usage problems to exit code 1
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USER)


def _corpus_args(parser: argparse.ArgumentParser):
    parser.add_argument("--papers", help="papers file (JSON lines)")
    parser.add_argument("--citations", help="citations file (tab-separated)")
    parser.add_argument("--entities", help="entities file (JSON lines)")
    parser.add_argument("--index", help="pickled index from the 'index' subcommand")
    parser.add_argument("--cache-dir", help="bundle cache directory")


def _load_engine(args) -> FlowerEngine:
    if args.index:
        with open(args.index, "rb") as fh:
            corpus = pickle.load(fh)
        return FlowerEngine(corpus, cache_dir=args.cache_dir)
    missing = [name for name in ("papers", "citations", "entities")
               if not getattr(args, name)]
    if missing:
        raise ConfigError(
            "missing corpus inputs: provide --index or --" + " --".join(missing))
    return FlowerEngine.from_files(args.papers, args.citations, args.entities,
                                   cache_dir=args.cache_dir)


def _parse_selection(spec: str) -> EntitySelection:
    """Accept either the JSON selection form or 'id:kind[,id:kind]' shorthand."""
    spec = spec.strip()
    if spec.startswith("{"):
        data = json.loads(spec)
        members = tuple((m[0], m[1]) for m in data.get("members", []))
        return EntitySelection(members, data.get("name", "selection"))
    members = []
    for part in spec.split(","):
        entity_id, _, kind = part.strip().partition(":")
        if not entity_id or not kind:
            raise ConfigError(f"bad selection member {part!r}; expected 'id:kind'")
        members.append((entity_id, kind))
    return EntitySelection(tuple(members), spec)


# -- subcommands ---------------------------------------------------------------


def cmd_ingest(args) -> int:
    corpus = load_corpus(args.papers, args.citations, args.entities)
    report = corpus.report.to_dict()
    print(json.dumps(report, indent=2, sort_keys=True))
    if args.report:
        Path(args.report).write_text(json.dumps(report, sort_keys=True) + "\n",
                                     encoding="utf-8")
    return EXIT_OK


def cmd_index(args) -> int:
    corpus = load_corpus(args.papers, args.citations, args.entities)
    with open(args.out, "wb") as fh:
        pickle.dump(corpus, fh)
    print(json.dumps({"papers": corpus.report.papers,
                      "edges": corpus.report.edges,
                      "out": args.out}, sort_keys=True))
    return EXIT_OK


def cmd_warm(args) -> int:
    engine = _load_engine(args)
    selection = _parse_selection(args.selection)
    report = engine.warm(selection)
    print(json.dumps(report.to_dict(), sort_keys=True))
    return EXIT_OK


def cmd_flower(args) -> int:
    outputs = (args.json, args.svg, args.csv, args.profile)
    if not any(outputs):
        raise ConfigError(
            "nothing to do: pass at least one of --json/--svg/--csv/--profile")
    engine = _load_engine(args)
    config = FlowerConfig.from_dict(json.loads(Path(args.config).read_text(encoding="utf-8")))
    if args.json:
        response = engine.flower_response(config)
        Path(args.json).write_text(
            json.dumps(response, indent=2, sort_keys=True) + "\n", encoding="utf-8")
    if args.svg:
        Path(args.svg).write_text(engine.flower_svg(config), encoding="utf-8")
    if args.csv or args.profile:
        records = engine.profile_records(config)
        if args.csv:
            fields = ["alter_id", "name", "kind", "in_score", "out_score",
                      "raw_ref_count", "raw_cite_count", "co_contributor"]
            with open(args.csv, "w", newline="", encoding="utf-8") as fh:
                writer = csv.DictWriter(fh, fieldnames=fields)
                writer.writeheader()
                writer.writerows(records)
        if args.profile:
            with open(args.profile, "w", encoding="utf-8") as fh:
                for record in records:
                    fh.write(json.dumps(record, sort_keys=True) + "\n")
    return EXIT_OK


def apply_serve_environment(args, environ=os.environ) -> int:
    """Fill unset serve options from INFLUENCE_* variables; returns the port."""
    corpus_dir = environ.get("INFLUENCE_CORPUS")
    if not args.papers and not args.index and corpus_dir:
        base = Path(corpus_dir)
        args.papers = str(base / "papers.jsonl")
        args.citations = str(base / "citations.tsv")
        args.entities = str(base / "entities.jsonl")
        if args.gallery is None and (base / "gallery.jsonl").exists():
            args.gallery = str(base / "gallery.jsonl")
    if args.cache_dir is None:
        args.cache_dir = environ.get("INFLUENCE_CACHE")
    return args.port or int(environ.get("INFLUENCE_PORT", "8080"))


def cmd_serve(args) -> int:
    port = apply_serve_environment(args)
    engine = _load_engine(args)

    from .server import run_server

    run_server(engine, args.host, port, args.gallery, args.static)
    return EXIT_OK


def cmd_oracle_check(args) -> int:
    rng = random.Random(args.seed)
    passed = 0
    failures = []
    for case in range(args.cases):
        corpus = random_corpus(args.seed * 100003 + case, max_papers=args.max_papers)
        store = build_indexes(corpus)
        kind = rng.choice(EGO_KINDS)
        selection = random_selection(rng, corpus, kind)
        if selection is None:
            passed += 1
            continue
        config = InfluenceConfig(
            alter_kind=rng.choice(("author", "venue", "institution", "topic")),
            include_self_citations=rng.random() < 0.7,
            s1=rng.random() < 0.6, s2=rng.random() < 0.4, s3=rng.random() < 0.4,
            topic_level=rng.choice((1, 2)),
        )
        fast = compute_profile(selection, config, store)
        slow = brute_force_profile(selection, config, corpus)
        ok, why = profiles_match(fast, slow)
        if ok:
            passed += 1
        else:
            failures.append(f"case {case} ({kind} ego): {why}")
    print(f"{passed}/{args.cases} oracle cases passed (seed {args.seed})")
    for failure in failures[:10]:
        print(f"  FAIL {failure}", file=sys.stderr)
    return EXIT_OK if passed == args.cases else EXIT_INTERNAL


def build_parser() -> _Parser:
    parser = _Parser(prog="influenceflower",
                     description="citation influence flowers: ingest, query, render")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("ingest", help="load and validate a corpus, print the report")
    p.add_argument("--papers", required=True)
    p.add_argument("--citations", required=True)
    p.add_argument("--entities", required=True)
    p.add_argument("--report", help="also write the report JSON here")
    p.set_defaults(func=cmd_ingest)

    p = sub.add_parser("index", help="build indexes and persist them")
    p.add_argument("--papers", required=True)
    p.add_argument("--citations", required=True)
    p.add_argument("--entities", required=True)
    p.add_argument("--out", required=True, help="output pickle path")
    p.set_defaults(func=cmd_index)

    p = sub.add_parser("warm", help="pre-populate the bundle cache for one ego")
    _corpus_args(p)
    p.add_argument("--selection", required=True,
                   help="JSON selection or 'id:kind[,id:kind]'")
    p.set_defaults(func=cmd_warm)

    p = sub.add_parser("flower", help="emit a flower as JSON/SVG/CSV")
    _corpus_args(p)
    p.add_argument("--config", required=True, help="FlowerConfig JSON file")
    p.add_argument("--json", help="write the full response JSON here")
    p.add_argument("--svg", help="write the rendered SVG here")
    p.add_argument("--csv", help="write the profile records CSV here")
    p.add_argument("--profile", help="write line-delimited profile records here")
    p.set_defaults(func=cmd_flower)

    p = sub.add_parser("serve", help="run the HTTP query service")
    _corpus_args(p)
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=None)
    p.add_argument("--gallery", default=None, help="gallery file (JSON lines)")
    p.add_argument("--static", default=None,
                   help="directory with the built web UI to serve at /")
    p.set_defaults(func=cmd_serve)

    p = sub.add_parser("oracle-check",
                       help="compare the engine against the dense-matrix oracle")
    p.add_argument("--cases", type=int, default=200)
    p.add_argument("--seed", type=int, default=7)
    p.add_argument("--max-papers", type=int, default=50)
    p.set_defaults(func=cmd_oracle_check)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (CorpusError, ConfigError, FileNotFoundError, json.JSONDecodeError,
            ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USER
    except Exception:
        traceback.print_exc()
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
