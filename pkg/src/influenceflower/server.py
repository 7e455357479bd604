"""Stateless HTTP query service over one loaded corpus.

Routes (JSON in/out):

* ``GET  /api/search?q=&kinds=&limit=``  -- ranked entity hits
* ``POST /api/flower``                   -- body: FlowerConfig; returns layout,
                                            overview bars, stats, config link
* ``GET  /api/detail?config=&alter=``    -- paper pairs behind one petal
* ``GET  /api/gallery``                  -- curated configs from the gallery file

Identical requests against an unchanged corpus yield identical responses;
only the fetch diagnostics block reflects cache temperature.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Optional

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from .config import ConfigError, FlowerConfig, decode_config
from .corpus import UnknownEntityError
from .engine import AlterNotFound, FlowerEngine


def _error(status: int, message: str) -> JSONResponse:
    return JSONResponse({"error": message}, status_code=status)


def load_gallery(path: Optional[str | Path]) -> list[dict]:
    """Read the gallery file: one JSON record per line, grouped by category.

    Record fields: category, name, description, config_token.  Categories
    keep their first-appearance order; entries keep file order.
    """
    if path is None:
        return []
    path = Path(path)
    if not path.exists():
        return []
    order: list[str] = []
    groups: dict[str, list[dict]] = {}
    with path.open(encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if not line:
                continue
            rec = json.loads(line)
            category = rec.get("category", "")
            if category not in groups:
                groups[category] = []
                order.append(category)
            groups[category].append({
                "name": rec.get("name", ""),
                "description": rec.get("description", ""),
                "config_token": rec.get("config_token", ""),
            })
    return [{"category": c, "entries": groups[c]} for c in order]


def create_app(engine: FlowerEngine,
               gallery_path: Optional[str | Path] = None,
               static_dir: Optional[str | Path] = None) -> FastAPI:
    app = FastAPI(title="influence flower query service")

    @app.get("/api/search")
    def search(q: str = "", kinds: str = "", limit: int = 20):
        if not q.strip():
            return _error(400, "query must not be empty")
        kind_filter = None
        if kinds.strip():
            kind_filter = [k.strip() for k in kinds.split(",") if k.strip()]
        try:
            hits = engine.search(q, kind_filter, max(1, min(limit, 100)))
        except ValueError as exc:
            return _error(400, str(exc))
        return {"hits": hits}

    @app.post("/api/flower")
    async def flower(request: Request):
        try:
            body = await request.json()
        except Exception:
            return _error(400, "request body must be a JSON object")
        try:
            config = FlowerConfig.from_dict(body)
        except ConfigError as exc:
            return _error(400, str(exc))
        try:
            return engine.flower_response(config)
        except UnknownEntityError as exc:
            return _error(404, str(exc))
        except ConfigError as exc:
            return _error(400, str(exc))

    @app.get("/api/detail")
    def detail(config: str = "", alter: str = ""):
        if not config:
            return _error(400, "missing config token")
        if not alter:
            return _error(400, "missing alter id")
        try:
            cfg = decode_config(config)
        except ConfigError as exc:
            return _error(400, f"stale or invalid config link: {exc}")
        try:
            return engine.detail_response(cfg, alter)
        except UnknownEntityError as exc:
            return _error(400, f"stale config link: {exc}")
        except AlterNotFound:
            return _error(404, f"alter {alter!r} is not in this flower's profile")
        except ConfigError as exc:
            return _error(400, str(exc))

    @app.get("/api/gallery")
    def gallery():
        return {"categories": load_gallery(gallery_path)}

    if static_dir is not None:
        from fastapi.staticfiles import StaticFiles

        app.mount("/", StaticFiles(directory=static_dir, html=True), name="ui")

    return app


def run_server(engine: FlowerEngine, host: str, port: int,
               gallery_path: Optional[str | Path] = None,
               static_dir: Optional[str | Path] = None) -> None:
    import uvicorn

    uvicorn.run(create_app(engine, gallery_path, static_dir),
                host=host, port=port)
