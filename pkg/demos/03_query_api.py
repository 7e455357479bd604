#!/usr/bin/env python3
"""Drive the HTTP API end to end without opening a port.

Uses the in-process test client against the same app `influenceflower serve`
runs: search for an entity, request its flower, follow the config link, and
open the detail page behind the biggest petal.
"""

import json

from fastapi.testclient import TestClient

from influenceflower import FlowerEngine
from influenceflower.server import create_app
from influenceflower.synth import random_corpus

engine = FlowerEngine(random_corpus(seed=99, max_papers=40, max_edges=150))
client = TestClient(create_app(engine))

hits = client.get("/api/search", params={"q": "Author 001", "kinds": "author"}).json()
print("search hits:", json.dumps(hits["hits"][:2], indent=2))

body = {"members": [["A001", "author"]], "name": "Author 001", "petals": 8}
flower = client.post("/api/flower", json=body).json()
print(f"\nflower: {len(flower['layout']['petals'])} petals, "
      f"diagnostics {flower['diagnostics']}")
for petal in flower["layout"]["petals"]:
    print(f"  {petal['alter_id']} {petal['label']:<12} angle={petal['angle']:.1f} "
          f"color={petal['color']} in={petal['in_score']:.3f} out={petal['out_score']:.3f}")

token = flower["config_link"]

# the config link regenerates the identical flower
from influenceflower.config import decode_config

relinked = client.post("/api/flower", json=decode_config(token).to_dict()).json()
same = {k: v for k, v in flower.items() if k != "diagnostics"} == \
    {k: v for k, v in relinked.items() if k != "diagnostics"}
print(f"\nconfig link round-trip reproduces the flower: {same}")

if flower["layout"]["petals"]:
    biggest = max(flower["layout"]["petals"], key=lambda p: p["node_radius"])
    detail = client.get("/api/detail",
                        params={"config": token, "alter": biggest["alter_id"]}).json()
    print(f"\ndetail for {detail['alter_name']} ({detail['pair_count']} pairs):")
    for row in detail["rows"][:4]:
        ego = row["ego_paper"]
        print(f"  {ego['year']} {ego['title'][:40]:<40} "
              f"in={len(row['incoming'])} out={len(row['outgoing'])}")
