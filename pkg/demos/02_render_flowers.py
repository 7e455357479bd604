#!/usr/bin/env python3
"""Render a flower and its decade-contrast overlay as SVG files.

The contrast flower re-scores a sub-period and draws it over the greyed
full-period anchor, keeping petal order and positions fixed.
"""

from pathlib import Path

from influenceflower import FlowerEngine
from influenceflower.config import ContrastSpec, FlowerConfig
from influenceflower.synth import random_corpus

out_dir = Path(__file__).parent / "out"
out_dir.mkdir(exist_ok=True)

engine = FlowerEngine(random_corpus(seed=7, max_papers=50, max_edges=200))

config = FlowerConfig(
    members=(("A000", "author"),),
    display_name="Author 000",
    alter_kind="author",
    petal_count=12,
)
(out_dir / "author_flower.svg").write_text(engine.flower_svg(config))
print(f"wrote {out_dir / 'author_flower.svg'}")

# anchor over the full span, overlay restricted to 2010 onward
payload = engine.flower_response(config)
from influenceflower.config import decode_config

anchored = decode_config(payload["config_link"])
contrast = FlowerConfig(
    members=anchored.members,
    display_name=anchored.display_name,
    alter_kind=anchored.alter_kind,
    pub_range=anchored.pub_range,
    cite_range=anchored.cite_range,
    petal_count=12,
    contrast=ContrastSpec(pub_range=(2010, anchored.pub_range[1])),
)
(out_dir / "author_contrast.svg").write_text(engine.flower_svg(contrast))
print(f"wrote {out_dir / 'author_contrast.svg'}")

topic_config = FlowerConfig(
    members=(("A000", "author"),),
    display_name="Author 000",
    alter_kind="topic",
    petal_count=10,
)
(out_dir / "topic_flower.svg").write_text(engine.flower_svg(topic_config))
print(f"wrote {out_dir / 'topic_flower.svg'}")
