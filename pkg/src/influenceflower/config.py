"""The full flower configuration and its URL-safe token encoding.

A :class:`FlowerConfig` captures every user-adjustable knob.  Tokens encode
the canonical JSON form in URL-safe base64 (padding stripped) and round-trip
losslessly; a tampered token raises :class:`ConfigError` instead of crashing.
"""

from __future__ import annotations

import base64
import binascii
import json
from dataclasses import dataclass, replace
from typing import Optional

from .corpus import ALTER_KINDS, ENTITY_KINDS, EntitySelection
from .influence import SORT_MODES, InfluenceConfig

MAX_PETAL_COUNT = 50


class ConfigError(ValueError):
    """A malformed flower configuration or config token."""


Range = tuple[int, int]


def _check_range(value, name: str) -> Optional[Range]:
    if value is None:
        return None
    if (not isinstance(value, (list, tuple)) or len(value) != 2
            or not all(isinstance(v, int) and not isinstance(v, bool) for v in value)):
        raise ConfigError(f"{name} must be a [lo, hi] pair of integers")
    lo, hi = value
    if lo > hi:
        raise ConfigError(f"{name} is empty: [{lo}, {hi}]")
    return (lo, hi)


@dataclass(frozen=True)
class ContrastSpec:
    """Sub-period ranges for a contrast flower; None inherits the anchor."""

    pub_range: Optional[Range] = None
    cite_range: Optional[Range] = None

    def to_dict(self) -> dict:
        return {
            "pub": list(self.pub_range) if self.pub_range else None,
            "cite": list(self.cite_range) if self.cite_range else None,
        }


@dataclass(frozen=True)
class FlowerConfig:
    """Everything needed to regenerate one flower."""

    members: tuple[tuple[str, str], ...]
    display_name: str
    alter_kind: str = "author"
    pub_range: Optional[Range] = None
    cite_range: Optional[Range] = None
    petal_count: int = 25
    sort_mode: str = "ratio"
    include_self_citations: bool = True
    exclude_co_contributors: bool = False
    s1: bool = True
    s2: bool = False
    s3: bool = False
    topic_level: int = 1
    contrast: Optional[ContrastSpec] = None

    def __post_init__(self):
        if not self.members:
            raise ConfigError("config needs at least one selection member")
        normalized = []
        for member in self.members:
            if (not isinstance(member, (list, tuple)) or len(member) != 2
                    or not all(isinstance(v, str) and v for v in member)):
                raise ConfigError("members must be [entity_id, kind] pairs")
            entity_id, kind = member
            if kind not in ENTITY_KINDS:
                raise ConfigError(f"unknown member kind {kind!r}")
            normalized.append((entity_id, kind))
        object.__setattr__(self, "members", tuple(sorted(set(normalized))))
        if not isinstance(self.display_name, str):
            raise ConfigError("display_name must be a string")
        if self.alter_kind not in ALTER_KINDS:
            raise ConfigError(f"alter_kind must be one of {ALTER_KINDS}")
        object.__setattr__(self, "pub_range", _check_range(self.pub_range, "pub_range"))
        object.__setattr__(self, "cite_range", _check_range(self.cite_range, "cite_range"))
        if (not isinstance(self.petal_count, int) or isinstance(self.petal_count, bool)
                or not 1 <= self.petal_count <= MAX_PETAL_COUNT):
            raise ConfigError(f"petal_count must be in 1..{MAX_PETAL_COUNT}")
        if self.sort_mode not in SORT_MODES:
            raise ConfigError(f"sort_mode must be one of {SORT_MODES}")
        for name in ("include_self_citations", "exclude_co_contributors",
                     "s1", "s2", "s3"):
            if not isinstance(getattr(self, name), bool):
                raise ConfigError(f"{name} must be a boolean")
        if (not isinstance(self.topic_level, int) or isinstance(self.topic_level, bool)
                or not 0 <= self.topic_level <= 5):
            raise ConfigError("topic_level must be an integer in 0..5")
        if self.contrast is not None and not isinstance(self.contrast, ContrastSpec):
            raise ConfigError("contrast must be a ContrastSpec")

    # -- adapters ------------------------------------------------------------

    def selection(self) -> EntitySelection:
        return EntitySelection(self.members, self.display_name)

    def influence_config(self, pub_range: Optional[Range] = None,
                         cite_range: Optional[Range] = None) -> InfluenceConfig:
        return InfluenceConfig(
            alter_kind=self.alter_kind,
            pub_range=pub_range if pub_range is not None else self.pub_range,
            cite_range=cite_range if cite_range is not None else self.cite_range,
            include_self_citations=self.include_self_citations,
            exclude_co_contributors=self.exclude_co_contributors,
            s1=self.s1, s2=self.s2, s3=self.s3,
            topic_level=self.topic_level,
        )

    def with_ranges(self, pub_range: Range, cite_range: Range) -> "FlowerConfig":
        return replace(self, pub_range=pub_range, cite_range=cite_range)

    # -- wire form -------------------------------------------------------------

    def to_dict(self) -> dict:
        return {
            "members": [[eid, kind] for eid, kind in self.members],
            "name": self.display_name,
            "alter": self.alter_kind,
            "pub": list(self.pub_range) if self.pub_range else None,
            "cite": list(self.cite_range) if self.cite_range else None,
            "petals": self.petal_count,
            "sort": self.sort_mode,
            "self_citations": self.include_self_citations,
            "exclude_co_contributors": self.exclude_co_contributors,
            "s1": self.s1,
            "s2": self.s2,
            "s3": self.s3,
            "topic_level": self.topic_level,
            "contrast": self.contrast.to_dict() if self.contrast else None,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "FlowerConfig":
        if not isinstance(data, dict):
            raise ConfigError("config must be a JSON object")
        known = {"members", "name", "alter", "pub", "cite", "petals", "sort",
                 "self_citations", "exclude_co_contributors", "s1", "s2", "s3",
                 "topic_level", "contrast"}
        unknown = set(data).difference(known)
        if unknown:
            raise ConfigError(f"unknown config fields: {sorted(unknown)}")
        members = data.get("members")
        if not isinstance(members, list):
            raise ConfigError("'members' must be a list of [entity_id, kind] pairs")
        contrast_raw = data.get("contrast")
        contrast = None
        if contrast_raw is not None:
            if not isinstance(contrast_raw, dict) or \
                    set(contrast_raw).difference({"pub", "cite"}):
                raise ConfigError("'contrast' must be {'pub': range?, 'cite': range?}")
            contrast = ContrastSpec(
                pub_range=_check_range(contrast_raw.get("pub"), "contrast.pub"),
                cite_range=_check_range(contrast_raw.get("cite"), "contrast.cite"),
            )
        defaults = cls.__dataclass_fields__
        try:
            return cls(
                members=tuple(tuple(m) for m in members),
                display_name=data.get("name", ""),
                alter_kind=data.get("alter", "author"),
                pub_range=_check_range(data.get("pub"), "pub_range"),
                cite_range=_check_range(data.get("cite"), "cite_range"),
                petal_count=data.get("petals", defaults["petal_count"].default),
                sort_mode=data.get("sort", defaults["sort_mode"].default),
                include_self_citations=data.get("self_citations", True),
                exclude_co_contributors=data.get("exclude_co_contributors", False),
                s1=data.get("s1", True),
                s2=data.get("s2", False),
                s3=data.get("s3", False),
                topic_level=data.get("topic_level", 1),
                contrast=contrast,
            )
        except ConfigError:
            raise
        except (TypeError, ValueError) as exc:
            raise ConfigError(str(exc)) from exc


def encode_config(config: FlowerConfig) -> str:
    """Encode a config as a URL-safe token (base64 of canonical JSON)."""
    payload = json.dumps(config.to_dict(), sort_keys=True,
                         separators=(",", ":")).encode("utf-8")
    return base64.urlsafe_b64encode(payload).decode("ascii").rstrip("=")


def decode_config(token: str) -> FlowerConfig:
    """Decode a token back to its config; any tampering raises ConfigError."""
    if not isinstance(token, str) or not token:
        raise ConfigError("empty config token")
    padded = token + "=" * (-len(token) % 4)
    try:
        payload = base64.urlsafe_b64decode(padded.encode("ascii"))
        data = json.loads(payload.decode("utf-8"))
    except (binascii.Error, UnicodeDecodeError, UnicodeEncodeError,
            json.JSONDecodeError, ValueError) as exc:
        raise ConfigError(f"invalid config token: {exc}") from exc
    return FlowerConfig.from_dict(data)
