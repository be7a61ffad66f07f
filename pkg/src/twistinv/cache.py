"""On-disk cache of enumerated groups: JSON element lists keyed by catalog key."""

from __future__ import annotations

import json
import re
from pathlib import Path
from typing import Optional

from .catalog import build, build_group, parse_key
from .groups import DEFAULT_CAP, ReflectionCoset, ReflectionGroup
from .linalg import CycMatrix, Stack

FORMAT = "twistinv-group"
VERSION = 1


class CacheError(ValueError):
    pass


def _filename(key: str) -> str:
    return re.sub(r"[^A-Za-z0-9_.-]", "_", key) + ".json"


def dump_group(G: ReflectionGroup, key: str) -> dict:
    return {"format": FORMAT, "version": VERSION, "key": key, "rank": G.r, "conductor": G.N,
            "generators": [g.to_json() for g in G.generators],
            "elements": [G.element(i).to_json() for i in range(G.order)]}


def load_group(obj: dict) -> ReflectionGroup:
    if obj.get("format") != FORMAT or obj.get("version") != VERSION:
        raise CacheError("unsupported cache file header")
    N = int(obj["conductor"])
    elems = [CycMatrix.from_json(m).embed(N) for m in obj["elements"]]
    gens = [CycMatrix.from_json(m).embed(N) for m in obj["generators"]]
    if not elems or not elems[0].is_identity():
        raise CacheError("first cached element is not the identity")
    stack = Stack.of(elems, N)
    keys = list(stack.element_keys())
    if len(set(keys)) != len(keys):
        raise CacheError("duplicate elements in cache file")
    return ReflectionGroup(gens, stack, keys, int(obj["rank"]))


def cached_build(key: str, cache_dir: Optional[str], cap: int = DEFAULT_CAP) -> ReflectionCoset:
    """build(key), reading or writing the group's element list under cache_dir."""
    if cache_dir is None:
        return build(key, cap)
    ck = parse_key(key)
    path = Path(cache_dir) / _filename(str(ck))
    if path.exists():
        G = load_group(json.loads(path.read_text()))
        return build(ck, cap, group=G)
    G = build_group(ck, cap)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(dump_group(G, str(ck))))
    return build(ck, cap, group=G)
