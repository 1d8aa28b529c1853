"""On-disk JSON cache for class tables and character tables."""

from __future__ import annotations

import hashlib
import json
import logging
import os
import random
import tempfile
from dataclasses import dataclass
from pathlib import Path

from .chartab import CharTable, character_table
from .classes import ClassTable, conjugacy_classes
from .errors import CforgeError
from .zoo import GroupMeta, canonical_spec

ENGINE_VERSION = "cforge-1"
KINDS = ("classes", "chartab")

log = logging.getLogger(__name__)


def cache_key(spec: dict | str, kind: str) -> str:
    if kind not in KINDS:
        raise ValueError(f"unknown artifact kind {kind!r}")
    canon = spec if isinstance(spec, str) else canonical_spec(spec)
    blob = json.dumps({"engine": ENGINE_VERSION, "kind": kind, "spec": json.loads(canon)}, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(blob.encode()).hexdigest()


@dataclass
class CacheEntry:
    key: str
    kind: str
    spec: dict
    payload: dict
    engine: str = ENGINE_VERSION

    def to_json(self) -> dict:
        return {"key": self.key, "kind": self.kind, "spec": self.spec, "engine": self.engine, "payload": self.payload}


class Cache:
    """A directory of ``<key>.json`` files; writes go through a temp file and rename."""

    def __init__(self, directory):
        self.dir = Path(directory)
        self.dir.mkdir(parents=True, exist_ok=True)
        self.used: list[str] = []

    @classmethod
    def from_env(cls, directory=None):
        d = directory or os.environ.get("CFORGE_CACHE")
        return cls(d) if d else None

    def path(self, key: str) -> Path:
        return self.dir / f"{key}.json"

    def store(self, entry: CacheEntry) -> None:
        fd, tmp = tempfile.mkstemp(dir=self.dir, prefix=".tmp-", suffix=".json")
        try:
            with os.fdopen(fd, "w") as fh:
                json.dump(entry.to_json(), fh, sort_keys=True)
            os.replace(tmp, self.path(entry.key))
        except BaseException:
            if os.path.exists(tmp):
                os.unlink(tmp)
            raise

    def load(self, key: str) -> CacheEntry | None:
        p = self.path(key)
        if not p.exists():
            return None
        try:
            data = json.loads(p.read_text())
            if data.get("key") != key or data.get("engine") != ENGINE_VERSION:
                raise ValueError("key or engine mismatch")
            return CacheEntry(key, data["kind"], data["spec"], data["payload"], data["engine"])
        except (ValueError, KeyError, TypeError) as exc:
            log.warning("discarding unreadable cache entry %s: %s", p.name, exc)
            self.discard(key)
            return None

    def discard(self, key: str) -> None:
        try:
            self.path(key).unlink()
        except FileNotFoundError:
            pass

    def note(self, key: str) -> None:
        if key not in self.used:
            self.used.append(key)


def cache_roundtrip(cache: Cache, entry: CacheEntry) -> CacheEntry:
    cache.store(entry)
    out = cache.load(entry.key)
    if out is None:
        raise CforgeError("entry vanished between store and load")
    return out


# In-process memo so that repeated verifiers on one group share tables.
_MEMO: dict[tuple[str, str], object] = {}


def clear_memo() -> None:
    _MEMO.clear()


def _spot_columns(key: str, k: int) -> list[int]:
    rng = random.Random(key)
    return sorted(rng.sample(range(k), min(3, k)))


def get_classes(meta: GroupMeta, cache: Cache | None = None) -> ClassTable:
    key = cache_key(meta.spec, "classes")
    if cache is not None:
        cache.note(key)
    hit = _MEMO.get((key, "classes"))
    if hit is not None:
        return hit
    t = None
    if cache is not None:
        entry = cache.load(key)
        if entry is not None:
            try:
                # from_json re-runs the class-sum check
                t = ClassTable.from_json(meta.group, entry.payload)
            except (CforgeError, ValueError, KeyError, TypeError) as exc:
                log.warning("cached class table for %s failed validation (%s); recomputing", meta.key(), exc)
                cache.discard(key)
    if t is None:
        t = conjugacy_classes(meta.group)
        if cache is not None:
            cache.store(CacheEntry(key, "classes", json.loads(meta.key()), t.to_json()))
    _MEMO[(key, "classes")] = t
    return t


def get_chartab(meta: GroupMeta, cache: Cache | None = None) -> CharTable:
    key = cache_key(meta.spec, "chartab")
    t = get_classes(meta, cache)
    if cache is not None:
        cache.note(key)
    hit = _MEMO.get((key, "chartab"))
    if hit is not None:
        return hit
    ct = None
    if cache is not None:
        entry = cache.load(key)
        if entry is not None:
            try:
                ct = CharTable.from_json(t, entry.payload)
                ok = len(ct) == len(t) and ct.check_degrees() and ct.check_orthogonality(_spot_columns(key, len(t)))
                if not ok:
                    raise ValueError("orthogonality spot check failed")
            except (CforgeError, ValueError, KeyError, TypeError) as exc:
                log.warning("cached character table for %s failed validation (%s); recomputing", meta.key(), exc)
                cache.discard(key)
                ct = None
    if ct is None:
        ct = character_table(t)
        if cache is not None:
            cache.store(CacheEntry(key, "chartab", json.loads(meta.key()), ct.to_json()))
    _MEMO[(key, "chartab")] = ct
    return ct
