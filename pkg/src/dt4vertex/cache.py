"""Append-only JSON-lines cache of per-partition results.

Entries are keyed by canonical partition key and engine version.  Writers
append whole lines under an exclusive lock; concurrent processes may both
compute the same key, which is harmless because entries are deterministic.
"""

from __future__ import annotations

import fcntl
import json
import logging
import os
from dataclasses import dataclass
from pathlib import Path

from . import __version__
from .combinatorics import omega_c
from .errors import MathError
from .localization import LinearFormFactored, factored_from_json
from .partitions import DPartition, key_str
from .verifier import canonical_weight, omega_from_dt4

log = logging.getLogger(__name__)

ENV_VAR = "DT4_CACHE"


@dataclass(frozen=True)
class CacheEntry:
    key: str
    payload: dict
    engine_version: str = __version__

    def to_line(self) -> str:
        rec = {"key": self.key, "engine_version": self.engine_version, "payload": self.payload}
        return json.dumps(rec, sort_keys=True, separators=(",", ":"))

    def weight(self) -> LinearFormFactored:
        return factored_from_json(self.payload["w"])


def compute_payload(pi: DPartition) -> dict:
    w = canonical_weight(pi)
    payload = {"w": w.to_json(), "omega_c": str(omega_c(pi)), "omega": None, "sign": None}
    try:
        res = omega_from_dt4(pi)
    except MathError as exc:
        payload["omega_error"] = f"{type(exc).__name__}: {exc}"
    else:
        payload["omega"] = str(res.omega)
        payload["sign"] = res.sign
    return payload


class WeightCache:
    def __init__(self, path: str | os.PathLike, engine_version: str = __version__):
        self.path = Path(path)
        self.engine_version = engine_version
        self.entries: dict[str, CacheEntry] = {}
        self.hits = 0
        self.misses = 0
        self._load()

    @classmethod
    def from_env(cls) -> WeightCache | None:
        path = os.environ.get(ENV_VAR)
        return cls(path) if path else None

    def _load(self) -> None:
        if not self.path.exists():
            return
        with self.path.open("r", encoding="utf-8") as fh:
            for n, line in enumerate(fh, 1):
                if not line.strip():
                    continue
                try:
                    rec = json.loads(line)
                    entry = CacheEntry(rec["key"], rec["payload"], rec["engine_version"])
                    if entry.engine_version == self.engine_version:
                        factored_from_json(entry.payload["w"])
                except (ValueError, KeyError, TypeError) as exc:
                    log.warning("skipping corrupt cache line %d in %s: %s", n, self.path, exc)
                    continue
                if entry.engine_version != self.engine_version:
                    continue
                old = self.entries.get(entry.key)
                if old is not None and old.payload != entry.payload:
                    log.warning("conflicting cache entries for %s; keeping the first", entry.key)
                    continue
                self.entries.setdefault(entry.key, entry)

    def _append(self, entry: CacheEntry) -> None:
        self.path.parent.mkdir(parents=True, exist_ok=True)
        with self.path.open("a", encoding="utf-8") as fh:
            fcntl.flock(fh, fcntl.LOCK_EX)
            try:
                fh.write(entry.to_line() + "\n")
                fh.flush()
            finally:
                fcntl.flock(fh, fcntl.LOCK_UN)

    def lookup(self, pi: DPartition) -> CacheEntry:
        """Return the cached entry for ``pi``, computing and appending it on a miss."""
        key = key_str(pi)
        entry = self.entries.get(key)
        if entry is not None:
            self.hits += 1
            return entry
        self.misses += 1
        entry = CacheEntry(key, compute_payload(pi), self.engine_version)
        self._append(entry)
        self.entries[key] = entry
        return entry

    def weight(self, pi: DPartition) -> LinearFormFactored:
        return self.lookup(pi).weight()
