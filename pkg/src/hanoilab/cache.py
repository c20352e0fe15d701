"""Persistent cache of computed optima keyed by (n, k).

JSON file with a magic tag, a format version, and a sha256 checksum
over the canonicalized records, so tampering or truncation surfaces as
CorruptCacheError instead of silently wrong numbers.
"""

from __future__ import annotations

import hashlib
import json
import os
from dataclasses import dataclass, field

from .errors import CorruptCacheError

MAGIC = "hanoilab-optima"
VERSION = 1

#: Environment variable naming the default cache file for the CLI.
CACHE_ENV_VAR = "HANOILAB_CACHE"


@dataclass(frozen=True)
class CacheRecord:
    n: int
    k: int
    optimum: int
    method: str


@dataclass
class OptimaCache:
    records: dict[tuple[int, int], CacheRecord] = field(default_factory=dict)

    def get(self, n: int, k: int) -> CacheRecord | None:
        return self.records.get((n, k))

    def put(self, n: int, k: int, optimum: int, method: str) -> None:
        self.records[(n, k)] = CacheRecord(n=n, k=k, optimum=optimum, method=method)

    def __len__(self) -> int:
        return len(self.records)


def _payload(cache: OptimaCache) -> list[dict]:
    return [
        {"n": r.n, "k": r.k, "optimum": r.optimum, "method": r.method}
        for r in sorted(cache.records.values(), key=lambda r: (r.k, r.n))
    ]


def _checksum(payload: list[dict]) -> str:
    blob = json.dumps(payload, sort_keys=True, separators=(",", ":")).encode()
    return hashlib.sha256(blob).hexdigest()


def save_cache(cache: OptimaCache, path: str | os.PathLike) -> None:
    payload = _payload(cache)
    doc = {
        "magic": MAGIC,
        "version": VERSION,
        "records": payload,
        "checksum": _checksum(payload),
    }
    tmp = f"{path}.tmp"
    with open(tmp, "w", encoding="utf-8") as fh:
        json.dump(doc, fh, indent=1, sort_keys=True)
        fh.write("\n")
    os.replace(tmp, path)


def load_cache(path: str | os.PathLike) -> OptimaCache:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            doc = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise CorruptCacheError(f"unreadable cache {path}: {exc}") from exc
    if not isinstance(doc, dict) or doc.get("magic") != MAGIC:
        raise CorruptCacheError(f"{path} is not an optima cache")
    if doc.get("version") != VERSION:
        raise CorruptCacheError(f"unsupported cache version {doc.get('version')}")
    records = doc.get("records")
    if not isinstance(records, list):
        raise CorruptCacheError("cache records missing")
    if doc.get("checksum") != _checksum(records):
        raise CorruptCacheError("cache checksum mismatch")
    cache = OptimaCache()
    for rec in records:
        try:
            cache.put(int(rec["n"]), int(rec["k"]), int(rec["optimum"]), str(rec["method"]))
        except (KeyError, TypeError, ValueError) as exc:
            raise CorruptCacheError(f"malformed cache record {rec!r}") from exc
    return cache


def load_or_new(path: str | os.PathLike | None) -> OptimaCache:
    """Load when the file exists, otherwise an empty cache."""
    if path is None or not os.path.exists(path):
        return OptimaCache()
    return load_cache(path)
