"""Versioned JSON cache for generated Adem tables.

Cache files live under the directory named by the MOTSTEEN_CACHE
environment variable (or an explicit path).  Files carry a schema version
and the prime; on mismatch they are ignored, never deleted.  Readers may
run concurrently; writes are serialized and atomic.
"""

from __future__ import annotations

import json
import os
import tempfile
import threading

SCHEMA_VERSION = 1

_LOCK = threading.Lock()


def cache_dir(explicit: str | None = None) -> str | None:
    return explicit or os.environ.get("MOTSTEEN_CACHE")


def _cache_path(directory: str, l: int) -> str:
    return os.path.join(directory, "adem_l%d.json" % l)


class AdemCache:
    """In-memory table keyed by (a, b, beta-flag), optionally file-backed."""

    def __init__(self, l: int, directory: str | None = None):
        self.prime = l
        self.directory = cache_dir(directory)
        self.entries: dict = {}
        if self.directory:
            self._load()

    def _load(self) -> None:
        path = _cache_path(self.directory, self.prime)
        try:
            with open(path, "r", encoding="utf-8") as fh:
                data = json.load(fh)
        except (OSError, ValueError):
            return
        if data.get("schema") != SCHEMA_VERSION or data.get("prime") != self.prime:
            return
        for key, val in data.get("entries", {}).items():
            a, b, eps = key.split(":")
            self.entries[(int(a), int(b), int(eps))] = val

    def get(self, a: int, b: int, eps: int):
        with _LOCK:
            return self.entries.get((a, b, eps))

    def put(self, a: int, b: int, eps: int, value) -> None:
        with _LOCK:
            self.entries[(a, b, eps)] = value
            if self.directory:
                self._flush_locked()

    def _flush_locked(self) -> None:
        os.makedirs(self.directory, exist_ok=True)
        path = _cache_path(self.directory, self.prime)
        payload = {
            "schema": SCHEMA_VERSION,
            "prime": self.prime,
            "entries": {
                "%d:%d:%d" % key: val for key, val in sorted(self.entries.items())
            },
        }
        fd, tmp = tempfile.mkstemp(dir=self.directory, suffix=".tmp")
        try:
            with os.fdopen(fd, "w", encoding="utf-8") as fh:
                json.dump(payload, fh, sort_keys=True)
            os.replace(tmp, path)
        except BaseException:
            try:
                os.unlink(tmp)
            except OSError:
                pass
            raise
