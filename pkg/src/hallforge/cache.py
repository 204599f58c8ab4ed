"""Content-addressed on-disk cache shared by CLI invocations.

Each entry is one JSON file named by the sha256 of its canonical inputs
(quiver rendering, q, bound, engine version, kind, extra).  Files are
written to a temporary name and renamed into place, so concurrent writers
of the same key are idempotent.  Every entry stores a checksum of its
payload; a mismatch on load is reported as corruption.
"""
from __future__ import annotations

import hashlib
import json
import os
import tempfile
from pathlib import Path

from . import ENGINE_VERSION
from .errors import HallforgeError


class CacheCorrupted(HallforgeError):
    """A cache entry failed its checksum or key check."""


def default_cache_dir() -> Path:
    env = os.environ.get("HALLFORGE_CACHE")
    if env:
        return Path(env)
    return Path.home() / ".cache" / "hallforge"


def canonical(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def checksum(payload) -> str:
    return hashlib.sha256(canonical(payload).encode()).hexdigest()


def cache_key(quiver, q, bound, kind, extra="") -> str:
    ident = [quiver.render(), int(q), list(bound) if bound is not None else None, ENGINE_VERSION, kind, extra]
    return hashlib.sha256(canonical(ident).encode()).hexdigest()


class Cache:
    def __init__(self, directory=None):
        self.directory = Path(directory) if directory is not None else default_cache_dir()

    def path(self, key: str) -> Path:
        return self.directory / f"{key}.json"

    def load(self, key: str):
        """Payload stored under key, or None on a miss.  Raises CacheCorrupted."""
        path = self.path(key)
        try:
            text = path.read_text(encoding="utf-8")
        except FileNotFoundError:
            return None
        entry = self._parse(path, text)
        if entry["key"] != key:
            raise CacheCorrupted(f"{path}: stored key does not match file name")
        return entry["payload"]

    def store(self, key: str, kind: str, payload) -> Path:
        self.directory.mkdir(parents=True, exist_ok=True)
        entry = {
            "key": key,
            "kind": kind,
            "engine": ENGINE_VERSION,
            "checksum": checksum(payload),
            "payload": payload,
        }
        fd, tmp = tempfile.mkstemp(dir=self.directory, prefix=".tmp-", suffix=".json")
        try:
            with os.fdopen(fd, "w", encoding="utf-8") as fh:
                fh.write(json.dumps(entry, sort_keys=True, indent=1))
                fh.write("\n")
            os.replace(tmp, self.path(key))
        except BaseException:
            if os.path.exists(tmp):
                os.unlink(tmp)
            raise
        return self.path(key)

    def get_or_compute(self, key: str, kind: str, compute):
        """(payload, hit) where a miss computes and stores the payload."""
        payload = self.load(key)
        if payload is not None:
            return payload, True
        payload = compute()
        self.store(key, kind, payload)
        return payload, False

    def entries(self):
        if not self.directory.is_dir():
            return []
        return sorted(p for p in self.directory.glob("*.json") if not p.name.startswith(".tmp-"))

    def _parse(self, path, text):
        try:
            entry = json.loads(text)
            payload = entry["payload"]
            stored = entry["checksum"]
            entry["key"]
        except (json.JSONDecodeError, KeyError, TypeError) as exc:
            raise CacheCorrupted(f"{path}: unreadable entry ({exc})") from None
        if checksum(payload) != stored:
            raise CacheCorrupted(f"{path}: checksum mismatch")
        if entry.get("engine") != ENGINE_VERSION:
            raise CacheCorrupted(f"{path}: written by engine {entry.get('engine')!r}")
        return entry

    def audit(self) -> list[str]:
        """Problems with any entry in the directory; empty if every entry is sound."""
        problems = []
        for path in self.entries():
            try:
                entry = self._parse(path, path.read_text(encoding="utf-8"))
            except CacheCorrupted as exc:
                problems.append(str(exc))
                continue
            if path.stem != entry["key"]:
                problems.append(f"{path}: stored key does not match file name")
        return problems

    def read_entry(self, path):
        return self._parse(path, Path(path).read_text(encoding="utf-8"))
