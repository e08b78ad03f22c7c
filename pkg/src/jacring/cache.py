"""Content-addressed cache of result documents.

Keys combine the canonical input hash, the subcommand, its arguments and the
package version, so a hit is always byte-identical to a fresh run.  Readers
need no coordination; writers serialize on a lock file and publish with an
atomic rename.
"""

from __future__ import annotations

import hashlib
import json
import os
import tempfile

from filelock import FileLock

ENV_VAR = "JACRING_CACHE_DIR"


def default_cache_dir() -> str:
    env = os.environ.get(ENV_VAR)
    if env:
        return env
    base = os.environ.get("XDG_CACHE_HOME") or os.path.join(
        os.path.expanduser("~"), ".cache")
    return os.path.join(base, "jacring")


def make_key(parts: dict) -> str:
    blob = json.dumps(parts, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(blob.encode()).hexdigest()


class ResultCache:
    def __init__(self, directory: str | None = None):
        self.directory = directory or default_cache_dir()

    def _path(self, key: str) -> str:
        return os.path.join(self.directory, f"{key}.json")

    def get(self, key: str) -> str | None:
        try:
            with open(self._path(key), "r", encoding="utf-8") as fh:
                return fh.read()
        except OSError:
            return None

    def put(self, key: str, text: str) -> None:
        os.makedirs(self.directory, exist_ok=True)
        lock = FileLock(os.path.join(self.directory, ".write.lock"))
        with lock:
            fd, tmp = tempfile.mkstemp(dir=self.directory, suffix=".tmp")
            try:
                with os.fdopen(fd, "w", encoding="utf-8") as fh:
                    fh.write(text)
                os.replace(tmp, self._path(key))
            finally:
                if os.path.exists(tmp):
                    os.unlink(tmp)
