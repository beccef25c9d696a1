"""On-disk memo of graded component bases.

One JSON file per key ``(label, charge2, weight4, version)``.  Writes go to a
temporary file in the same directory and are renamed into place, so a reader
never observes a half-written entry.  Unreadable entries are treated as
misses and overwritten.
"""

from __future__ import annotations

import json
import logging
import os
import tempfile
from pathlib import Path

from prinspace import __version__

log = logging.getLogger(__name__)


class ComponentCache:
    def __init__(self, directory: str | os.PathLike | None, version: str = __version__):
        self.directory = Path(directory) if directory is not None else None
        self.version = version
        self._memory: dict[tuple, dict] = {}

    def _path(self, key: tuple) -> Path:
        label, charge2, weight4 = key
        return self.directory / f"W{label}_c{charge2}_w{weight4}_v{self.version}.json"

    def load(self, key: tuple) -> dict | None:
        if key in self._memory:
            return self._memory[key]
        if self.directory is None:
            return None
        path = self._path(key)
        if not path.exists():
            return None
        try:
            data = json.loads(path.read_text())
            if data.get("version") != self.version or tuple(data["key"]) != tuple(key):
                raise ValueError("key mismatch")
        except (OSError, ValueError, KeyError, TypeError) as exc:
            log.warning("discarding corrupt cache entry %s (%s)", path, exc)
            return None
        self._memory[key] = data
        return data

    def store(self, key: tuple, payload: dict) -> None:
        data = dict(payload, key=list(key), version=self.version)
        self._memory[key] = data
        if self.directory is None:
            return
        self.directory.mkdir(parents=True, exist_ok=True)
        fd, tmp = tempfile.mkstemp(dir=self.directory, prefix=".tmp-", suffix=".json")
        try:
            with os.fdopen(fd, "w") as fh:
                json.dump(data, fh, sort_keys=True, separators=(",", ":"))
            os.replace(tmp, self._path(key))
        except BaseException:
            Path(tmp).unlink(missing_ok=True)
            raise
