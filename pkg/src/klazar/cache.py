"""A small JSON file cache for computed sequences.

Entries are keyed by a string (pattern plus engine kind) and stamped with
the engine version; a lookup under a different version is a miss.  Writes go
to a temporary file that is then renamed over the cache, so readers never
see a half-written file.
"""

from __future__ import annotations

import json
import logging
import os
import tempfile
from pathlib import Path
from typing import Optional

log = logging.getLogger(__name__)

CACHE_FILE = "sequences.json"


def default_cache_dir() -> Path:
    env = os.environ.get("KLAZAR_CACHE_DIR")
    if env:
        return Path(env)
    return Path(os.environ.get("XDG_CACHE_HOME", Path.home() / ".cache")) / "klazar"


class SequenceCache:
    def __init__(self, directory: Optional[os.PathLike] = None, version: str = "1"):
        self.directory = Path(directory) if directory is not None else default_cache_dir()
        self.version = version
        self.enabled = True
        try:
            self.directory.mkdir(parents=True, exist_ok=True)
            if not os.access(self.directory, os.W_OK):
                raise PermissionError(f"{self.directory} is not writable")
        except OSError as exc:
            log.warning("sequence cache disabled: %s", exc)
            self.enabled = False

    @property
    def path(self) -> Path:
        return self.directory / CACHE_FILE

    def _load(self) -> dict:
        if not self.path.exists():
            return {}
        try:
            with open(self.path) as fh:
                data = json.load(fh)
            if not isinstance(data, dict):
                raise ValueError("top level is not an object")
            return data
        except (OSError, ValueError) as exc:
            log.warning("ignoring unreadable cache %s: %s", self.path, exc)
            return {}

    def lookup(self, key: str) -> Optional[dict]:
        """Rows stored under ``key`` for the current engine version, else ``None``."""
        if not self.enabled:
            return None
        entry = self._load().get(key)
        if not isinstance(entry, dict) or entry.get("engine") != self.version:
            return None
        return entry.get("rows")

    def store(self, key: str, rows: dict) -> bool:
        """Merge ``rows`` into the entry for ``key``; returns False if the cache is off."""
        if not self.enabled:
            return False
        data = self._load()
        entry = data.get(key)
        if not isinstance(entry, dict) or entry.get("engine") != self.version:
            entry = {"engine": self.version, "rows": {}}
        entry["rows"].update(rows)
        data[key] = entry
        tmp = None
        try:
            fd, tmp = tempfile.mkstemp(dir=self.directory, prefix=".sequences-", suffix=".tmp")
            with os.fdopen(fd, "w") as fh:
                json.dump(data, fh, indent=1, sort_keys=True)
            os.replace(tmp, self.path)
        except OSError as exc:
            if tmp is not None and os.path.exists(tmp):
                os.unlink(tmp)
            log.warning("sequence cache disabled: %s", exc)
            self.enabled = False
            return False
        return True

    def clear(self) -> None:
        if self.path.exists():
            self.path.unlink()

    def keys(self) -> list[str]:
        return sorted(self._load())
