"""Content-addressed report cache.

Entries are JSON files named by the SHA-256 of (config canonical form,
command, arguments).  Writes go to a temporary file in the same directory
followed by an atomic rename, so concurrent runs never see partial files.
"""

import hashlib
import json
import os
import tempfile
from pathlib import Path
from typing import Optional

ENV_VAR = "QSHUFFLE_CACHE"
DEFAULT_DIR = ".qshuffle-cache"


def cache_dir() -> Path:
    return Path(os.environ.get(ENV_VAR) or DEFAULT_DIR)


def cache_key(config_canonical: str, command: str, args) -> str:
    blob = json.dumps([config_canonical, command, args], sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(blob.encode("utf-8")).hexdigest()


class ResultCache:
    def __init__(self, root: Optional[Path] = None, enabled: bool = True):
        self.root = Path(root) if root is not None else cache_dir()
        self.enabled = enabled

    def _path(self, key: str) -> Path:
        return self.root / key[:2] / (key + ".json")

    def get(self, key: str):
        if not self.enabled:
            return None
        p = self._path(key)
        try:
            with open(p, "r", encoding="utf-8") as fh:
                return json.load(fh)
        except (OSError, ValueError):
            return None

    def put(self, key: str, doc) -> None:
        if not self.enabled:
            return
        p = self._path(key)
        if p.exists():
            return  # entries are immutable
        p.parent.mkdir(parents=True, exist_ok=True)
        fd, tmp = tempfile.mkstemp(dir=p.parent, prefix=".tmp-", suffix=".json")
        try:
            with os.fdopen(fd, "w", encoding="utf-8") as fh:
                json.dump(doc, fh, sort_keys=True, separators=(",", ":"))
            os.replace(tmp, p)
        except BaseException:
            try:
                os.unlink(tmp)
            except OSError:
                pass
            raise
