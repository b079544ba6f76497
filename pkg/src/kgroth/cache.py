"""On-disk result cache, enabled by the KGROTH_CACHE environment variable."""
from __future__ import annotations

import hashlib
import json
import os
import tempfile
from pathlib import Path

from . import __version__
from .serialize import dump_value, load_value

ENV_VAR = "KGROTH_CACHE"


def cache_dir() -> Path | None:
    d = os.environ.get(ENV_VAR)
    return Path(d) if d else None


def request_key(request: dict) -> str:
    canon = json.dumps({"request": request, "version": __version__}, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(canon.encode()).hexdigest()


def load(request: dict):
    """The cached value for a request, or None."""
    d = cache_dir()
    if d is None:
        return None
    path = d / f"{request_key(request)}.json"
    try:
        with open(path, encoding="utf-8") as fh:
            return load_value(json.load(fh))
    except (OSError, ValueError, KeyError):
        return None


def store(request: dict, value) -> None:
    """Write to a temporary file in the cache directory, then rename into place."""
    d = cache_dir()
    if d is None:
        return
    d.mkdir(parents=True, exist_ok=True)
    path = d / f"{request_key(request)}.json"
    fd, tmp = tempfile.mkstemp(dir=d, prefix=".tmp-", suffix=".json")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            json.dump(dump_value(value), fh, sort_keys=True)
        os.replace(tmp, path)
    except BaseException:
        try:
            os.unlink(tmp)
        except OSError:
            pass
        raise
