"""On-disk energy cache keyed by canonical code.

Entries live at ``<dir>/<k[:2]>/<k>.json`` where ``k`` is the SHA-256 of the
method, tolerance settings and canonical code.  The engine version is stored
inside the entry; entries written by another version are treated as misses
and overwritten.
"""

from __future__ import annotations

import hashlib
import json
import logging
import os
import tempfile
from pathlib import Path
from typing import Optional, Union

from .spectral import ENGINE_VERSION, EnergyResult, Method

log = logging.getLogger(__name__)

CACHE_ENV = "TREEENERGY_CACHE_DIR"


def default_cache_dir() -> Path:
    env = os.environ.get(CACHE_ENV)
    if env:
        return Path(env)
    base = os.environ.get("XDG_CACHE_HOME") or os.path.join(os.path.expanduser("~"), ".cache")
    return Path(base) / "treeenergy"


class EnergyCache:
    def __init__(self, directory: Union[str, Path], engine_version: str = ENGINE_VERSION):
        self.directory = Path(directory)
        self.engine_version = engine_version
        self.hits = 0
        self.misses = 0
        self.stale = 0
        self.corrupt = 0

    def _path(self, code: str, method: Method, params: dict) -> Path:
        payload = json.dumps([Method(method).value, params, code], sort_keys=True)
        key = hashlib.sha256(payload.encode()).hexdigest()
        return self.directory / key[:2] / f"{key}.json"

    def get(self, code: str, method: Method, params: dict) -> Optional[EnergyResult]:
        path = self._path(code, method, params)
        try:
            with open(path, encoding="utf-8") as fh:
                entry = json.load(fh)
            if entry["engine_version"] != self.engine_version:
                self.stale += 1
                self.misses += 1
                return None
            if entry["code"] != code or entry["method"] != Method(method).value:
                raise ValueError("entry does not match its key")
            result = EnergyResult(float(entry["value"]), Method(entry["method"]), float(entry["error_bound"]))
        except FileNotFoundError:
            self.misses += 1
            return None
        except (OSError, ValueError, KeyError, TypeError) as exc:
            log.warning("ignoring corrupt cache entry %s (%s)", path, exc)
            self.corrupt += 1
            self.misses += 1
            return None
        self.hits += 1
        return result

    def put(self, code: str, method: Method, params: dict, result: EnergyResult) -> None:
        path = self._path(code, method, params)
        path.parent.mkdir(parents=True, exist_ok=True)
        entry = {
            "engine_version": self.engine_version,
            "method": Method(method).value,
            "params": params,
            "code": code,
            "value": result.value,
            "error_bound": result.error_bound,
        }
        fd, tmp = tempfile.mkstemp(dir=path.parent, suffix=".tmp")
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            json.dump(entry, fh)
        os.replace(tmp, path)

    def stats(self) -> dict:
        return {"hits": self.hits, "misses": self.misses, "stale": self.stale, "corrupt": self.corrupt}
