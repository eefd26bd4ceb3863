"""On-disk cache of per-weight records, keyed by a content hash.

Each entry is one JSON file ``<sha256>.json`` holding the key material, the
value and a checksum of the value.  Writes go to a temporary file in the
same directory followed by ``os.replace``.  Unreadable or inconsistent
entries are misses.  Any OS error disables the cache for the rest of the
process instead of failing the computation.
"""

from __future__ import annotations

import hashlib
import json
import logging
import os
import tempfile
from pathlib import Path

log = logging.getLogger(__name__)

# bump when a change alters the meaning of cached records
CONVENTION_VERSION = "1"
ENV_VAR = "OMEGALAB_CACHE"
SUFFIX = ".json"


def canonical(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def make_key(module: str, cd_name: str, spec_json, weight, extra=None) -> dict:
    return {
        "module": module,
        "convention": CONVENTION_VERSION,
        "cd": cd_name,
        "spec": spec_json,
        "weight": list(weight) if weight is not None else None,
        "extra": extra,
    }


def key_hash(key: dict) -> str:
    return hashlib.sha256(canonical(key).encode()).hexdigest()


def default_dir() -> Path:
    base = os.environ.get("XDG_CACHE_HOME") or os.path.join(os.path.expanduser("~"), ".cache")
    return Path(base) / "omegalab"


def resolve_dir(configured=None):
    """OMEGALAB_CACHE wins over the configured directory; 'off' disables."""
    chosen = os.environ.get(ENV_VAR) or configured
    if chosen is None:
        return default_dir()
    if str(chosen).lower() in ("off", "none", ""):
        return None
    return Path(chosen)


class Cache:
    def __init__(self, directory):
        self.dir = Path(directory) if directory is not None else None
        self.enabled = self.dir is not None
        self.hits = 0
        self.misses = 0

    def _path(self, h):
        return self.dir / f"{h}{SUFFIX}"

    def get(self, key: dict):
        if not self.enabled:
            return None
        h = key_hash(key)
        try:
            with open(self._path(h), "rb") as fh:
                data = json.loads(fh.read().decode())
            value = data["value"]
            ok = data["key"] == key and data["checksum"] == _checksum(value)
        except FileNotFoundError:
            ok = False
        except (OSError, ValueError, KeyError, TypeError, UnicodeDecodeError) as exc:
            log.info("cache entry %s unreadable (%s); treating as a miss", h[:12], exc)
            ok = False
        if not ok:
            self.misses += 1
            return None
        self.hits += 1
        return value

    def put(self, key: dict, value) -> None:
        if not self.enabled:
            return
        h = key_hash(key)
        payload = canonical({"key": key, "value": value, "checksum": _checksum(value)}).encode()
        tmp = None
        try:
            self.dir.mkdir(parents=True, exist_ok=True)
            fd, tmp = tempfile.mkstemp(dir=self.dir, prefix=".tmp-", suffix=SUFFIX)
            with os.fdopen(fd, "wb") as fh:
                fh.write(payload)
                fh.flush()
                os.fsync(fh.fileno())
            os.replace(tmp, self._path(h))
            tmp = None
        except OSError as exc:
            log.warning("cache disabled after write failure: %s", exc)
            self.enabled = False
        finally:
            if tmp is not None:
                try:
                    os.unlink(tmp)
                except OSError:
                    pass

    def get_or_compute(self, key: dict, compute):
        value = self.get(key)
        if value is None:
            value = compute()
            self.put(key, value)
        return value

    def clean(self) -> int:
        """Remove all entries (and stray temporaries); returns the count removed."""
        if self.dir is None or not self.dir.is_dir():
            return 0
        n = 0
        for p in self.dir.iterdir():
            if p.suffix == SUFFIX and p.is_file():
                p.unlink()
                n += 1
        return n


def _checksum(value) -> str:
    return hashlib.sha256(canonical(value).encode()).hexdigest()
