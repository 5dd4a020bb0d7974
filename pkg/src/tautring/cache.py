"""Process-wide caches for integrals and pairing tables, with JSON persistence.

File layout (version 1)::

    {"version": 1,
     "psi": {"g|d1,d2,...": "p/q", ...},
     "pairings": {"g|n|r": {"gens": [...], "cogens": [...],
                            "matrix": [["p/q", ...], ...]}, ...}}
"""
from __future__ import annotations

import json
import os
import threading
from collections import Counter
from fractions import Fraction

CACHE_VERSION = 1


class CacheError(RuntimeError):
    pass


class IntegralCache:
    """Thread-safe memo tables.  ``stats`` counts actual computations."""

    def __init__(self):
        self.lock = threading.RLock()
        self.psi = {}
        self.kappa = {}
        self.pairings = {}
        self.stats = Counter()

    def clear(self):
        with self.lock:
            self.psi.clear()
            self.kappa.clear()
            self.pairings.clear()
            self.stats.clear()


CACHE = IntegralCache()


def frac_to_str(x) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def str_to_frac(s: str) -> Fraction:
    return Fraction(s)


def _dump(cache: IntegralCache) -> dict:
    with cache.lock:
        psi = {f"{g}|{','.join(map(str, d))}": frac_to_str(v)
               for (g, d), v in sorted(cache.psi.items())}
        pairings = {}
        for (g, n, r), entry in sorted(cache.pairings.items()):
            pairings[f"{g}|{n}|{r}"] = {
                "gens": list(entry["gens"]),
                "cogens": list(entry["cogens"]),
                "matrix": [[frac_to_str(x) for x in row] for row in entry["matrix"]],
            }
    return {"version": CACHE_VERSION, "psi": psi, "pairings": pairings}


def save_cache(path, cache: IntegralCache = CACHE) -> None:
    """Write the cache to ``path`` atomically under an exclusive file lock."""
    from filelock import FileLock

    data = _dump(cache)
    path = os.fspath(path)
    with FileLock(path + ".lock"):
        tmp = path + ".tmp"
        with open(tmp, "w") as fh:
            json.dump(data, fh, sort_keys=True)
        os.replace(tmp, path)


def load_cache(path, cache: IntegralCache = CACHE) -> None:
    """Merge the cache file at ``path`` into ``cache``.

    Missing or empty files are a no-op.  Unknown versions and malformed
    documents raise :class:`CacheError`.
    """
    from filelock import FileLock

    path = os.fspath(path)
    if not os.path.exists(path):
        return
    with FileLock(path + ".lock"):
        with open(path) as fh:
            text = fh.read()
    if not text.strip():
        return
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise CacheError(f"corrupt cache file {path}: {exc}") from None
    if not isinstance(data, dict) or data.get("version") != CACHE_VERSION:
        raise CacheError(f"unsupported cache version in {path}: {data.get('version') if isinstance(data, dict) else None!r}")
    try:
        psi = {}
        for key, val in data.get("psi", {}).items():
            g, d = key.split("|")
            exps = tuple(int(x) for x in d.split(",")) if d else ()
            psi[(int(g), exps)] = str_to_frac(val)
        pairings = {}
        for key, entry in data.get("pairings", {}).items():
            g, n, r = (int(x) for x in key.split("|"))
            pairings[(g, n, r)] = {
                "gens": tuple(entry["gens"]),
                "cogens": tuple(entry.get("cogens", ())),
                "matrix": tuple(tuple(str_to_frac(x) for x in row) for row in entry["matrix"]),
            }
    except (ValueError, KeyError, TypeError, AttributeError) as exc:
        raise CacheError(f"corrupt cache file {path}: {exc}") from None
    with cache.lock:
        cache.psi.update(psi)
        cache.pairings.update(pairings)
