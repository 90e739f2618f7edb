"""Append-only JSON-lines store for witness bundles.

Every hit is re-validated (field, curve equation, triangle identities)
before it is handed back, so a damaged file can cost time but never
produce a wrong answer.
"""

from __future__ import annotations

import json
import logging
import os
import threading
import time
from typing import Callable, Optional

from .correspondence import triangle_new
from .elliptic import CurveEn
from .errors import CacheCorrupt, CongruentError
from .exact import Poly, as_rational
from .number_field import NumberField

__all__ = ["WitnessCache", "cache_key", "validate_bundle"]

log = logging.getLogger(__name__)


def cache_key(n: int, kind: str, **params) -> str:
    return json.dumps({"n": n, "kind": kind, "params": params}, sort_keys=True)


def _element(field: NumberField, data: dict):
    if data.get("field_label") != field.label:
        raise CacheCorrupt(f"element labelled {data.get('field_label')!r} in field {field.label!r}")
    return field.element(as_rational(c) for c in data["coeffs"])


def validate_bundle(bundle: dict) -> None:
    """Raise CacheCorrupt unless the bundle's point and triangle check out."""
    try:
        fdata = bundle["field"]
        field = NumberField(Poly.from_json(fdata["min_poly"]), fdata["label"])
        lo, hi = (as_rational(v) for v in fdata["root_interval"])
        iv = field.root_interval
        if field.degree > 1 and not (lo < hi and lo <= iv.hi and iv.lo <= hi):
            raise CacheCorrupt("stored root interval does not isolate the designated root")
        n = int(bundle["n"])
        pt = bundle["point"]
        CurveEn(n, field).point(_element(field, pt["x"]), _element(field, pt["y"]))
        tri = bundle["triangle"]
        triangle_new(_element(field, tri["a"]), _element(field, tri["b"]),
                     _element(field, tri["c"]), n, field=field)
    except CacheCorrupt:
        raise
    except (CongruentError, KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
        raise CacheCorrupt(f"{type(exc).__name__}: {exc}") from exc


class WitnessCache:
    """JSON-lines file of {key, value, created_at} records; later records win."""

    def __init__(self, path: str):
        self.path = path
        self._lock = threading.Lock()

    def _records(self):
        if not os.path.exists(self.path):
            return
        with open(self.path, encoding="utf-8") as fh:
            for lineno, line in enumerate(fh, 1):
                line = line.strip()
                if not line:
                    continue
                try:
                    rec = json.loads(line)
                    rec["key"], rec["value"]
                except (json.JSONDecodeError, KeyError, TypeError):
                    log.warning("cache %s line %d is unreadable; skipped", self.path, lineno)
                    continue
                yield rec

    def load(self, key: str) -> Optional[dict]:
        """Newest valid bundle stored under ``key``, or None."""
        candidates = [rec["value"] for rec in self._records() if rec["key"] == key]
        for value in reversed(candidates):
            try:
                validate_bundle(value)
            except CacheCorrupt as exc:
                log.warning("cache entry for %s failed validation (%s); ignoring it", key, exc)
                continue
            return value
        return None

    def store(self, key: str, value: dict) -> None:
        rec = {"key": key, "value": value, "created_at": time.time()}
        line = json.dumps(rec) + "\n"
        with self._lock:
            parent = os.path.dirname(os.path.abspath(self.path))
            os.makedirs(parent, exist_ok=True)
            with open(self.path, "a", encoding="utf-8") as fh:
                fh.write(line)

    def get_or_compute(self, key: str, compute: Callable[[], dict]) -> dict:
        hit = self.load(key)
        if hit is not None:
            return hit
        value = compute()
        self.store(key, value)
        return value
