"""On-disk lattice cache.

One JSON file per arrangement, keyed by a content hash of its canonical
serialization.  Loads reconstruct the exact canonical flats, so a warm run is
byte-identical to a cold one.  Writes go through a temp file and an atomic
rename so concurrent commands never see a partial file.
"""

from __future__ import annotations

import hashlib
import json
import os
import tempfile

from .arrangement import Arrangement, Flat, IntersectionLattice
from .linalg import Subspace

FORMAT = "hyparr-lattice-v1"
CACHE_ENV = "HYPARR_CACHE_DIR"


def _row_payload(row):
    nums, den = row
    return [list(nums), den]


def _row_from_payload(payload):
    nums, den = payload
    return (tuple(nums), den)


def arrangement_payload(arr: Arrangement) -> dict:
    return {
        "ambient": arr.ambient,
        "field_order": arr.order,
        "hyperplanes": [_row_payload(h.row) for h in arr.hyperplanes],
    }


def arrangement_key(arr: Arrangement) -> str:
    blob = json.dumps(arrangement_payload(arr), sort_keys=True,
                      separators=(",", ":")).encode()
    return hashlib.sha256(blob).hexdigest()


def lattice_payload(lattice: IntersectionLattice) -> dict:
    levels = []
    for level in lattice.levels:
        levels.append([{
            "support": str(f.support),
            "pivots": list(f.subspace.pivots),
            "rows": [_row_payload(r) for r in f.subspace.rows],
        } for f in level])
    return {
        "format": FORMAT,
        "arrangement": arrangement_payload(lattice.arrangement),
        "levels": levels,
    }


def lattice_from_payload(arr: Arrangement, payload: dict) -> IntersectionLattice:
    if payload.get("format") != FORMAT:
        raise ValueError(f"unsupported cache format {payload.get('format')!r}")
    if payload.get("arrangement") != arrangement_payload(arr):
        raise ValueError("cache entry describes a different arrangement")
    levels = []
    for rank, level in enumerate(payload["levels"]):
        flats = []
        for item in level:
            rows = tuple(_row_from_payload(r) for r in item["rows"])
            sub = Subspace(arr.ambient, arr.order, rows, tuple(item["pivots"]))
            flats.append(Flat(sub, int(item["support"]), rank))
        levels.append(tuple(flats))
    return IntersectionLattice(arr, tuple(levels))


def cache_path(arr: Arrangement, cache_dir: str) -> str:
    return os.path.join(cache_dir, f"{arrangement_key(arr)}.json")


def save_lattice(lattice: IntersectionLattice, cache_dir: str) -> str:
    os.makedirs(cache_dir, exist_ok=True)
    path = cache_path(lattice.arrangement, cache_dir)
    blob = json.dumps(lattice_payload(lattice), sort_keys=True, separators=(",", ":"))
    fd, tmp = tempfile.mkstemp(dir=cache_dir, suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(blob)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
    return path


def load_lattice(arr: Arrangement, cache_dir: str) -> IntersectionLattice | None:
    path = cache_path(arr, cache_dir)
    if not os.path.exists(path):
        return None
    try:
        with open(path, "r", encoding="utf-8") as fh:
            payload = json.load(fh)
        return lattice_from_payload(arr, payload)
    except (ValueError, KeyError, OSError):
        return None  # treat unreadable or stale entries as cache misses
