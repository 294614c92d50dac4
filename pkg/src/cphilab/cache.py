"""On-disk coefficient cache: one text file per (series spec, modulus).

Files use the ``#qseries`` text format.  A sidecar ``.sha256`` holds the
digest of the file; entries whose digest or header disagree with the body
are recomputed.  Writes go to a temporary file followed by an atomic rename,
so concurrent readers never see a half-written entry.
"""
from __future__ import annotations

import hashlib
import logging
import os
import re
import tempfile
from dataclasses import dataclass
from pathlib import Path

from .frobenius import SeriesSpec
from .qseries import QSeries, reduce_mod

log = logging.getLogger(__name__)

CACHE_ENV = "CPHILAB_CACHE"
SPOT_CHECK_TERMS = 64


@dataclass(frozen=True)
class CacheEntry:
    spec: str
    trunc: int
    modulus: int | None
    path: Path
    sha256: str


def default_cache_dir() -> Path | None:
    value = os.environ.get(CACHE_ENV)
    return Path(value) if value else None


def entry_path(cache_dir: Path, spec: SeriesSpec, modulus: int | None) -> Path:
    slug = re.sub(r"[^A-Za-z0-9]+", "_", str(spec))
    return Path(cache_dir) / f"{slug}__mod_{modulus or 'none'}.qseries"


def _digest(data: bytes) -> str:
    return hashlib.sha256(data).hexdigest()


def _compute(spec: SeriesSpec, T: int, modulus: int | None) -> QSeries:
    s = spec.build(T)
    return reduce_mod(s, modulus) if modulus else s


def read_entry(path: Path) -> tuple[QSeries, CacheEntry]:
    """Parse and integrity-check a cache file; raises ValueError on any defect."""
    data = path.read_bytes()
    sidecar = path.with_suffix(path.suffix + ".sha256")
    if not sidecar.exists():
        raise ValueError(f"missing digest for {path}")
    digest = sidecar.read_text().strip()
    if digest != _digest(data):
        raise ValueError(f"digest mismatch for {path}")
    series = QSeries.from_text(data.decode())
    spec = path.name.split("__mod_")[0]
    return series, CacheEntry(spec, series.trunc, series.modulus, path, digest)


def write_entry(path: Path, series: QSeries, spec: SeriesSpec) -> CacheEntry:
    path.parent.mkdir(parents=True, exist_ok=True)
    data = series.to_text().encode()
    digest = _digest(data)
    for target, payload in ((path, data), (path.with_suffix(path.suffix + ".sha256"), digest.encode())):
        fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=".tmp-")
        with os.fdopen(fd, "wb") as fh:
            fh.write(payload)
        os.replace(tmp, target)
    return CacheEntry(str(spec), series.trunc, series.modulus, path, digest)


def cached_series(
    spec: SeriesSpec, T: int, modulus: int | None = None, cache_dir: Path | None = None
) -> QSeries:
    """The series through q^(T-1), served from the cache when possible."""
    cache_dir = cache_dir or default_cache_dir()
    if cache_dir is None:
        return _compute(spec, T, modulus)
    path = entry_path(cache_dir, spec, modulus)
    if path.exists():
        try:
            series, _ = read_entry(path)
            if series.modulus != modulus:
                raise ValueError("modulus in header does not match the file name")
            probe = min(T, series.trunc, series.offset + SPOT_CHECK_TERMS)
            if series.truncate(probe) != _compute(spec, probe, modulus):
                raise ValueError("spot check against a fresh computation failed")
            if series.trunc >= T:
                return series.truncate(T)
        except (ValueError, OSError, KeyError) as exc:
            log.warning("discarding cache entry %s: %s", path, exc)
    series = _compute(spec, T, modulus)
    write_entry(path, series, spec)
    return series
