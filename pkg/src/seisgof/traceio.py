"""Trace-file I/O.

Format contract: CSV with the exact header line ``t,ew,ns,ud`` followed by
rows of time in decimal seconds and three acceleration samples in m/s^2 on a
uniform grid (jitter tolerance 1e-9 s). A JSON sidecar named
``<basename>.meta.json`` carries ``station_id``, ``units`` and
``epicentral_distance``.
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .signal import Record3C, TimeSeries, Unit, UnitError

HEADER = "t,ew,ns,ud"
JITTER = 1e-9


def meta_path_for(path: Path) -> Path:
    return path.with_name(path.stem + ".meta.json")


def write_record(record: Record3C, path) -> Path:
    """Write a record as trace CSV plus JSON sidecar; returns the CSV path.

    Floats are written with ``repr`` (shortest round-trip form), so a
    read/write cycle is byte-identical.
    """
    if record.unit is not Unit.ACCELERATION:
        raise UnitError("trace CSV stores acceleration in m/s2; integrate/"
                        "differentiate to acceleration before writing")
    path = Path(path)
    t = record.ew.times.tolist()
    ew = record.ew.samples.tolist()
    ns = record.ns.samples.tolist()
    ud = record.ud.samples.tolist()
    lines = [HEADER]
    for i in range(record.ew.n):
        lines.append(f"{t[i]!r},{ew[i]!r},{ns[i]!r},{ud[i]!r}")
    path.write_text("\n".join(lines) + "\n")
    meta = {
        "station_id": record.station_id,
        "units": Unit.ACCELERATION.value,
        "epicentral_distance": record.epicentral_distance,
    }
    meta_path_for(path).write_text(json.dumps(meta, indent=2, sort_keys=True) + "\n")
    return path


def read_record(path) -> Record3C:
    """Read a trace CSV (and its sidecar if present) back into a Record3C."""
    path = Path(path)
    lines = path.read_text().splitlines()
    if not lines or lines[0].strip() != HEADER:
        raise ValueError(f"{path}: first line must be exactly {HEADER!r}")
    rows = np.array([[float(v) for v in line.split(",")]
                     for line in lines[1:] if line.strip()], dtype=float)
    if rows.ndim != 2 or rows.shape[1] != 4 or rows.shape[0] < 2:
        raise ValueError(f"{path}: expected at least 2 rows of t,ew,ns,ud")
    t = rows[:, 0]
    n = t.size
    dt = (t[-1] - t[0]) / (n - 1)
    if dt <= 0:
        raise ValueError(f"{path}: time column must be increasing")
    jitter = np.abs(t - (t[0] + np.arange(n) * dt)).max()
    if jitter > JITTER:
        raise ValueError(f"{path}: non-uniform sampling (jitter {jitter:.3g} s "
                         f"exceeds {JITTER:g} s)")

    station_id = ""
    epicentral = None
    meta_file = meta_path_for(path)
    if meta_file.exists():
        meta = json.loads(meta_file.read_text())
        units = meta.get("units", Unit.ACCELERATION.value)
        if units != Unit.ACCELERATION.value:
            raise UnitError(f"{meta_file}: units must be "
                            f"{Unit.ACCELERATION.value!r}, got {units!r}")
        station_id = meta.get("station_id", "")
        epicentral = meta.get("epicentral_distance")

    def series(col):
        return TimeSeries(dt, t[0], rows[:, col], Unit.ACCELERATION)

    return Record3C(ew=series(1), ns=series(2), ud=series(3),
                    station_id=station_id, epicentral_distance=epicentral)
