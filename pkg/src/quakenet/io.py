"""Readers and writers for zone grids, topologies, catalogs and reports."""
from __future__ import annotations

import csv
import datetime as dt
import io
import json
import math
import os
import re
import tempfile
from importlib import resources
from pathlib import Path

import numpy as np

from .geo_grid import GridSpec, SeismicGrid
from .quake import EarthquakeEvent
from .topology import Node, Topology, build_topology

_HEADER = re.compile(r"#\s*gridspec\s+(.*)$")
_GRID_KEYS = {"origin_lat": float, "origin_lon": float, "rows": int, "cols": int, "cell_km": float}
CATALOG_COLUMNS = ["id", "date", "lat", "lon", "magnitude"]


class ParseError(ValueError):
    def __init__(self, path, line: int | None, message: str):
        self.path = str(path)
        self.line = line
        where = self.path if line is None else f"{self.path}:{line}"
        super().__init__(f"{where}: {message}")


def fixture_path(name: str) -> Path:
    """Path of a bundled data file (``zones_india_60.csv``, ``railtel_approx.json``...)."""
    return Path(str(resources.files("quakenet") / "data" / name))


# -- zone grid ---------------------------------------------------------------


def load_zone_grid(path) -> SeismicGrid:
    """Read a zone CSV. File lines run north to south, so the first data line is the top grid row."""
    path = Path(path)
    lines = path.read_text().splitlines()
    if not lines:
        raise ParseError(path, 1, "empty zone file")
    m = _HEADER.match(lines[0].strip())
    if not m:
        raise ParseError(path, 1, "missing '# gridspec ...' header")
    fields = {}
    for token in m.group(1).split():
        key, _, value = token.partition("=")
        if key not in _GRID_KEYS:
            raise ParseError(path, 1, f"unknown gridspec key {key!r}")
        try:
            fields[key] = _GRID_KEYS[key](value)
        except ValueError:
            raise ParseError(path, 1, f"bad value for {key}: {value!r}") from None
    missing = set(_GRID_KEYS) - set(fields)
    if missing:
        raise ParseError(path, 1, f"gridspec lacks {', '.join(sorted(missing))}")
    try:
        spec = GridSpec(**fields)
    except ValueError as exc:
        raise ParseError(path, 1, str(exc)) from None

    body = [(i + 2, line) for i, line in enumerate(lines[1:]) if line.strip()]
    if len(body) != spec.rows:
        raise ParseError(path, None, f"expected {spec.rows} data rows, found {len(body)}")
    cells = np.zeros((spec.rows, spec.cols), dtype=np.int8)
    for k, (lineno, line) in enumerate(body):
        parts = [p.strip() for p in line.split(",")]
        if len(parts) != spec.cols:
            raise ParseError(path, lineno, f"row has {len(parts)} values, expected {spec.cols}")
        for j, p in enumerate(parts):
            if p not in ("0", "2", "3", "4", "5"):
                raise ParseError(path, lineno, f"column {j + 1}: invalid zone value {p!r}")
        cells[spec.rows - 1 - k] = [int(p) for p in parts]
    return SeismicGrid(spec, cells)


def dump_zone_grid(grid: SeismicGrid) -> str:
    s = grid.spec
    out = [
        f"# gridspec origin_lat={s.origin_lat!r} origin_lon={s.origin_lon!r} "
        f"rows={s.rows} cols={s.cols} cell_km={s.cell_km!r}"
    ]
    for r in range(s.rows - 1, -1, -1):
        out.append(",".join(str(int(v)) for v in grid.cells[r]))
    return "\n".join(out) + "\n"


# -- topology ----------------------------------------------------------------


def load_topology(path, frame: GridSpec) -> Topology:
    path = Path(path)
    try:
        doc = json.loads(path.read_text())
    except json.JSONDecodeError as exc:
        raise ParseError(path, exc.lineno, exc.msg) from None
    try:
        nodes = [
            Node(str(n["id"]), str(n.get("name", n["id"])), float(n["lat"]), float(n["lon"]), bool(n.get("is_border", False)))
            for n in doc["nodes"]
        ]
        links = [
            {"id": str(l["id"]), "a": str(l["a"]), "b": str(l["b"]), "length_km": l.get("length_km")}
            for l in doc["links"]
        ]
        return build_topology(nodes, links, frame)
    except (KeyError, TypeError, ValueError) as exc:
        msg = f"missing field {exc}" if isinstance(exc, KeyError) else str(exc)
        raise ParseError(path, None, msg) from None


def topology_to_dict(t: Topology) -> dict:
    return {
        "nodes": [
            {"id": n.id, "name": n.name, "lat": n.lat, "lon": n.lon, "is_border": n.is_border} for n in t.nodes
        ],
        "links": [{"id": l.id, "a": l.a, "b": l.b, "length_km": l.length_km} for l in t.links],
    }


# -- catalog -----------------------------------------------------------------


def load_catalog(path) -> list[EarthquakeEvent]:
    """Read ``id,date,lat,lon,magnitude`` rows; ``#`` lines are comments."""
    path = Path(path)
    events = []
    header = None
    seen = set()
    with path.open(newline="") as fh:
        for lineno, row in enumerate(csv.reader(fh), start=1):
            if not row or row[0].lstrip().startswith("#"):
                continue
            row = [c.strip() for c in row]
            if header is None:
                if row != CATALOG_COLUMNS:
                    raise ParseError(path, lineno, f"expected header {','.join(CATALOG_COLUMNS)}")
                header = row
                continue
            if len(row) != len(CATALOG_COLUMNS):
                raise ParseError(path, lineno, f"expected {len(CATALOG_COLUMNS)} columns, got {len(row)}")
            eid, date, lat, lon, mag = row
            try:
                event = EarthquakeEvent(eid, dt.date.fromisoformat(date), float(lat), float(lon), float(mag))
            except ValueError as exc:
                raise ParseError(path, lineno, str(exc)) from None
            if not (math.isfinite(event.lat) and math.isfinite(event.lon)):
                raise ParseError(path, lineno, "non-finite epicentre")
            if eid in seen:
                raise ParseError(path, lineno, f"duplicate event id {eid!r}")
            seen.add(eid)
            events.append(event)
    if header is None:
        raise ParseError(path, None, "catalog has no header row")
    return events


# -- outputs -----------------------------------------------------------------


def dumps_json(doc) -> str:
    return json.dumps(doc, indent=2, sort_keys=False) + "\n"


def write_atomic(path, text: str) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.")
    try:
        with os.fdopen(fd, "w", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        os.unlink(tmp)
        raise


EVENT_CSV_COLUMNS = ["event_id", "scenario", "established", "survived", "esr", "bandwidth_lost_thz"]


def events_csv(reports, meta: dict) -> str:
    buf = io.StringIO()
    buf.write("# " + " ".join(f"{k}={v}" for k, v in meta.items()) + "\n")
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(EVENT_CSV_COLUMNS)
    for rep in reports:
        for e in rep.events:
            w.writerow([e.event_id, rep.label, e.established, e.survived, repr(e.esr), repr(e.bandwidth_lost_thz)])
    return buf.getvalue()


def read_events_csv(path) -> list[dict]:
    with Path(path).open(newline="") as fh:
        rows = [line for line in fh if not line.startswith("#")]
    return list(csv.DictReader(rows))
