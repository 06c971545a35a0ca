"""Recompute fixture facts without the package's own code paths and pin them.

The total link length is re-derived with a vectorised equirectangular
projection (numpy), so tests can compare it against
``quakenet.topology.total_link_length``.

    python scripts/pin_fixture_manifest.py
"""
import hashlib
import json
from pathlib import Path

import numpy as np

DATA = Path(__file__).resolve().parents[1] / "src" / "quakenet" / "data"
R = 6371.0


def grid_origin(zone_csv: Path) -> tuple[float, float]:
    header = zone_csv.read_text().splitlines()[0]
    fields = dict(tok.split("=") for tok in header.split()[2:])
    return float(fields["origin_lat"]), float(fields["origin_lon"])


def total_length(topo_json: Path, origin: tuple[float, float]) -> float:
    doc = json.loads(topo_json.read_text())
    lat0, lon0 = np.radians(origin)
    pos = {n["id"]: (n["lat"], n["lon"]) for n in doc["nodes"]}
    a = np.radians([pos[l["a"]] for l in doc["links"]])
    b = np.radians([pos[l["b"]] for l in doc["links"]])
    dx = R * (b[:, 1] - a[:, 1]) * np.cos(lat0)
    dy = R * (b[:, 0] - a[:, 0])
    return float(np.sqrt(dx**2 + dy**2).sum())


def main():
    zones = DATA / "zones_india_60.csv"
    topo = DATA / "railtel_approx.json"
    doc = json.loads(topo.read_text())
    manifest = {
        "railtel_approx.json": {
            "nodes": len(doc["nodes"]),
            "links": len(doc["links"]),
            "total_link_length_km": round(total_length(topo, grid_origin(zones)), 6),
        },
        "sha256": {
            p.name: hashlib.sha256(p.read_bytes()).hexdigest()
            for p in sorted(DATA.iterdir())
            if p.suffix in (".csv", ".json") and p.name != "manifest.json"
        },
    }
    (DATA / "manifest.json").write_text(json.dumps(manifest, indent=2) + "\n")
    print(json.dumps(manifest["railtel_approx.json"]))


if __name__ == "__main__":
    main()
