"""Rasterise a coarse, hand-traced India seismic zone map onto the 60x60 grid.

The outlines below are rough (lon, lat) traces of the 2002 BIS zone map, good
to a cell or two. Cells outside the land outline get 0 (no data). Zone
polygons are painted in order, later ones on top; land defaults to zone II.

    python scripts/make_zone_grid.py > src/quakenet/data/zones_india_60.csv
"""
from matplotlib.path import Path as Polygon

from quakenet.geo_grid import GridSpec, PlanePoint, SeismicGrid, cell_center, unproject
from quakenet.io import dump_zone_grid

SPEC = GridSpec(origin_lat=6.5, origin_lon=68.0, rows=60, cols=60, cell_km=54.0)

MAINLAND = [
    (68.2, 23.6), (68.7, 22.3), (70.3, 21.0), (70.8, 20.7), (72.6, 21.1), (72.8, 20.0),
    (72.8, 19.0), (73.0, 17.5), (73.8, 15.5), (74.4, 14.0), (74.8, 12.9), (75.5, 11.5),
    (76.2, 10.0), (76.9, 8.5), (77.5, 8.1), (78.1, 8.9), (79.0, 9.3), (79.8, 10.3),
    (79.85, 11.9), (80.3, 13.1), (80.1, 15.0), (81.0, 16.0), (82.3, 16.6), (83.3, 17.7),
    (84.8, 19.2), (86.5, 20.2), (87.0, 21.4), (88.2, 21.6), (89.0, 21.8), (88.9, 23.5),
    (88.2, 24.5), (88.5, 25.3), (89.8, 25.9), (89.9, 25.2), (92.0, 24.9), (91.3, 24.0),
    (91.6, 23.0), (92.3, 22.0), (92.8, 21.9), (93.3, 22.5), (93.4, 23.7), (94.2, 24.0),
    (94.6, 25.5), (95.2, 26.6), (96.2, 27.2), (97.3, 28.2), (96.0, 29.4), (94.5, 29.3),
    (93.0, 28.0), (91.6, 27.8), (92.0, 26.9), (89.8, 26.8), (88.9, 27.2), (88.8, 28.1),
    (88.0, 27.9), (88.0, 26.4), (86.0, 26.5), (84.0, 27.4), (83.3, 27.4), (80.1, 28.8),
    (81.0, 30.2), (79.0, 31.2), (78.7, 32.5), (79.5, 32.5), (80.2, 35.3), (77.8, 35.5),
    (76.0, 35.7), (74.5, 35.0), (73.8, 34.5), (74.0, 33.0), (74.7, 32.5), (74.5, 31.0),
    (73.9, 30.0), (73.0, 29.3), (71.5, 28.0), (70.4, 27.6), (69.6, 27.0), (70.1, 25.8),
    (71.0, 24.5), (69.4, 24.3), (68.5, 23.7),
]
ANDAMAN = [(92.2, 10.5), (93.2, 10.5), (93.2, 13.8), (92.2, 13.8)]

ZONES = [
    # zone III
    (3, [(68.2, 20.5), (74.5, 20.5), (74.5, 24.7), (68.2, 24.7)]),
    (3, [(72.6, 21.0), (74.2, 21.0), (74.5, 16.0), (76.5, 11.0), (77.3, 8.0), (76.5, 8.0),
         (74.8, 12.8), (73.5, 16.0), (72.6, 19.0)]),
    (3, [(79.6, 10.0), (80.5, 10.0), (80.5, 16.0), (82.5, 17.0), (84.5, 19.0), (84.0, 19.6),
         (82.0, 18.2), (79.6, 15.0)]),
    (3, [(73.5, 25.0), (75.0, 28.5), (78.0, 30.0), (81.0, 28.5), (84.0, 27.0), (88.5, 26.0),
         (89.0, 22.0), (87.0, 20.5), (85.0, 21.5), (82.0, 23.0), (79.0, 23.5), (76.0, 23.5),
         (74.0, 24.0)]),
    (3, [(88.0, 24.0), (90.0, 24.0), (90.0, 26.0), (88.0, 26.0)]),
    # zone IV
    (4, [(73.5, 32.5), (74.5, 34.5), (77.0, 35.0), (79.5, 33.5), (79.5, 31.0), (81.0, 30.0),
         (84.0, 27.8), (88.0, 26.8), (88.9, 27.3), (89.0, 26.3), (88.0, 26.1), (84.0, 26.6),
         (81.0, 27.8), (78.0, 29.2), (76.5, 29.3), (75.0, 30.5), (74.0, 31.5)]),
    (4, [(75.5, 32.3), (80.5, 32.3), (80.5, 36.0), (75.5, 36.0)]),
    (4, [(76.6, 28.1), (77.8, 28.1), (77.8, 29.3), (76.6, 29.3)]),
    (4, [(68.2, 22.5), (71.5, 22.5), (72.0, 24.5), (68.5, 24.5)]),
    (4, [(73.3, 16.8), (74.2, 16.8), (74.2, 17.8), (73.3, 17.8)]),
    (4, [(88.0, 26.0), (89.9, 25.6), (89.9, 27.3), (88.0, 27.5)]),
    # zone V
    (5, [(73.8, 33.5), (75.8, 33.0), (76.5, 34.5), (75.0, 35.0), (73.8, 34.6)]),
    (5, [(76.2, 31.8), (77.3, 31.3), (77.6, 32.5), (76.5, 32.8)]),
    (5, [(78.8, 30.0), (80.2, 29.3), (80.8, 30.3), (79.8, 31.0)]),
    (5, [(85.5, 26.0), (87.5, 25.8), (88.1, 26.5), (85.6, 27.1)]),
    (5, [(89.7, 25.0), (93.0, 21.5), (97.5, 21.5), (97.5, 30.0), (89.7, 28.0)]),
    (5, [(68.5, 23.0), (71.0, 23.0), (71.0, 24.3), (68.5, 24.3)]),
    (5, ANDAMAN),
]


def _samples(r, c):
    centre = cell_center(r, c, SPEC)
    offsets = [(0.0, 0.0)] + [(dx, dy) for dx in (-0.4, 0.0, 0.4) for dy in (-0.4, 0.0, 0.4) if dx or dy]
    for dx, dy in offsets:
        lat, lon = unproject(PlanePoint(centre.x + dx * SPEC.cell_km, centre.y + dy * SPEC.cell_km), SPEC)
        yield (lon, lat)


def build() -> SeismicGrid:
    land = [Polygon(MAINLAND), Polygon(ANDAMAN)]
    zones = [(level, Polygon(poly)) for level, poly in ZONES]
    cells = [[0] * SPEC.cols for _ in range(SPEC.rows)]
    for r in range(SPEC.rows):
        for c in range(SPEC.cols):
            # coastal cells count as land when any sample point is ashore;
            # the zone is read at the first such point, centre first
            pt = next((p for p in _samples(r, c) if any(poly.contains_point(p) for poly in land)), None)
            if pt is None:
                continue
            level = 2
            for z, poly in zones:
                if poly.contains_point(pt):
                    level = z
            cells[r][c] = level
    return SeismicGrid(SPEC, cells)


if __name__ == "__main__":
    print(dump_zone_grid(build()), end="")
