"""Seismic zone grid over a geographic bounding box.

Coordinates live in three frames:

* geographic ``(lat, lon)`` in degrees,
* a flat km-plane (:class:`PlanePoint`) obtained by an equirectangular
  projection about the grid origin (the south-west corner),
* grid cells ``(row, col)`` where row 0 is the southernmost row and col 0 the
  westernmost column.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

EARTH_RADIUS_KM = 6371.0
NO_DATA = 0


class InvalidCoordinateError(ValueError):
    pass


class OutOfGridError(ValueError):
    pass


class SeismicZone(enum.IntEnum):
    """Zone level; the integer value doubles as the severity rank."""

    II = 2
    III = 3
    IV = 4
    V = 5

    @property
    def mm_intensity(self) -> str:
        return _MM_INTENSITY[self]


_MM_INTENSITY = {
    SeismicZone.II: "VI or less",
    SeismicZone.III: "VII",
    SeismicZone.IV: "VIII",
    SeismicZone.V: "IX or above",
}


@dataclass(frozen=True)
class GridSpec:
    origin_lat: float
    origin_lon: float
    rows: int = 60
    cols: int = 60
    cell_km: float = 54.0

    def __post_init__(self):
        if self.rows < 1 or self.cols < 1:
            raise ValueError(f"grid needs at least one row and column, got {self.rows}x{self.cols}")
        if not (self.cell_km > 0 and math.isfinite(self.cell_km)):
            raise ValueError(f"cell_km must be positive, got {self.cell_km}")
        if not (math.isfinite(self.origin_lat) and math.isfinite(self.origin_lon)):
            raise InvalidCoordinateError("grid origin must be finite")

    @property
    def width_km(self) -> float:
        return self.cols * self.cell_km

    @property
    def height_km(self) -> float:
        return self.rows * self.cell_km


@dataclass(frozen=True)
class PlanePoint:
    x: float
    y: float

    def __post_init__(self):
        if not (math.isfinite(self.x) and math.isfinite(self.y)):
            raise InvalidCoordinateError(f"non-finite plane point ({self.x}, {self.y})")

    def distance(self, other: PlanePoint) -> float:
        return math.hypot(self.x - other.x, self.y - other.y)


def project(lat: float, lon: float, spec: GridSpec) -> PlanePoint:
    if not (math.isfinite(lat) and math.isfinite(lon)) or abs(lat) > 90:
        raise InvalidCoordinateError(f"invalid coordinate ({lat}, {lon})")
    x = EARTH_RADIUS_KM * math.radians(lon - spec.origin_lon) * math.cos(math.radians(spec.origin_lat))
    y = EARTH_RADIUS_KM * math.radians(lat - spec.origin_lat)
    return PlanePoint(x, y)


def unproject(p: PlanePoint, spec: GridSpec) -> tuple[float, float]:
    """Inverse of :func:`project`; returns ``(lat, lon)``."""
    lat = spec.origin_lat + math.degrees(p.y / EARTH_RADIUS_KM)
    lon = spec.origin_lon + math.degrees(p.x / (EARTH_RADIUS_KM * math.cos(math.radians(spec.origin_lat))))
    return lat, lon


def cell_of(p: PlanePoint, spec: GridSpec) -> tuple[int, int]:
    if not (0.0 <= p.x <= spec.width_km and 0.0 <= p.y <= spec.height_km):
        raise OutOfGridError(f"point ({p.x:.3f}, {p.y:.3f}) km lies outside the grid")
    # clamping only matters on the far edges, where floor gives rows/cols
    row = min(math.floor(p.y / spec.cell_km), spec.rows - 1)
    col = min(math.floor(p.x / spec.cell_km), spec.cols - 1)
    return row, col


def cell_center(row: int, col: int, spec: GridSpec) -> PlanePoint:
    _check_index(row, col, spec)
    return PlanePoint((col + 0.5) * spec.cell_km, (row + 0.5) * spec.cell_km)


def _check_index(row: int, col: int, spec: GridSpec) -> None:
    if not (0 <= row < spec.rows and 0 <= col < spec.cols):
        raise OutOfGridError(f"cell ({row}, {col}) outside {spec.rows}x{spec.cols} grid")


class SeismicGrid:
    """Zone levels per cell; ``0`` marks cells without zone data (sea, abroad)."""

    def __init__(self, spec: GridSpec, cells):
        cells = np.array(cells, dtype=np.int8)
        if cells.shape != (spec.rows, spec.cols):
            raise ValueError(f"cell matrix shape {cells.shape} does not match grid {spec.rows}x{spec.cols}")
        bad = ~np.isin(cells, (NO_DATA, 2, 3, 4, 5))
        if bad.any():
            r, c = np.argwhere(bad)[0]
            raise ValueError(f"cell ({r}, {c}) holds invalid zone value {cells[r, c]}")
        cells.setflags(write=False)
        self.spec = spec
        self.cells = cells

    def __eq__(self, other):
        return (
            isinstance(other, SeismicGrid)
            and self.spec == other.spec
            and np.array_equal(self.cells, other.cells)
        )

    def __repr__(self):
        return f"SeismicGrid({self.spec!r})"

    def zone_at(self, row: int, col: int) -> SeismicZone | None:
        """Zone of a cell, or ``None`` for a no-data cell."""
        _check_index(row, col, self.spec)
        value = int(self.cells[row, col])
        return None if value == NO_DATA else SeismicZone(value)

    def in_bounds(self, row: int, col: int) -> bool:
        return 0 <= row < self.spec.rows and 0 <= col < self.spec.cols

    def is_periphery(self, row: int, col: int) -> bool:
        """True when some cell within Chebyshev distance 1 is off-grid or no-data."""
        _check_index(row, col, self.spec)
        for dr in (-1, 0, 1):
            for dc in (-1, 0, 1):
                r, c = row + dr, col + dc
                if not self.in_bounds(r, c) or self.cells[r, c] == NO_DATA:
                    return True
        return False

    def cell_of_latlon(self, lat: float, lon: float) -> tuple[int, int]:
        return cell_of(project(lat, lon, self.spec), self.spec)
