"""Earthquake events, magnitude-banded failure radii and link-failure replay."""
from __future__ import annotations

import datetime as dt
import math
from dataclasses import dataclass

from .geo_grid import GridSpec, PlanePoint, project
from .lightpath import LightpathSet
from .topology import Topology


class OutOfModelError(ValueError):
    """Magnitude beyond the last band of the failure model."""


@dataclass(frozen=True)
class EarthquakeEvent:
    id: str
    date: dt.date
    lat: float
    lon: float
    magnitude: float

    def __post_init__(self):
        if not math.isfinite(self.magnitude) or self.magnitude < 0:
            raise ValueError(f"event {self.id!r}: magnitude must be finite and >= 0, got {self.magnitude}")


@dataclass(frozen=True)
class Band:
    low: float  # inclusive
    high: float  # exclusive
    realization_km: float
    failure_km: float


@dataclass(frozen=True)
class FailureModel:
    bands: tuple[Band, ...]

    def __post_init__(self):
        for prev, nxt in zip(self.bands, self.bands[1:]):
            if prev.high != nxt.low:
                raise ValueError("failure bands must be contiguous and ascending")

    @property
    def threshold(self) -> float:
        return self.bands[0].low

    @property
    def ceiling(self) -> float:
        return self.bands[-1].high

    def band_for(self, magnitude: float, event_id: str | None = None) -> Band | None:
        if not math.isfinite(magnitude):
            raise ValueError(f"magnitude must be finite, got {magnitude}")
        if magnitude >= self.ceiling:
            who = f"event {event_id!r}: " if event_id is not None else ""
            raise OutOfModelError(f"{who}magnitude {magnitude} is at or above the model ceiling {self.ceiling}")
        for band in self.bands:
            if band.low <= magnitude < band.high:
                return band
        return None

    def failure_radius(self, magnitude: float) -> float | None:
        band = self.band_for(magnitude)
        return None if band is None else band.failure_km

    def realization_radius(self, magnitude: float) -> float | None:
        band = self.band_for(magnitude)
        return None if band is None else band.realization_km


DEFAULT_MODEL = FailureModel(
    (
        Band(4.5, 5.5, 100.0, 50.0),
        Band(5.5, 6.5, 200.0, 100.0),
        Band(6.5, 7.5, 300.0, 150.0),
        Band(7.5, 8.5, 400.0, 200.0),
        Band(8.5, 9.5, 500.0, 250.0),
    )
)


def failure_radius(model: FailureModel, magnitude: float) -> float | None:
    return model.failure_radius(magnitude)


def segment_distance(p: PlanePoint, a: PlanePoint, b: PlanePoint) -> float:
    """Euclidean distance from ``p`` to the closed segment ``ab``."""
    dx, dy = b.x - a.x, b.y - a.y
    seg2 = dx * dx + dy * dy
    if seg2 == 0.0:
        return math.hypot(p.x - a.x, p.y - a.y)
    s = ((p.x - a.x) * dx + (p.y - a.y) * dy) / seg2
    s = min(1.0, max(0.0, s))
    return math.hypot(p.x - (a.x + s * dx), p.y - (a.y + s * dy))


@dataclass(frozen=True)
class FailureSet:
    event_id: str
    failed_links: frozenset[str]
    isolated_nodes: frozenset[str]
    topology_fingerprint: str


def apply_event(t: Topology, spec: GridSpec, model: FailureModel, e: EarthquakeEvent) -> FailureSet:
    band = model.band_for(e.magnitude, e.id)
    failed: set[str] = set()
    if band is not None:
        centre = project(e.lat, e.lon, spec)
        pos = {n.id: project(n.lat, n.lon, spec) for n in t.nodes}
        failed = {
            link.id
            for link in t.links
            if segment_distance(centre, pos[link.a], pos[link.b]) <= band.failure_km
        }
    isolated = {
        n.id
        for n in t.nodes
        if t.incident(n.id) and all(link.id in failed for link in t.incident(n.id))
    }
    return FailureSet(e.id, frozenset(failed), frozenset(isolated), t.fingerprint())


def surviving_connections(lp: LightpathSet, f: FailureSet) -> dict[tuple[str, str], bool]:
    """Survival verdict per established demand, keyed by ``(src, dst)``.

    A protected demand survives when either its working or its backup path
    is untouched.
    """
    if lp.topology_fingerprint != f.topology_fingerprint:
        raise ValueError("lightpaths and failure set were computed on different topologies")

    def intact(links) -> bool:
        return bool(links) and f.failed_links.isdisjoint(links)

    return {
        (a.demand.src, a.demand.dst): intact(a.working_links) or intact(a.backup_links)
        for a in lp.assignments
        if a.established
    }
