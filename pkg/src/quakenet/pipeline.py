"""Scenario orchestration: relocate, establish lightpaths, replay a catalog, report."""
from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence

from .geo_grid import OutOfGridError, SeismicGrid
from .io import ParseError, load_catalog, load_topology, load_zone_grid
from .lightpath import LightpathSet, Protection, Regime, Unprotectable, establish, generate_demands
from .metrics import ScenarioReport, event_metrics
from .quake import DEFAULT_MODEL, EarthquakeEvent, FailureModel, apply_event, surviving_connections
from .relocation import RelocationConfig
from .topology import DEFAULT_K, Topology


@dataclass(frozen=True)
class ScenarioSpec:
    topology: Path
    zones: Path
    catalog: Path | None
    regimes: tuple[Regime, ...] = (Regime.WDM, Regime.EON)
    protections: tuple[Protection, ...] = (Protection.NONE, Protection.DPP)
    capacity: int | None = None
    seed: int = 1
    relocate: bool = False
    relocation: RelocationConfig = field(default_factory=RelocationConfig)
    k: int = DEFAULT_K
    unprotectable: Unprotectable = Unprotectable.KEEP
    out: Path = Path("out")

    def digest(self) -> str:
        """Hash of every input that shapes the outputs; the output directory is excluded."""
        h = hashlib.sha256()
        for p in (self.topology, self.zones, self.catalog):
            h.update(b"\0" if p is None else Path(p).read_bytes())
        settings = {
            "regimes": [r.value for r in self.regimes],
            "protections": [p.value for p in self.protections],
            "capacity": self.capacity,
            "seed": self.seed,
            "relocate": self.relocate,
            "search_half_width": self.relocation.search_half_width,
            "strict": self.relocation.require_strict_zone_improvement,
            "node_order": self.relocation.node_order,
            "k": self.k,
            "unprotectable": self.unprotectable.value,
        }
        h.update(json.dumps(settings, sort_keys=True).encode())
        return h.hexdigest()[:16]


def scenario_label(variant: str, regime: Regime, protection: Protection) -> str:
    return f"{variant}-{regime.value}-{protection.value}"


def replay(
    t: Topology,
    grid: SeismicGrid,
    lp: LightpathSet,
    events: Sequence[EarthquakeEvent],
    label: str,
    model: FailureModel = DEFAULT_MODEL,
) -> ScenarioReport:
    """Apply each event independently to the freshly established lightpaths."""
    rows = []
    for e in events:
        failures = apply_event(t, grid.spec, model, e)
        rows.append(event_metrics(e.id, lp, surviving_connections(lp, failures)))
    return ScenarioReport(label, tuple(rows))


def run_scenario(
    t: Topology,
    grid: SeismicGrid,
    events: Sequence[EarthquakeEvent],
    regime: Regime,
    protection: Protection,
    seed: int,
    capacity: int | None = None,
    k: int = DEFAULT_K,
    label: str | None = None,
    model: FailureModel = DEFAULT_MODEL,
    unprotectable: Unprotectable = Unprotectable.KEEP,
) -> tuple[LightpathSet, ScenarioReport]:
    lp = establish(t, generate_demands(t, seed), regime, protection, capacity, k, unprotectable)
    label = label or f"{regime.value}-{protection.value}"
    return lp, replay(t, grid, lp, events, label, model)


def validate(spec: ScenarioSpec, model: FailureModel = DEFAULT_MODEL) -> list[str]:
    """Dry-run parse and cross-checks; problems are returned, never raised."""
    diagnostics: list[str] = []
    grid = topo = None
    try:
        grid = load_zone_grid(spec.zones)
    except (OSError, ParseError) as exc:
        diagnostics.append(f"zones: {exc}")
    if grid is not None:
        try:
            topo = load_topology(spec.topology, grid.spec)
        except (OSError, ParseError) as exc:
            diagnostics.append(f"topology: {exc}")
    if topo is not None:
        for n in topo.nodes:
            try:
                cell = grid.cell_of_latlon(n.lat, n.lon)
            except (OutOfGridError, ValueError):
                diagnostics.append(f"topology: node {n.id!r} lies outside the grid extent")
                continue
            if grid.zone_at(*cell) is None:
                diagnostics.append(f"topology: node {n.id!r} sits in a cell without zone data {cell}")
        if not topo.is_connected():
            diagnostics.append("topology: graph is not connected")
    events = []
    if spec.catalog is not None:
        try:
            events = load_catalog(spec.catalog)
        except (OSError, ParseError) as exc:
            diagnostics.append(f"catalog: {exc}")
    for e in events:
        if e.magnitude >= model.ceiling:
            diagnostics.append(
                f"catalog: event {e.id!r} has magnitude {e.magnitude}, outside the failure model (< {model.ceiling})"
            )
    return diagnostics
