"""Static lightpath establishment for fixed-grid WDM and flex-grid EON.

Every unordered node pair gets one demand. Demands are routed in a fixed
order over their k shortest paths; spectrum is picked first-fit with
wavelength/slot continuity (no converters). Under dedicated path
protection a link-disjoint backup with its own spectrum is reserved too.

Working paths under protection are identical to the unprotected ones, so a
protected scenario can only ever survive more than its unprotected twin.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field, replace
from itertools import combinations
from typing import Sequence

import numpy as np

from .topology import DEFAULT_K, Path, Topology, k_shortest_paths

WDM_CHANNELS = 80  # 4 THz C-band on the 50 GHz grid
EON_SLOTS = 320  # 4 THz C-band on 12.5 GHz slots
WDM_CHANNEL_GHZ = 50.0
EON_SLOT_GHZ = 12.5
MIN_SLOTS, MAX_SLOTS = 2, 10


class Regime(str, enum.Enum):
    WDM = "wdm"
    EON = "eon"

    @property
    def default_capacity(self) -> int:
        return WDM_CHANNELS if self is Regime.WDM else EON_SLOTS

    @property
    def unit_ghz(self) -> float:
        return WDM_CHANNEL_GHZ if self is Regime.WDM else EON_SLOT_GHZ


class Protection(str, enum.Enum):
    NONE = "none"
    DPP = "dpp"


class Unprotectable(str, enum.Enum):
    """What DPP does with a demand for which no disjoint backup fits."""

    KEEP = "keep"
    BLOCK = "block"


@dataclass(frozen=True)
class Demand:
    src: str
    dst: str
    slots_required: int
    wavelengths_required: int = 1

    def __post_init__(self):
        if self.src == self.dst:
            raise ValueError(f"demand endpoints coincide: {self.src!r}")

    def width(self, regime: Regime) -> int:
        return self.wavelengths_required if regime is Regime.WDM else self.slots_required


@dataclass(frozen=True)
class Assignment:
    demand: Demand
    established: bool
    working_path: Path | None = None
    working_start: int | None = None
    width: int = 0
    backup_path: Path | None = None
    backup_start: int | None = None
    working_links: tuple[str, ...] = ()
    backup_links: tuple[str, ...] = ()

    @property
    def working_channels(self) -> range | None:
        return None if self.working_start is None else range(self.working_start, self.working_start + self.width)

    @property
    def backup_channels(self) -> range | None:
        return None if self.backup_start is None else range(self.backup_start, self.backup_start + self.width)

    def to_dict(self) -> dict:
        def interval(start):
            return None if start is None else [start, start + self.width]

        return {
            "src": self.demand.src,
            "dst": self.demand.dst,
            "slots_required": self.demand.slots_required,
            "wavelengths_required": self.demand.wavelengths_required,
            "status": "established" if self.established else "blocked",
            "working_path": None if self.working_path is None else list(self.working_path),
            "working_links": list(self.working_links),
            "working_channels": interval(self.working_start),
            "backup_path": None if self.backup_path is None else list(self.backup_path),
            "backup_links": list(self.backup_links),
            "backup_channels": interval(self.backup_start),
        }


@dataclass(frozen=True)
class LightpathSet:
    regime: Regime
    protection: Protection
    capacity: int
    assignments: tuple[Assignment, ...]
    spectrum: dict[str, np.ndarray] = field(compare=False)  # derived from assignments
    topology_fingerprint: str = ""

    @property
    def established(self) -> list[Assignment]:
        return [a for a in self.assignments if a.established]

    def to_dict(self) -> dict:
        return {
            "regime": self.regime.value,
            "protection": self.protection.value,
            "capacity": self.capacity,
            "topology": self.topology_fingerprint,
            "established": len(self.established),
            "blocked": len(self.assignments) - len(self.established),
            "assignments": [a.to_dict() for a in self.assignments],
        }


def generate_demands(t: Topology, seed: int) -> list[Demand]:
    """Full-mesh demands in (src, dst) id order with uniform slot counts in [2, 10]."""
    ids = sorted(t.node_ids())
    if len(ids) < 2:
        raise ValueError("need at least two nodes to generate demands")
    pairs = list(combinations(ids, 2))
    rng = np.random.default_rng(seed)
    slots = rng.integers(MIN_SLOTS, MAX_SLOTS + 1, size=len(pairs))
    return [Demand(a, b, int(n)) for (a, b), n in zip(pairs, slots)]


def first_fit(occupancy: Sequence[bool], n: int) -> int | None:
    """Lowest start of ``n`` consecutive free positions, or ``None``."""
    if n < 1:
        raise ValueError(f"window size must be >= 1, got {n}")
    run = 0
    for i, busy in enumerate(occupancy):
        if busy:
            run = 0
            continue
        run += 1
        if run == n:
            return i - n + 1
    return None


def _links_of(t: Topology, path: Path) -> tuple[str, ...]:
    return tuple(link.id for link in t.path_links(path))


def _fit(spectrum: dict[str, np.ndarray], link_ids: Sequence[str], n: int) -> int | None:
    busy = np.logical_or.reduce([spectrum[lid] for lid in link_ids])
    return first_fit(busy.tolist(), n)


def _reserve(spectrum: dict[str, np.ndarray], link_ids: Sequence[str], start: int, n: int) -> None:
    for lid in link_ids:
        spectrum[lid][start : start + n] = True


def _backup_candidates(t: Topology, routes, working_index: int, used: set[str], k: int):
    backups = [r for j, r in enumerate(routes) if j != working_index and used.isdisjoint(r[1])]
    seen = {p for p, _ in backups}
    # routing around the working path lets requests whose k shortest paths all
    # overlap still be protected
    for p in k_shortest_paths(t.without_links(used), routes[working_index][0][0], routes[working_index][0][-1], k):
        if p not in seen:
            backups.append((p, _links_of(t, p)))
    return backups


def establish(
    t: Topology,
    demands: Sequence[Demand],
    regime: Regime | str,
    protection: Protection | str = Protection.NONE,
    capacity: int | None = None,
    k: int = DEFAULT_K,
    unprotectable: Unprotectable | str = Unprotectable.KEEP,
) -> LightpathSet:
    """Route and assign spectrum to ``demands`` in order.

    Working lightpaths are placed first, for every demand, exactly as in the
    unprotected case. Backups are then reserved from the leftover spectrum in
    the same demand order. A demand that gets no backup is either kept as an
    unprotected lightpath (``unprotectable="keep"``) or blocked and its working
    spectrum released (``"block"``).
    """
    regime, protection = Regime(regime), Protection(protection)
    unprotectable = Unprotectable(unprotectable)
    capacity = regime.default_capacity if capacity is None else capacity
    if capacity < 1:
        raise ValueError(f"capacity must be >= 1, got {capacity}")
    spectrum = {link.id: np.zeros(capacity, dtype=bool) for link in t.links}

    placed = []
    for d in demands:
        n = d.width(regime)
        routes = [(p, _links_of(t, p)) for p in k_shortest_paths(t, d.src, d.dst, k)]
        for i, (path, links) in enumerate(routes):
            start = _fit(spectrum, links, n)
            if start is not None:
                _reserve(spectrum, links, start, n)
                placed.append((d, Assignment(d, True, path, start, n, working_links=links), routes, i))
                break
        else:
            placed.append((d, Assignment(d, False, width=n), routes, None))

    if protection is Protection.NONE:
        return LightpathSet(regime, protection, capacity, tuple(a for _, a, _, _ in placed), spectrum, t.fingerprint())

    assignments = []
    for d, a, routes, i in placed:
        if not a.established:
            assignments.append(a)
            continue
        for backup, b_links in _backup_candidates(t, routes, i, set(a.working_links), k):
            b_start = _fit(spectrum, b_links, a.width)
            if b_start is not None:
                _reserve(spectrum, b_links, b_start, a.width)
                a = replace(a, backup_path=backup, backup_start=b_start, backup_links=b_links)
                break
        else:
            if unprotectable is Unprotectable.BLOCK:
                for lid in a.working_links:
                    spectrum[lid][a.working_start : a.working_start + a.width] = False
                a = Assignment(d, False, width=a.width)
        assignments.append(a)
    return LightpathSet(regime, protection, capacity, tuple(assignments), spectrum, t.fingerprint())
