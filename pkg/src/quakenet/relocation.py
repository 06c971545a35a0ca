"""Seismic-zone-aware node relocation.

Nodes sitting in severe zones are moved, one at a time, to the centre of a
nearby cell with a lower zone level. A move is admissible when it

* stays within a square window of ``search_half_width`` cells around the
  node's original cell (search-space constraint),
* keeps the total fibre length at or below that of the original topology
  (link-length constraint, checked as a running budget after every move),
* keeps border nodes on the map periphery (border-movement constraint).
"""
from __future__ import annotations

import math
from collections import Counter
from dataclasses import asdict, dataclass, field, replace
from typing import Literal

from .geo_grid import OutOfGridError, SeismicGrid, SeismicZone, cell_center, unproject
from .topology import Node, Topology, plane_length, rebuild_with_positions, total_link_length

Cell = tuple[int, int]
NodeOrder = Literal["severity-desc", "id-asc"]


@dataclass(frozen=True)
class RelocationConfig:
    search_half_width: int = 2
    require_strict_zone_improvement: bool = True
    node_order: NodeOrder = "severity-desc"

    def __post_init__(self):
        if self.search_half_width < 0:
            raise ValueError("search_half_width must be >= 0")
        if self.node_order not in ("severity-desc", "id-asc"):
            raise ValueError(f"unknown node order {self.node_order!r}")


@dataclass(frozen=True)
class Move:
    node_id: str
    old_cell: Cell
    new_cell: Cell
    old_zone: SeismicZone
    new_zone: SeismicZone

    def to_dict(self) -> dict:
        return {
            "node_id": self.node_id,
            "old_cell": list(self.old_cell),
            "new_cell": list(self.new_cell),
            "old_zone": int(self.old_zone),
            "new_zone": int(self.new_zone),
        }


@dataclass(frozen=True)
class MoveAudit:
    node_id: str
    old_cell: Cell
    new_cell: Cell
    displacement: int
    nssc: bool
    lmbc: bool
    zone_improved: bool
    listed_in_plan: bool


@dataclass(frozen=True)
class AuditReport:
    llc: bool
    llc_before: float
    llc_after: float
    moves: tuple[MoveAudit, ...]

    @property
    def nssc(self) -> bool:
        return all(m.nssc for m in self.moves)

    @property
    def lmbc(self) -> bool:
        return all(m.lmbc for m in self.moves)

    @property
    def zone_improvement(self) -> bool:
        return all(m.zone_improved for m in self.moves)

    @property
    def plan_consistent(self) -> bool:
        return all(m.listed_in_plan for m in self.moves)

    @property
    def passed(self) -> bool:
        return self.llc and self.nssc and self.lmbc and self.zone_improvement and self.plan_consistent

    def to_dict(self) -> dict:
        return {
            "passed": self.passed,
            "llc": {"passed": self.llc, "before_km": self.llc_before, "after_km": self.llc_after},
            "nssc": {"passed": self.nssc},
            "lmbc": {"passed": self.lmbc},
            "zone_improvement": {"passed": self.zone_improvement},
            "plan_consistent": {"passed": self.plan_consistent},
            "moves": [
                {**asdict(m), "old_cell": list(m.old_cell), "new_cell": list(m.new_cell)}
                for m in self.moves
            ],
        }


@dataclass(frozen=True)
class RelocationPlan:
    moves: tuple[Move, ...]
    llc_before: float
    llc_after: float
    audit: AuditReport | None = field(default=None, compare=False)

    def to_dict(self) -> dict:
        return {
            "moves": [m.to_dict() for m in self.moves],
            "llc_before_km": self.llc_before,
            "llc_after_km": self.llc_after,
            "audit": None if self.audit is None else self.audit.to_dict(),
        }


def length_excess(new_lengths, old_lengths) -> float:
    """Sign-exact ``sum(new) - sum(old)``; fsum rounds the exact difference once."""
    return math.fsum([*new_lengths, *(-x for x in old_lengths)])


def chebyshev(a: Cell, b: Cell) -> int:
    return max(abs(a[0] - b[0]), abs(a[1] - b[1]))


def node_cell(node: Node, grid: SeismicGrid) -> Cell:
    try:
        return grid.cell_of_latlon(node.lat, node.lon)
    except OutOfGridError as exc:
        raise OutOfGridError(f"node {node.id!r} lies outside the grid: {exc}") from None


def candidate_cells(
    node: Node,
    grid: SeismicGrid,
    cfg: RelocationConfig = RelocationConfig(),
    occupied: frozenset[Cell] | set[Cell] = frozenset(),
    around: Cell | None = None,
) -> list[tuple[int, int, SeismicZone]]:
    """Zoned cells in the search window, best first.

    ``occupied`` holds cells taken by *other* nodes. ``around`` overrides the
    window centre (defaults to the node's current cell).
    """
    centre = around if around is not None else node_cell(node, grid)
    hw = cfg.search_half_width
    out = []
    for r in range(centre[0] - hw, centre[0] + hw + 1):
        for c in range(centre[1] - hw, centre[1] + hw + 1):
            if not grid.in_bounds(r, c) or (r, c) in occupied:
                continue
            zone = grid.zone_at(r, c)
            if zone is None:
                continue
            out.append((r, c, zone))
    out.sort(key=lambda rcz: (rcz[2], chebyshev(centre, rcz[:2]), rcz[0], rcz[1]))
    return out


def _ordered_nodes(t: Topology, grid: SeismicGrid, cfg: RelocationConfig) -> list[Node]:
    if cfg.node_order == "id-asc":
        return sorted(t.nodes, key=lambda n: n.id)

    def severity(n: Node) -> int:
        zone = grid.zone_at(*node_cell(n, grid))
        return 0 if zone is None else int(zone)

    return sorted(t.nodes, key=lambda n: (-severity(n), n.id))


def relocate(
    t: Topology, grid: SeismicGrid, cfg: RelocationConfig = RelocationConfig()
) -> tuple[Topology, RelocationPlan]:
    budget = total_link_length(t)
    original = [link.length_km for link in t.links]
    cells = {n.id: node_cell(n, grid) for n in t.nodes}
    occupancy = Counter(cells.values())
    current = {n.id: n for n in t.nodes}
    lengths = {link.id: link.length_km for link in t.links}
    moves: list[Move] = []
    new_positions: dict[str, tuple[float, float]] = {}

    for node in _ordered_nodes(t, grid, cfg):
        old_cell = cells[node.id]
        old_zone = grid.zone_at(*old_cell)
        if old_zone is None:
            continue
        occupied = {cell for cell, count in occupancy.items() if count > (cell == old_cell)}
        for r, c, zone in candidate_cells(node, grid, cfg, occupied, around=old_cell):
            if zone > old_zone or (cfg.require_strict_zone_improvement and zone == old_zone):
                break
            if (r, c) == old_cell:
                # the node's own cell outranks every equal-zone cell: stay
                break
            if node.is_border and not (grid.is_periphery(*old_cell) and grid.is_periphery(r, c)):
                continue
            lat, lon = unproject(cell_center(r, c, grid.spec), grid.spec)
            moved = replace(node, lat=lat, lon=lon)
            trial = dict(lengths)
            for link in t.incident(node.id):
                trial[link.id] = plane_length(moved, current[link.other(node.id)], t.frame)
            if length_excess((trial[link.id] for link in t.links), original) > 0:
                continue
            lengths = trial
            current[node.id] = moved
            occupancy[old_cell] -= 1
            occupancy[(r, c)] += 1
            cells[node.id] = (r, c)
            new_positions[node.id] = (lat, lon)
            moves.append(Move(node.id, old_cell, (r, c), old_zone, zone))
            break

    t_new = rebuild_with_positions(t, new_positions)
    plan = RelocationPlan(tuple(moves), budget, total_link_length(t_new))
    audit = verify_plan(t, t_new, plan, grid, cfg)
    return t_new, replace(plan, audit=audit)


def verify_plan(
    t_orig: Topology,
    t_new: Topology,
    plan: RelocationPlan,
    grid: SeismicGrid,
    cfg: RelocationConfig = RelocationConfig(),
) -> AuditReport:
    """Recheck every constraint from the two topologies, independent of ``relocate``."""
    if t_orig.fingerprint() != t_new.fingerprint():
        raise ValueError("relocated topology does not share the original's nodes and links")

    before = math.fsum(link.length_km for link in t_orig.links)
    after = math.fsum(link.length_km for link in t_new.links)
    planned = {m.node_id: m for m in plan.moves}
    audits = []
    for old in t_orig.nodes:
        new = t_new.node(old.id)
        old_cell = node_cell(old, grid)
        new_cell = node_cell(new, grid)
        if (old.lat, old.lon) == (new.lat, new.lon) and old.id not in planned:
            continue
        old_zone, new_zone = grid.zone_at(*old_cell), grid.zone_at(*new_cell)
        if old_zone is None or new_zone is None:
            improved = False
        elif cfg.require_strict_zone_improvement:
            improved = new_zone < old_zone
        else:
            improved = new_zone <= old_zone
        lmbc = not old.is_border or (grid.is_periphery(*old_cell) and grid.is_periphery(*new_cell))
        entry = planned.get(old.id)
        listed = entry is not None and entry.old_cell == old_cell and entry.new_cell == new_cell
        d = chebyshev(old_cell, new_cell)
        audits.append(MoveAudit(old.id, old_cell, new_cell, d, d <= cfg.search_half_width, lmbc, improved, listed))
    llc = length_excess((link.length_km for link in t_new.links), (link.length_km for link in t_orig.links)) <= 0
    return AuditReport(llc, before, after, tuple(audits))
