"""Optical backbone graph: geo-located nodes and undirected km-weighted links."""
from __future__ import annotations

import hashlib
import heapq
import json
import math
from dataclasses import dataclass, field, replace
from typing import Iterable, Mapping

import networkx as nx

from .geo_grid import GridSpec, PlanePoint, project

DEFAULT_K = 3

Path = tuple[str, ...]


class TopologyError(ValueError):
    pass


@dataclass(frozen=True)
class Node:
    id: str
    name: str
    lat: float
    lon: float
    is_border: bool = False


@dataclass(frozen=True)
class Link:
    id: str
    a: str
    b: str
    length_km: float
    explicit_length: bool = False

    @property
    def endpoints(self) -> frozenset[str]:
        return frozenset((self.a, self.b))

    def other(self, node_id: str) -> str:
        return self.b if node_id == self.a else self.a


@dataclass(frozen=True)
class Topology:
    """Immutable network snapshot.

    ``frame`` is the grid spec whose projection defines link lengths; it is
    kept so positions can be changed without the caller re-supplying it.
    """

    nodes: tuple[Node, ...]
    links: tuple[Link, ...]
    frame: GridSpec
    _node_index: dict = field(init=False, repr=False, compare=False)
    _pair_index: dict = field(init=False, repr=False, compare=False)
    _adjacency: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        node_index = {}
        for n in self.nodes:
            if n.id in node_index:
                raise TopologyError(f"duplicate node id {n.id!r}")
            node_index[n.id] = n
        pair_index = {}
        adjacency = {n.id: [] for n in self.nodes}
        link_ids = set()
        for link in self.links:
            if link.id in link_ids:
                raise TopologyError(f"duplicate link id {link.id!r}")
            link_ids.add(link.id)
            if link.a == link.b:
                raise TopologyError(f"link {link.id!r} is a self-loop")
            for end in (link.a, link.b):
                if end not in node_index:
                    raise TopologyError(f"link {link.id!r} references unknown node {end!r}")
            if link.endpoints in pair_index:
                raise TopologyError(f"parallel links between {link.a!r} and {link.b!r}")
            if not (link.length_km > 0 and math.isfinite(link.length_km)):
                raise TopologyError(f"link {link.id!r} has non-positive length {link.length_km}")
            pair_index[link.endpoints] = link
            adjacency[link.a].append(link)
            adjacency[link.b].append(link)
        object.__setattr__(self, "_node_index", node_index)
        object.__setattr__(self, "_pair_index", pair_index)
        object.__setattr__(self, "_adjacency", adjacency)

    # -- queries -----------------------------------------------------------

    def node(self, node_id: str) -> Node:
        try:
            return self._node_index[node_id]
        except KeyError:
            raise TopologyError(f"unknown node {node_id!r}") from None

    def node_ids(self) -> list[str]:
        return [n.id for n in self.nodes]

    def link_between(self, a: str, b: str) -> Link | None:
        return self._pair_index.get(frozenset((a, b)))

    def incident(self, node_id: str) -> list[Link]:
        return list(self._adjacency[node_id])

    def neighbours(self, node_id: str) -> list[tuple[str, float]]:
        return [(link.other(node_id), link.length_km) for link in self._adjacency[node_id]]

    def position(self, node_id: str) -> PlanePoint:
        n = self.node(node_id)
        return project(n.lat, n.lon, self.frame)

    def path_links(self, path: Path) -> list[Link]:
        out = []
        for u, v in zip(path, path[1:]):
            link = self.link_between(u, v)
            if link is None:
                raise TopologyError(f"no link between {u!r} and {v!r}")
            out.append(link)
        return out

    def path_length(self, path: Path) -> float:
        return sum(link.length_km for link in self.path_links(path))

    def without_links(self, link_ids: Iterable[str]) -> Topology:
        drop = set(link_ids)
        return Topology(self.nodes, tuple(link for link in self.links if link.id not in drop), self.frame)

    def is_connected(self) -> bool:
        if not self.nodes:
            return True
        return nx.is_connected(self.to_networkx())

    def to_networkx(self) -> nx.Graph:
        g = nx.Graph()
        g.add_nodes_from(self.node_ids())
        for link in self.links:
            g.add_edge(link.a, link.b, length_km=link.length_km, id=link.id)
        return g

    def fingerprint(self) -> str:
        """Hash of node ids and link adjacency; positions are deliberately excluded."""
        payload = {
            "nodes": sorted(self.node_ids()),
            "links": sorted((link.id, *sorted((link.a, link.b))) for link in self.links),
        }
        return hashlib.sha256(json.dumps(payload).encode()).hexdigest()[:16]


def plane_length(a: Node, b: Node, frame: GridSpec) -> float:
    return project(a.lat, a.lon, frame).distance(project(b.lat, b.lon, frame))


def build_topology(nodes: Iterable[Node], link_specs: Iterable[Mapping], frame: GridSpec) -> Topology:
    """Assemble a topology; links without ``length_km`` get the plane distance."""
    nodes = tuple(nodes)
    by_id = {n.id: n for n in nodes}
    links = []
    for spec in link_specs:
        a, b = spec["a"], spec["b"]
        if a not in by_id or b not in by_id:
            missing = a if a not in by_id else b
            raise TopologyError(f"link {spec['id']!r} references unknown node {missing!r}")
        length = spec.get("length_km")
        if length is None:
            links.append(Link(spec["id"], a, b, plane_length(by_id[a], by_id[b], frame)))
        else:
            links.append(Link(spec["id"], a, b, float(length), explicit_length=True))
    return Topology(nodes, tuple(links), frame)


def total_link_length(t: Topology) -> float:
    return math.fsum(link.length_km for link in t.links)


def rebuild_with_positions(t: Topology, moves: Mapping[str, tuple[float, float]]) -> Topology:
    """New topology with moved nodes; lengths of links touching them are recomputed."""
    for node_id in moves:
        t.node(node_id)
    if not moves:
        return t
    nodes = tuple(
        replace(n, lat=moves[n.id][0], lon=moves[n.id][1]) if n.id in moves else n
        for n in t.nodes
    )
    by_id = {n.id: n for n in nodes}
    links = tuple(
        replace(link, length_km=plane_length(by_id[link.a], by_id[link.b], t.frame), explicit_length=False)
        if (link.a in moves or link.b in moves)
        else link
        for link in t.links
    )
    return Topology(nodes, links, t.frame)


# -- routing ---------------------------------------------------------------


def _best_path(
    t: Topology,
    src: str,
    dst: str,
    banned_nodes: frozenset[str] = frozenset(),
    banned_edges: frozenset[frozenset[str]] = frozenset(),
) -> Path | None:
    """Shortest path, ties broken by the lexicographically smallest node sequence."""
    # (distance, path) labels are ordered consistently under extension, so
    # plain Dijkstra over them yields the (length, lex) minimum.
    best = {src: (0.0, (src,))}
    heap = [(0.0, (src,))]
    done = set()
    while heap:
        dist, path = heapq.heappop(heap)
        u = path[-1]
        if u in done:
            continue
        done.add(u)
        if u == dst:
            return path
        for v, w in t.neighbours(u):
            if v in done or v in banned_nodes or frozenset((u, v)) in banned_edges:
                continue
            label = (dist + w, path + (v,))
            if v not in best or label < best[v]:
                best[v] = label
                heapq.heappush(heap, label)
    return None


def k_shortest_paths(t: Topology, src: str, dst: str, k: int = DEFAULT_K) -> list[Path]:
    """Loop-free paths in ascending length (ties: node-id sequence), Yen-style."""
    t.node(src)
    t.node(dst)
    if src == dst:
        raise ValueError("source and destination must differ")
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")

    first = _best_path(t, src, dst)
    if first is None:
        return []
    found = [first]
    candidates: list[tuple[float, Path]] = []
    seen = {first}
    while len(found) < k:
        last = found[-1]
        for i in range(len(last) - 1):
            root = last[: i + 1]
            banned_edges = {
                frozenset((p[i], p[i + 1]))
                for p in found
                if len(p) > i + 1 and p[: i + 1] == root
            }
            spur = _best_path(t, root[-1], dst, frozenset(root[:-1]), frozenset(banned_edges))
            if spur is None:
                continue
            path = root[:-1] + spur
            if path not in seen:
                seen.add(path)
                heapq.heappush(candidates, (t.path_length(path), path))
        if not candidates:
            break
        found.append(heapq.heappop(candidates)[1])
    return found
