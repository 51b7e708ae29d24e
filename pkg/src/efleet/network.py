"""Road network graph, k-fastest route search and charging-site placement."""

from __future__ import annotations

import heapq
import json
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Optional

from .errors import GraphIntegrityError, NoRouteError, UnknownCityError, ValidationError

DEFAULT_SITE_SPACING_KM = 50.0
DEFAULT_ROUTE_COUNT = 3


@dataclass(frozen=True)
class NetworkNode:
    id: int
    lat: float
    lon: float
    county: str
    utility_id: str
    city: Optional[str] = None


@dataclass(frozen=True)
class RoadEdge:
    u: int
    v: int
    length_km: float
    speed_kph: float
    highway_name: str

    @property
    def travel_time_h(self) -> float:
        return self.length_km / self.speed_kph


@dataclass(frozen=True)
class Segment:
    """A stretch of route between two consecutive charging sites.

    Speed is total distance over total time of the underlying edges, so
    distance == speed * duration holds per segment.
    """

    index: int
    distance_km: float
    speed_kph: float
    duration_h: float


@dataclass(frozen=True)
class ChargingSite:
    """A route vertex where the vehicle may charge.

    ``price_usd_per_mwh`` is filled later from the tariff table; freshly
    generated routes carry None.
    """

    index: int
    node_id: int
    lat: float
    lon: float
    county: str
    utility_id: str
    cum_km: float
    price_usd_per_mwh: Optional[float] = None


@dataclass(frozen=True)
class Route:
    route_id: str
    origin_city: str
    destination_city: str
    node_path: tuple[int, ...]
    segments: tuple[Segment, ...]
    sites: tuple[ChargingSite, ...]
    total_distance_km: float
    total_duration_h: float
    highway_names: tuple[str, ...]

    def with_prices(self, prices: list[float]) -> "Route":
        """Return a copy with per-site energy prices filled in."""
        if len(prices) != len(self.sites):
            raise ValueError(
                f"expected {len(self.sites)} prices, got {len(prices)}")
        priced = tuple(replace(s, price_usd_per_mwh=p)
                       for s, p in zip(self.sites, prices))
        return replace(self, sites=priced)


@dataclass(frozen=True)
class RoadGraph:
    nodes: dict[int, NetworkNode]
    edges: tuple[RoadEdge, ...]
    city_index: dict[str, int]
    adjacency: dict[int, tuple[tuple[int, RoadEdge], ...]] = field(repr=False)
    isolated_nodes: frozenset[int] = frozenset()

    def edge_between(self, u: int, v: int) -> RoadEdge:
        for nbr, edge in self.adjacency.get(u, ()):
            if nbr == v:
                return edge
        raise GraphIntegrityError(f"no edge between nodes {u} and {v}")


def _require(cond: bool, message: str, *, source: str, location: str, field_name: str):
    if not cond:
        raise ValidationError(message, source=source, location=location, field=field_name)


def build_graph(network_file: str | Path) -> RoadGraph:
    """Load and validate a road network from its JSON file.

    Raises ValidationError naming the offending entry/field, or
    GraphIntegrityError for dangling edge endpoints. Isolated nodes are
    retained and flagged in ``isolated_nodes``.
    """
    path = Path(network_file)
    try:
        with open(path, encoding="utf-8") as fh:
            doc = json.load(fh)
    except json.JSONDecodeError as exc:
        raise ValidationError(f"malformed JSON: {exc.msg}", source=str(path),
                              location=f"line {exc.lineno}") from exc

    src = str(path)
    if not isinstance(doc, dict) or "nodes" not in doc or "edges" not in doc:
        raise ValidationError("document must contain 'nodes' and 'edges' arrays",
                              source=src, location="top level")

    nodes: dict[int, NetworkNode] = {}
    city_index: dict[str, int] = {}
    for i, raw in enumerate(doc["nodes"]):
        loc = f"nodes[{i}]"
        for key in ("id", "lat", "lon", "county", "utility_id"):
            _require(key in raw, "missing field", source=src, location=loc, field_name=key)
        nid = raw["id"]
        _require(isinstance(nid, int), "node id must be an integer",
                 source=src, location=loc, field_name="id")
        _require(nid not in nodes, f"duplicate node id {nid}",
                 source=src, location=loc, field_name="id")
        lat, lon = float(raw["lat"]), float(raw["lon"])
        _require(-90.0 <= lat <= 90.0, f"lat {lat} out of [-90, 90]",
                 source=src, location=loc, field_name="lat")
        _require(-180.0 <= lon <= 180.0, f"lon {lon} out of [-180, 180]",
                 source=src, location=loc, field_name="lon")
        county = str(raw["county"])
        utility = str(raw["utility_id"])
        _require(bool(county), "county must be non-empty",
                 source=src, location=loc, field_name="county")
        _require(bool(utility), "utility_id must be non-empty",
                 source=src, location=loc, field_name="utility_id")
        city = raw.get("city")
        if city is not None:
            city = str(city)
            _require(city not in city_index, f"duplicate city label {city!r}",
                     source=src, location=loc, field_name="city")
            city_index[city] = nid
        nodes[nid] = NetworkNode(id=nid, lat=lat, lon=lon, county=county,
                                 utility_id=utility, city=city)

    edges: list[RoadEdge] = []
    seen_pairs: set[tuple[int, int]] = set()
    for i, raw in enumerate(doc["edges"]):
        loc = f"edges[{i}]"
        for key in ("u", "v", "length_km", "speed_kph", "highway"):
            _require(key in raw, "missing field", source=src, location=loc, field_name=key)
        u, v = raw["u"], raw["v"]
        for endpoint, name in ((u, "u"), (v, "v")):
            if endpoint not in nodes:
                raise GraphIntegrityError(
                    f"{src}:{loc}: edge endpoint {name}={endpoint} references a missing node")
        _require(u != v, "self-loop edges are not allowed",
                 source=src, location=loc, field_name="u")
        length = float(raw["length_km"])
        speed = float(raw["speed_kph"])
        _require(length > 0.0, f"length_km must be > 0, got {length}",
                 source=src, location=loc, field_name="length_km")
        _require(speed > 0.0, f"speed_kph must be > 0, got {speed}",
                 source=src, location=loc, field_name="speed_kph")
        pair = (min(u, v), max(u, v))
        _require(pair not in seen_pairs, f"duplicate edge between {u} and {v}",
                 source=src, location=loc, field_name="u")
        seen_pairs.add(pair)
        edges.append(RoadEdge(u=u, v=v, length_km=length, speed_kph=speed,
                              highway_name=str(raw["highway"])))

    adj: dict[int, list[tuple[int, RoadEdge]]] = {nid: [] for nid in nodes}
    for edge in edges:
        adj[edge.u].append((edge.v, edge))
        adj[edge.v].append((edge.u, edge))
    adjacency = {nid: tuple(sorted(nbrs, key=lambda t: t[0]))
                 for nid, nbrs in adj.items()}
    isolated = frozenset(nid for nid, nbrs in adjacency.items() if not nbrs)

    return RoadGraph(nodes=nodes, edges=tuple(edges), city_index=dict(sorted(city_index.items())),
                     adjacency=adjacency, isolated_nodes=isolated)


def _shortest_time_path(graph: RoadGraph, source: int, target: int,
                        banned_nodes: frozenset[int] = frozenset(),
                        banned_edges: frozenset[tuple[int, int]] = frozenset(),
                        ) -> Optional[tuple[float, tuple[int, ...]]]:
    """Dijkstra over travel time; equal-time ties resolved by lexicographic node sequence."""
    if source in banned_nodes or target in banned_nodes:
        return None
    heap: list[tuple[float, tuple[int, ...]]] = [(0.0, (source,))]
    visited: set[int] = set()
    while heap:
        time_h, path = heapq.heappop(heap)
        node = path[-1]
        if node in visited:
            continue
        visited.add(node)
        if node == target:
            return time_h, path
        for nbr, edge in graph.adjacency[node]:
            if nbr in visited or nbr in banned_nodes:
                continue
            if (node, nbr) in banned_edges:
                continue
            heapq.heappush(heap, (time_h + edge.travel_time_h, path + (nbr,)))
    return None


def _path_duration(graph: RoadGraph, path: tuple[int, ...]) -> float:
    return sum(graph.edge_between(u, v).travel_time_h for u, v in zip(path, path[1:]))


def k_fastest_routes(graph: RoadGraph, origin: str, destination: str,
                     k: int = DEFAULT_ROUTE_COUNT,
                     spacing_km: float = DEFAULT_SITE_SPACING_KM) -> list[Route]:
    """Find up to k loopless fastest routes between two cities.

    Routes come back sorted ascending by duration; the first one is a true
    shortest-time path. Alternatives are Yen-style deviations, loopless by
    construction. Returns fewer than k routes when the graph does not
    contain k distinct loopless paths.
    """
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    for city in (origin, destination):
        if city not in graph.city_index:
            raise UnknownCityError(f"city {city!r} not in network")
    src = graph.city_index[origin]
    dst = graph.city_index[destination]

    if src == dst:
        paths = [(0.0, (src,))]
    else:
        best = _shortest_time_path(graph, src, dst)
        if best is None:
            raise NoRouteError(f"no path between {origin!r} and {destination!r}")
        paths = [best]
        candidates: list[tuple[float, tuple[int, ...]]] = []
        seen = {best[1]}
        while len(paths) < k:
            _, prev_path = paths[-1]
            for j in range(len(prev_path) - 1):
                root = prev_path[:j + 1]
                spur = prev_path[j]
                banned_edges = set()
                for _, p in paths:
                    if len(p) > j + 1 and p[:j + 1] == root:
                        banned_edges.add((p[j], p[j + 1]))
                        banned_edges.add((p[j + 1], p[j]))
                banned_nodes = frozenset(root[:-1])
                spur_res = _shortest_time_path(graph, spur, dst,
                                               banned_nodes=banned_nodes,
                                               banned_edges=frozenset(banned_edges))
                if spur_res is None:
                    continue
                _, spur_path = spur_res
                total = root[:-1] + spur_path
                if total in seen:
                    continue
                seen.add(total)
                heapq.heappush(candidates, (_path_duration(graph, total), total))
            if not candidates:
                break
            paths.append(heapq.heappop(candidates))
        paths.sort(key=lambda t: (t[0], t[1]))

    routes = []
    for idx, (_, node_path) in enumerate(paths):
        routes.append(_assemble_route(graph, origin, destination, idx, node_path, spacing_km))
    return routes


def place_charging_sites(graph: RoadGraph, node_path: tuple[int, ...] | list[int],
                         spacing_km: float = DEFAULT_SITE_SPACING_KM,
                         ) -> tuple[list[ChargingSite], list[Segment]]:
    """Place charging sites along a path at greedy >= spacing_km increments.

    Origin and destination are always sites. Walking the path, a site is
    emitted at the first node whose cumulative distance since the previous
    site reaches spacing_km. Sites snap to path nodes, never mid-edge.
    """
    if spacing_km <= 0:
        raise ValueError(f"spacing_km must be > 0, got {spacing_km}")
    node_path = tuple(node_path)
    if not node_path:
        raise GraphIntegrityError("empty node path")
    for nid in node_path:
        if nid not in graph.nodes:
            raise GraphIntegrityError(f"path node {nid} not in graph")

    hop_edges = []
    for u, v in zip(node_path, node_path[1:]):
        hop_edges.append(graph.edge_between(u, v))  # raises if disconnected

    cum_km = [0.0]
    for edge in hop_edges:
        cum_km.append(cum_km[-1] + edge.length_km)

    site_positions = [0]
    for i in range(1, len(node_path)):
        since_last = cum_km[i] - cum_km[site_positions[-1]]
        if since_last >= spacing_km:
            site_positions.append(i)
    last = len(node_path) - 1
    if site_positions[-1] != last:
        site_positions.append(last)

    sites = []
    for k, pos in enumerate(site_positions):
        node = graph.nodes[node_path[pos]]
        sites.append(ChargingSite(index=k, node_id=node.id, lat=node.lat, lon=node.lon,
                                  county=node.county, utility_id=node.utility_id,
                                  cum_km=cum_km[pos]))

    segments = []
    for k, (a, b) in enumerate(zip(site_positions, site_positions[1:])):
        dist = cum_km[b] - cum_km[a]
        time_h = sum(e.travel_time_h for e in hop_edges[a:b])
        segments.append(Segment(index=k, distance_km=dist,
                                speed_kph=dist / time_h, duration_h=time_h))
    return sites, segments


def _assemble_route(graph: RoadGraph, origin: str, destination: str, idx: int,
                    node_path: tuple[int, ...], spacing_km: float) -> Route:
    sites, segments = place_charging_sites(graph, node_path, spacing_km)
    highways: list[str] = []
    for u, v in zip(node_path, node_path[1:]):
        name = graph.edge_between(u, v).highway_name
        if not highways or highways[-1] != name:
            highways.append(name)
    total_km = sum(s.distance_km for s in segments)
    total_h = sum(s.duration_h for s in segments)
    return Route(
        route_id=f"{origin}-{destination}-{idx}",
        origin_city=origin,
        destination_city=destination,
        node_path=node_path,
        segments=tuple(segments),
        sites=tuple(sites),
        total_distance_km=total_km,
        total_duration_h=total_h,
        highway_names=tuple(highways),
    )
