"""Road graph construction, k-fastest routes and charging-site placement."""

from __future__ import annotations

import itertools
import json
import random

import networkx as nx
import pytest

from efleet.errors import (
    GraphIntegrityError,
    NoRouteError,
    UnknownCityError,
    ValidationError,
)
from efleet.network import build_graph, k_fastest_routes, place_charging_sites

from conftest import simple_node, write_network


# ---------------------------------------------------------------------------
# build_graph
# ---------------------------------------------------------------------------

def test_two_node_edge_travel_time(tmp_path):
    nodes = [simple_node(0), simple_node(1)]
    edges = [{"u": 0, "v": 1, "length_km": 100.0, "speed_kph": 100.0, "highway": "X"}]
    g = build_graph(write_network(tmp_path / "net.json", nodes, edges))
    assert g.edges[0].travel_time_h == pytest.approx(1.0, rel=1e-12)


def test_dangling_edge_endpoint_is_integrity_error(tmp_path):
    nodes = [simple_node(0), simple_node(1)]
    edges = [{"u": 0, "v": 99, "length_km": 10.0, "speed_kph": 80.0, "highway": "X"}]
    with pytest.raises(GraphIntegrityError, match="99"):
        build_graph(write_network(tmp_path / "net.json", nodes, edges))


def test_bundled_fixture_counts(graph):
    assert len(graph.nodes) == 40
    assert len(graph.edges) == 58
    assert len(graph.city_index) == 8


def test_isolated_nodes_flagged(tmp_path):
    nodes = [simple_node(0), simple_node(1), simple_node(2)]
    edges = [{"u": 0, "v": 1, "length_km": 10.0, "speed_kph": 80.0, "highway": "X"}]
    g = build_graph(write_network(tmp_path / "net.json", nodes, edges))
    assert g.isolated_nodes == {2}


@pytest.mark.parametrize("field,value,fragment", [
    ("lat", 95.0, "lat"),
    ("lon", 200.0, "lon"),
    ("county", "", "county"),
    ("utility_id", "", "utility_id"),
])
def test_node_field_validation(tmp_path, field, value, fragment):
    node = simple_node(0)
    node[field] = value
    with pytest.raises(ValidationError, match=fragment):
        build_graph(write_network(tmp_path / "net.json", [node], []))


def test_bad_edge_values(tmp_path):
    nodes = [simple_node(0), simple_node(1)]
    edges = [{"u": 0, "v": 1, "length_km": -5.0, "speed_kph": 80.0, "highway": "X"}]
    with pytest.raises(ValidationError, match="length_km"):
        build_graph(write_network(tmp_path / "net.json", nodes, edges))


def test_duplicate_node_and_edge_rejected(tmp_path):
    nodes = [simple_node(0), simple_node(0)]
    with pytest.raises(ValidationError, match="duplicate node"):
        build_graph(write_network(tmp_path / "a.json", nodes, []))
    nodes = [simple_node(0), simple_node(1)]
    edges = [
        {"u": 0, "v": 1, "length_km": 5.0, "speed_kph": 80.0, "highway": "X"},
        {"u": 1, "v": 0, "length_km": 7.0, "speed_kph": 80.0, "highway": "Y"},
    ]
    with pytest.raises(ValidationError, match="duplicate edge"):
        build_graph(write_network(tmp_path / "b.json", nodes, edges))


def test_malformed_json_names_line(tmp_path):
    path = tmp_path / "broken.json"
    path.write_text('{"nodes": [\n  {"id": }\n]}', encoding="utf-8")
    with pytest.raises(ValidationError, match="line"):
        build_graph(path)


# ---------------------------------------------------------------------------
# k_fastest_routes
# ---------------------------------------------------------------------------

def test_triangle_two_routes(triangle):
    routes = k_fastest_routes(triangle, "A", "B", k=2)
    assert len(routes) == 2
    assert routes[0].node_path == (0, 2, 1)
    assert routes[0].total_duration_h == pytest.approx(0.9, rel=1e-12)
    assert routes[1].node_path == (0, 1)
    assert routes[1].total_duration_h == pytest.approx(1.0, rel=1e-12)
    assert routes[0].route_id == "A-B-0"


def test_self_pair_yields_degenerate_route(triangle):
    routes = k_fastest_routes(triangle, "A", "A", k=3)
    assert len(routes) == 1
    (route,) = routes
    assert route.total_distance_km == 0.0
    assert len(route.sites) == 1
    assert route.segments == ()


def test_unknown_city_and_unreachable(triangle, tmp_path):
    with pytest.raises(UnknownCityError):
        k_fastest_routes(triangle, "A", "Z")
    nodes = [simple_node(0, city="A"), simple_node(1, city="B")]
    g = build_graph(write_network(tmp_path / "net.json", nodes, []))
    with pytest.raises(NoRouteError):
        k_fastest_routes(g, "A", "B")


def _nx_graph(graph):
    g = nx.Graph()
    for edge in graph.edges:
        g.add_edge(edge.u, edge.v, time=edge.travel_time_h)
    return g


def _all_loopless_durations(graph, src, dst):
    g = _nx_graph(graph)
    durations = []
    for path in nx.all_simple_paths(g, src, dst):
        durations.append(sum(g[u][v]["time"] for u, v in zip(path, path[1:])))
    return sorted(durations)


def test_fixture_routes_match_exhaustive_enumeration(graph):
    src = graph.city_index["Dallas"]
    dst = graph.city_index["Houston"]
    routes = k_fastest_routes(graph, "Dallas", "Houston", k=3)
    expected = _all_loopless_durations(graph, src, dst)[:3]
    got = [r.total_duration_h for r in routes]
    assert got == pytest.approx(expected, rel=1e-9)


def test_random_small_graphs_first_route_is_optimal():
    rng = random.Random(11)
    for trial in range(25):
        n = rng.randint(4, 9)
        nodes = [simple_node(i, city=("SRC" if i == 0 else "DST" if i == n - 1 else None))
                 for i in range(n)]
        edges = []
        seen = set()
        for _ in range(rng.randint(n, 2 * n)):
            u, v = rng.sample(range(n), 2)
            pair = (min(u, v), max(u, v))
            if pair in seen:
                continue
            seen.add(pair)
            edges.append({"u": u, "v": v, "length_km": rng.choice([40.0, 60.0, 90.0]),
                          "speed_kph": rng.choice([60.0, 90.0]), "highway": "H"})
        import tempfile
        from pathlib import Path
        with tempfile.TemporaryDirectory() as tmp:
            g = build_graph(write_network(Path(tmp) / "net.json", nodes, edges))
            nxg = _nx_graph(g)
            if not nxg.has_node(0) or not nxg.has_node(n - 1) or \
                    not nx.has_path(nxg, 0, n - 1):
                continue
            expected = _all_loopless_durations(g, 0, n - 1)
            routes = k_fastest_routes(g, "SRC", "DST", k=4)
            got = [r.total_duration_h for r in routes]
            assert got == pytest.approx(expected[:len(got)], rel=1e-9), f"trial {trial}"
            assert len(got) == min(4, len(expected))


def test_routes_sorted_and_loopless(graph):
    for origin, dest in itertools.combinations(sorted(graph.city_index), 2):
        routes = k_fastest_routes(graph, origin, dest, k=3)
        durations = [r.total_duration_h for r in routes]
        assert durations == sorted(durations)
        for r in routes:
            assert len(set(r.node_path)) == len(r.node_path), "loop in path"


# ---------------------------------------------------------------------------
# place_charging_sites
# ---------------------------------------------------------------------------

def _chain_graph(tmp_path, hops_km, spacing_cities=("A", "B")):
    n = len(hops_km) + 1
    nodes = [simple_node(i, city=(spacing_cities[0] if i == 0 else
                                  spacing_cities[1] if i == n - 1 else None))
             for i in range(n)]
    edges = [{"u": i, "v": i + 1, "length_km": d, "speed_kph": 100.0, "highway": "H"}
             for i, d in enumerate(hops_km)]
    return build_graph(write_network(tmp_path / "chain.json", nodes, edges))


def test_sites_30_plus_30_spacing_50(tmp_path):
    g = _chain_graph(tmp_path, [30.0, 30.0])
    sites, segments = place_charging_sites(g, (0, 1, 2), spacing_km=50.0)
    assert [s.node_id for s in sites] == [0, 2]
    assert len(segments) == 1
    assert segments[0].distance_km == pytest.approx(60.0, rel=1e-12)


def test_short_path_two_sites(tmp_path):
    g = _chain_graph(tmp_path, [40.0])
    sites, segments = place_charging_sites(g, (0, 1), spacing_km=50.0)
    assert [s.node_id for s in sites] == [0, 1]
    assert len(segments) == 1


def test_uniform_20km_hops_spacing_50(tmp_path):
    g = _chain_graph(tmp_path, [20.0] * 13)  # 260 km total
    sites, segments = place_charging_sites(g, tuple(range(14)), spacing_km=50.0)
    assert [s.cum_km for s in sites] == [0.0, 60.0, 120.0, 180.0, 240.0, 260.0]
    assert len(segments) == len(sites) - 1
    for seg in segments:
        assert seg.distance_km == pytest.approx(
            seg.speed_kph * seg.duration_h, rel=1e-9)


def test_disconnected_path_rejected(tmp_path):
    g = _chain_graph(tmp_path, [30.0, 30.0])
    with pytest.raises(GraphIntegrityError):
        place_charging_sites(g, (0, 2), spacing_km=50.0)


def test_cum_km_strictly_increasing_and_zero_start(graph):
    routes = k_fastest_routes(graph, "El Paso", "Beaumont", k=3)
    for route in routes:
        cums = [s.cum_km for s in route.sites]
        assert cums[0] == 0.0
        assert all(b > a for a, b in zip(cums, cums[1:]))
        assert len(route.sites) == len(route.segments) + 1


# ---------------------------------------------------------------------------
# route invariants over the fixture
# ---------------------------------------------------------------------------

def test_segment_sums_match_path_length(graph):
    for origin, dest in itertools.combinations(sorted(graph.city_index), 2):
        for route in k_fastest_routes(graph, origin, dest, k=3):
            path_km = sum(graph.edge_between(u, v).length_km
                          for u, v in zip(route.node_path, route.node_path[1:]))
            assert route.total_distance_km == pytest.approx(path_km, rel=1e-9)
            seg_km = sum(s.distance_km for s in route.segments)
            assert seg_km == pytest.approx(route.total_distance_km, rel=1e-9)
            seg_h = sum(s.duration_h for s in route.segments)
            assert seg_h == pytest.approx(route.total_duration_h, rel=1e-9)


def test_segment_never_exceeds_spacing_plus_one_hop(graph):
    spacing = 50.0
    for origin, dest in [("Dallas", "Houston"), ("El Paso", "Beaumont"),
                         ("Laredo", "Beaumont")]:
        for route in k_fastest_routes(graph, origin, dest, k=3, spacing_km=spacing):
            max_hop = max(graph.edge_between(u, v).length_km
                          for u, v in zip(route.node_path, route.node_path[1:]))
            for seg in route.segments:
                assert seg.distance_km < spacing + max_hop + 1e-9


def test_route_generation_deterministic_bytes(graph, tmp_path):
    from efleet.dataio import save_routes

    routes_a = k_fastest_routes(graph, "Austin", "Corpus Christi", k=3)
    routes_b = k_fastest_routes(graph, "Austin", "Corpus Christi", k=3)
    pa, pb = tmp_path / "a.json", tmp_path / "b.json"
    save_routes(routes_a, pa)
    save_routes(routes_b, pb)
    assert pa.read_bytes() == pb.read_bytes()
