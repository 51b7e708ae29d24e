"""Shared fixtures: the bundled synthetic region and small helper graphs."""

from __future__ import annotations

import json
from pathlib import Path

import pytest

from efleet.network import build_graph
from efleet.workflow import Region, load_region

DATA_DIR = Path(__file__).resolve().parent.parent / "data"


@pytest.fixture(scope="session")
def data_dir() -> Path:
    return DATA_DIR


@pytest.fixture(scope="session")
def region() -> Region:
    return load_region(DATA_DIR / "scenario.toml")


@pytest.fixture(scope="session")
def graph(region):
    return region.graph


def write_network(path: Path, nodes, edges) -> Path:
    """Write a network JSON file from plain node/edge dicts."""
    path.write_text(json.dumps({"nodes": nodes, "edges": edges}), encoding="utf-8")
    return path


def simple_node(nid, *, lat=30.0, lon=-97.0, county="alpha", utility="util_a",
                city=None):
    return {"id": nid, "lat": lat, "lon": lon, "county": county,
            "utility_id": utility, "city": city}


@pytest.fixture
def triangle(tmp_path):
    """A-B direct (1.0 h) vs A-C-B (0.5 h + 0.4 h): two loopless paths."""
    nodes = [
        simple_node(0, city="A"),
        simple_node(1, city="B", lon=-96.0),
        simple_node(2, city="C", lat=30.5, lon=-96.5),
    ]
    edges = [
        {"u": 0, "v": 1, "length_km": 100.0, "speed_kph": 100.0, "highway": "H1"},
        {"u": 0, "v": 2, "length_km": 50.0, "speed_kph": 100.0, "highway": "H2"},
        {"u": 2, "v": 1, "length_km": 40.0, "speed_kph": 100.0, "highway": "H3"},
    ]
    return build_graph(write_network(tmp_path / "triangle.json", nodes, edges))
