"""Table loaders, route pricing and route JSON round-trips."""

from __future__ import annotations

import itertools

import pytest

from efleet.dataio import (
    load_carbon_intensity,
    load_config,
    load_diesel_prices,
    load_freight,
    load_routes,
    load_tables,
    load_tariffs,
    price_route,
    save_routes,
)
from efleet.errors import (
    MissingDieselPriceError,
    MissingTariffError,
    ValidationError,
)
from efleet.network import k_fastest_routes


def write(tmp_path, name, text):
    path = tmp_path / name
    path.write_text(text, encoding="utf-8")
    return path


# ---------------------------------------------------------------------------
# CSV loaders
# ---------------------------------------------------------------------------

def test_tariffs_duplicate_key_named(tmp_path):
    path = write(tmp_path, "t.csv",
                 "utility_id,energy_rate_usd_per_mwh\nul,90\nul,80\n")
    with pytest.raises(ValidationError, match="ul"):
        load_tariffs(path)


def test_tariffs_bad_header_and_values(tmp_path):
    with pytest.raises(ValidationError, match="header"):
        load_tariffs(write(tmp_path, "a.csv", "utility,rate\nx,1\n"))
    with pytest.raises(ValidationError, match="line 2"):
        load_tariffs(write(tmp_path, "b.csv",
                           "utility_id,energy_rate_usd_per_mwh\nx,abc\n"))
    with pytest.raises(ValidationError, match="negative"):
        load_tariffs(write(tmp_path, "c.csv",
                           "utility_id,energy_rate_usd_per_mwh\nx,-3\n"))
    with pytest.raises(ValidationError, match="not found"):
        load_tariffs(tmp_path / "missing.csv")


def test_empty_freight_is_valid(tmp_path):
    path = write(tmp_path, "f.csv", "origin,destination,tons_per_year\n")
    assert load_freight(path) == ()


def test_freight_validation(tmp_path):
    with pytest.raises(ValidationError, match="negative"):
        load_freight(write(tmp_path, "a.csv",
                           "origin,destination,tons_per_year\nA,B,-5\n"))
    with pytest.raises(ValidationError, match="origin equals destination"):
        load_freight(write(tmp_path, "b.csv",
                           "origin,destination,tons_per_year\nA,A,5\n"))
    with pytest.raises(ValidationError, match="duplicate O-D"):
        load_freight(write(tmp_path, "c.csv",
                           "origin,destination,tons_per_year\nA,B,5\nA,B,6\n"))
    # zero-tons self pair is legal
    rows = load_freight(write(tmp_path, "d.csv",
                              "origin,destination,tons_per_year\nA,A,0\n"))
    assert rows[0].tons_per_year == 0.0


def test_diesel_wildcard_fallback(tmp_path):
    table = load_diesel_prices(write(
        tmp_path, "d.csv", "county,usd_per_gallon\n*,4.0\nharris,3.5\n"))
    assert table.price_for("harris") == 3.5
    assert table.price_for("anywhere") == 4.0
    no_wild = load_diesel_prices(write(
        tmp_path, "e.csv", "county,usd_per_gallon\nharris,3.5\n"))
    with pytest.raises(MissingDieselPriceError):
        no_wild.price_for("elsewhere")


def test_carbon_intensity_loader(tmp_path):
    factors = load_carbon_intensity(write(
        tmp_path, "c.csv", "region_id,gco2_per_kwh\nr1,400\nr2,500\n"))
    assert factors.grid_gco2_per_kwh == {"r1": 400.0, "r2": 500.0}
    with pytest.raises(ValidationError, match="duplicate"):
        load_carbon_intensity(write(
            tmp_path, "d.csv", "region_id,gco2_per_kwh\nr1,400\nr1,500\n"))


def test_bundled_fixture_table_counts(region):
    tables = region.tables
    assert len(tables.tariffs.rows) == 3
    cities = {d.origin for d in tables.demands} | {d.destination for d in tables.demands}
    assert len(cities) == 8
    counties = {n.county for n in region.graph.nodes.values()}
    assert len(counties) == 12


def test_load_tables_from_config(region):
    tables = load_tables(region.config)
    assert tables.spec == region.tables.spec
    assert len(tables.demands) == 28


# ---------------------------------------------------------------------------
# config loading
# ---------------------------------------------------------------------------

def test_config_missing_section(tmp_path):
    with pytest.raises(ValidationError, match="scenario"):
        load_config(write(tmp_path, "c.toml", "[paths]\nnetwork='x'\n"))


def test_config_unknown_vehicle_key(tmp_path):
    text = ("[paths]\nnetwork='n'\ntariffs='t'\ndiesel_prices='d'\n"
            "carbon_intensity='c'\nfreight='f'\n"
            "[vehicle]\nwarp_drive=1\n[scenario]\ncities=['A','B']\n")
    with pytest.raises(ValidationError, match="warp_drive"):
        load_config(write(tmp_path, "c.toml", text))


def test_config_relative_paths_resolve(region, data_dir):
    assert region.config.paths["network"] == data_dir / "network.json"
    assert region.config.cities == ("Austin", "Beaumont", "Corpus Christi", "Dallas",
                                    "El Paso", "Houston", "Laredo", "San Antonio")


def test_config_bad_scenario_values(tmp_path):
    base = ("[paths]\nnetwork='n'\ntariffs='t'\ndiesel_prices='d'\n"
            "carbon_intensity='c'\nfreight='f'\n[scenario]\n")
    with pytest.raises(ValidationError, match="bev_fraction"):
        load_config(write(tmp_path, "a.toml", base + "bev_fraction=1.5\n"))
    with pytest.raises(ValidationError, match="days"):
        load_config(write(tmp_path, "b.toml", base + "days=0\n"))


# ---------------------------------------------------------------------------
# price_route
# ---------------------------------------------------------------------------

def test_price_route_fills_rates(region):
    route = k_fastest_routes(region.graph, "Dallas", "Houston", k=1)[0]
    priced = price_route(route, region.tables.tariffs)
    for site in priced.sites:
        assert site.price_usd_per_mwh == region.tables.tariffs.rows[site.utility_id]


def test_price_route_crossing_territories(region):
    route = k_fastest_routes(region.graph, "Austin", "Houston", k=1)[0]
    priced = price_route(route, region.tables.tariffs)
    utilities = {s.utility_id for s in priced.sites}
    assert len(utilities) >= 2
    rates = {s.price_usd_per_mwh for s in priced.sites}
    assert rates == {region.tables.tariffs.rows[u] for u in utilities}


def test_price_route_unknown_utility_names_site(region):
    from efleet.dataio import TariffTable
    route = k_fastest_routes(region.graph, "Dallas", "Houston", k=1)[0]
    partial = TariffTable(rows={"oncor": 95.0})
    with pytest.raises(MissingTariffError, match="site"):
        price_route(route, partial)


def test_price_route_idempotent(region):
    route = k_fastest_routes(region.graph, "Dallas", "Houston", k=1)[0]
    once = price_route(route, region.tables.tariffs)
    twice = price_route(once, region.tables.tariffs)
    assert once == twice


# ---------------------------------------------------------------------------
# route JSON persistence
# ---------------------------------------------------------------------------

def test_empty_route_list_round_trip(tmp_path):
    path = tmp_path / "routes.json"
    save_routes([], path)
    assert path.read_text(encoding="utf-8").strip() == "[]"
    assert load_routes(path) == []


def test_single_route_byte_stable(region, tmp_path):
    routes = k_fastest_routes(region.graph, "Dallas", "Houston", k=1)
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    save_routes(routes, a)
    save_routes(routes, b)
    assert a.read_bytes() == b.read_bytes()


def test_full_fixture_round_trip(region, tmp_path):
    all_routes = []
    for origin, dest in itertools.combinations(sorted(region.graph.city_index), 2):
        all_routes.extend(k_fastest_routes(region.graph, origin, dest, k=3))
    path = tmp_path / "all.json"
    save_routes(all_routes, path)
    again = load_routes(path)
    assert again == all_routes


def test_malformed_route_json(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text("[{", encoding="utf-8")
    with pytest.raises(ValidationError, match="line"):
        load_routes(path)
    path.write_text('{"not": "a list"}', encoding="utf-8")
    with pytest.raises(ValidationError, match="array"):
        load_routes(path)
    path.write_text('[{"route_id": "x"}]', encoding="utf-8")
    with pytest.raises(ValidationError, match="missing route field"):
        load_routes(path)
