// SPDX-License-Identifier: Apache-2.0
//
// nfswipt: beam scheduling and power allocation for mixed near/far-field SWIPT
// Copyright (C) 2026 The nfswipt authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include "support.hpp"

#include <nfswipt/config.hpp>
#include <nfswipt/experiments.hpp>

#include <catch_amalgamated.hpp>

#include <sstream>
#include <string>

using namespace nfswipt;

namespace
{
    const std::string default_config = std::string(NFSWIPT_SOURCE_DIR) + "/configs/default.json";

    nlohmann::json minimal()
    {
        return nlohmann::json::parse(R"({
          "scenario": {
            "array": {"antennas": 256, "wavelength_m": 0.01},
            "power_budget_dbm": 30, "noise_power_dbm": -80, "harvest_efficiency": 0.5,
            "eh": [{"theta": 0, "distance": "0.015Z"}],
            "id": [{"theta": 0, "distance": "1.05Z"}]
          }
        })");
    }

    std::string field_of(const nlohmann::json &j)
    {
        try
        {
            parse_config(j.dump());
        }
        catch (const ValidationError &e)
        {
            return e.field();
        }
        return "";
    }

    std::vector<std::string> split(const std::string &line)
    {
        std::vector<std::string> out;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ','))
            out.push_back(cell);
        return out;
    }
}

TEST_CASE("Shipped default config resolves the reference deployment", "[config]")
{
    const auto cfg = load_config(default_config);
    const Scenario &s = cfg.scenario;
    CHECK(s.power_budget == 1.0);
    CHECK(testing::rel_diff(s.id[0].noise_power, 1e-11) < 1e-14);
    CHECK(s.harvest_efficiency == 0.5);
    CHECK(s.geometry.n_antennas() == 256);
    CHECK(s.geometry.wavelength() == 0.01);
    CHECK(s.geometry.element_spacing() == 0.005);
    REQUIRE(cfg.frequency_hz);
    CHECK(*cfg.frequency_hz == 3e10);
    REQUIRE(s.n_eh() == 3);
    REQUIRE(s.n_id() == 2);
    // 0.015 * 327.68 m
    CHECK(testing::rel_diff(s.eh[0].placement.distance, 4.9152) < 1e-14);
    CHECK(s.eh[1].placement.spatial_angle == 0.1);
    CHECK(s.eh[2].placement.spatial_angle == -0.05);
    CHECK(testing::rel_diff(s.id[1].placement.distance, 1.2 * 327.68) < 1e-14);
    CHECK(cfg.sweep.rates.front() == 0.0);
    CHECK(cfg.output.precision == 12);
}

TEST_CASE("Missing and invalid fields name their path", "[config]")
{
    auto j = minimal();
    CHECK(field_of(j).empty());

    j["scenario"].erase("power_budget_dbm");
    CHECK(field_of(j) == "scenario.power_budget_dbm");

    j = minimal();
    j["scenario"]["eh"][0]["distance"] = "0.015Y";
    CHECK(field_of(j) == "scenario.eh[0].distance");

    j = minimal();
    j["scenario"]["id"][0]["distance"] = "0.5Z";
    CHECK(field_of(j) == "scenario.id[0].distance");

    j = minimal();
    j["scenario"]["harvest_efficiency"] = 1.5;
    CHECK(field_of(j) == "scenario.harvest_efficiency");

    j = minimal();
    j["sweep"] = {{"rates", {0, 4, 2}}};
    CHECK(field_of(j) == "sweep.rates");

    j = minimal();
    j["sweep"] = {{"trials", 0}};
    CHECK(field_of(j) == "sweep.trials");

    j = minimal();
    j["scenario"]["array"].erase("wavelength_m");
    CHECK(field_of(j) == "scenario.array.wavelength_m");

    CHECK_THROWS_AS(parse_config("{ not json"), ParseError);
    CHECK_THROWS_AS(load_config("/nonexistent/config.json"), ParseError);
}

TEST_CASE("Unit handling", "[config]")
{
    for (double dbm : {-120.0, -80.0, 0.0, 17.3, 30.0, 46.0})
        CHECK(testing::rel_diff(watt_to_dbm(dbm_to_watt(dbm)), dbm) < 1e-12);
    for (double w : {1e-15, 3.2e-6, 1.0, 40.0})
        CHECK(testing::rel_diff(dbm_to_watt(watt_to_dbm(w)), w) < 1e-12);

    auto j = minimal();
    j["scenario"]["array"].erase("wavelength_m");
    j["scenario"]["array"]["frequency_hz"] = 3e10;
    const auto cfg = parse_config(j.dump());
    CHECK(testing::rel_diff(cfg.scenario.geometry.wavelength(), 299792458.0 / 3e10) < 1e-15);

    j = minimal();
    j["scenario"]["eh"][0].erase("theta");
    j["scenario"]["eh"][0]["aod_rad"] = 1.2;
    j["scenario"]["eh"][0]["distance"] = 12.5;
    j["scenario"].erase("power_budget_dbm");
    j["scenario"]["power_budget_w"] = 2.0;
    const auto c2 = parse_config(j.dump());
    CHECK(testing::rel_diff(c2.scenario.eh[0].placement.spatial_angle, std::cos(1.2)) < 1e-14);
    CHECK(c2.scenario.eh[0].placement.distance == 12.5);
    CHECK(c2.scenario.power_budget == 2.0);
}

TEST_CASE("Random ID receivers follow the sweep settings", "[experiments]")
{
    auto cfg = load_config(default_config);
    const auto &sw = cfg.sweep;
    const auto a = random_id_receivers(sw, 6, 3);
    const auto b = random_id_receivers(sw, 2, 3);
    CHECK(a[0].placement.spatial_angle == b[0].placement.spatial_angle);
    CHECK(a[1].placement.distance == b[1].placement.distance);
    for (const auto &r : a)
    {
        CHECK(std::abs(r.placement.spatial_angle) <= std::sin(sw.angle_limit));
        CHECK(r.placement.distance >= sw.id_distance_lo);
        CHECK(r.placement.distance <= sw.id_distance_hi);
    }
    CHECK(random_id_receivers(sw, 1, 4)[0].placement.distance != a[0].placement.distance);

    cfg.sweep.angle_mode = AngleMode::physical;
    for (const auto &r : random_id_receivers(cfg.sweep, 50, 0))
        CHECK(std::abs(r.placement.spatial_angle) <= std::sin(cfg.sweep.angle_limit));
}

TEST_CASE("Scheme CSV round-trips through the model", "[experiments]")
{
    auto cfg = load_config(default_config);
    cfg.sweep.rates = {0.0, 3.0, 6.0};
    const auto table = sweep_rate(cfg, {Scheme::proposed, Scheme::gs_opa, Scheme::as_epa});
    std::ostringstream out;
    write_scheme_csv(out, table, 12);
    std::istringstream in(out.str());
    std::string line;
    std::getline(in, line);
    const auto header = split(line);
    REQUIRE(header.size() == 13);
    CHECK(header[6] == "P_EH1");
    const SwiptModel model(cfg.scenario);
    int rows = 0;
    while (std::getline(in, line))
    {
        const auto cells = split(line);
        PowerVector pv{Eigen::VectorXd(5)};
        for (int i = 0; i < 5; ++i)
            pv.y[i] = std::stod(cells[6 + i]);
        const double q = std::stod(cells[2]), rate = std::stod(cells[4]);
        CHECK(testing::rel_diff(model.harvested_sum_power(pv), q) < 1e-9);
        CHECK(std::abs(model.sum_rate(pv) - rate) < 1e-9 * std::max(1.0, rate));
        ++rows;
    }
    CHECK(rows == 9);
    CHECK(table.errors() == 0);

    // R = 0: everything on EH beams
    const auto &r0 = table.rows[0].result;
    CHECK(r0.y.y.head(3).sum() >= cfg.scenario.power_budget * (1 - 1e-6));
}

TEST_CASE("Correlation map sanity", "[experiments]")
{
    auto cfg = load_config(default_config);
    const double Z = rayleigh_distance(cfg.scenario.geometry);
    // single point at the reference itself
    cfg.correlation_map.theta_lo = cfg.correlation_map.theta_hi = 0.0;
    cfg.correlation_map.r_lo = cfg.correlation_map.r_hi = cfg.correlation_map.reference.distance;
    cfg.correlation_map.n_theta = cfg.correlation_map.n_r = 1;
    auto rows = correlation_map(cfg);
    REQUIRE(rows.size() == 1);
    CHECK(std::abs(rows[0].eta_exact - 1.0) < 1e-12);

    // far-field reference, far-field row on the DFT grid
    cfg.correlation_map.reference = {0.0, 1.5 * Z};
    cfg.correlation_map.theta_lo = cfg.correlation_map.theta_hi = 2.0 / 256;
    cfg.correlation_map.r_lo = cfg.correlation_map.r_hi = 2.0 * Z;
    rows = correlation_map(cfg);
    CHECK(rows[0].eta_exact < 1e-12);

    cfg = load_config(default_config);
    rows = correlation_map(cfg);
    double mean = 0.0;
    for (const auto &r : rows)
        mean += r.abs_error() / rows.size();
    CHECK(rows.size() == 2500);
    CHECK(mean < 0.05);
}

TEST_CASE("ID-count sweep is reproducible in process", "[experiments]")
{
    auto cfg = load_config(default_config);
    cfg.sweep.trials = 2;
    cfg.sweep.id_counts = {2, 3};
    const std::vector<Scheme> schemes{Scheme::proposed, Scheme::os_epa, Scheme::as_epa};
    std::ostringstream a, b;
    write_id_count_csv(a, sweep_id_count(cfg, schemes), 12);
    write_id_count_csv(b, sweep_id_count(cfg, schemes), 12);
    CHECK(a.str() == b.str());
    cfg.sweep.seed += 1;
    std::ostringstream c;
    write_id_count_csv(c, sweep_id_count(cfg, schemes), 12);
    CHECK(c.str() != a.str());
}

TEST_CASE("CSV cells use the configured precision", "[experiments]")
{
    std::ostringstream out;
    CsvWriter w(out, 12);
    w.cell(1.0 / 3.0).cell(-INFINITY).cell("a,b").cell(7);
    w.end();
    CHECK(out.str() == "0.333333333333,-inf,\"a,b\",7\n");
}
