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

#include <nfswipt/swipt_model.hpp>

#include <catch_amalgamated.hpp>

#include <random>

using namespace nfswipt;

namespace
{
    struct Draw
    {
        Schedule s;
        BeamPowers p;
    };

    Draw random_draw(std::mt19937_64 &rng, int K, int M, double p0)
    {
        std::uniform_real_distribution<double> u(0.0, 1.0);
        Draw d{{std::vector<bool>(K), std::vector<bool>(M)}, {std::vector<double>(K), std::vector<double>(M)}};
        double total = 0.0;
        for (int k = 0; k < K; ++k)
            total += d.p.eh[k] = u(rng);
        for (int m = 0; m < M; ++m)
            total += d.p.id[m] = u(rng);
        for (int k = 0; k < K; ++k)
        {
            d.p.eh[k] *= p0 / total;
            d.s.eh[k] = u(rng) < 0.7;
        }
        for (int m = 0; m < M; ++m)
        {
            d.p.id[m] *= p0 / total;
            d.s.id[m] = u(rng) < 0.7;
        }
        return d;
    }
}

TEST_CASE("Compact algebra agrees with the receiver-by-receiver sums", "[model]")
{
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 30; ++trial)
    {
        const int K = 1 + trial % 4, M = 1 + (trial / 4) % 3;
        const Scenario sc = testing::random_scenario(rng, K, M, 0.0);
        const SwiptModel model(sc);
        const CompactProblem c = model.compact();
        const Draw d = random_draw(rng, K, M, sc.power_budget);
        const PowerVector pv = eliminate_binaries(d.s, d.p);

        CHECK(testing::rel_diff(c.objective(pv.y), model.harvested_sum_power(pv)) < 1e-12);
        CHECK(std::abs(c.sum_rate(pv.y) - model.sum_rate(pv)) < 1e-10);
        const auto sinr = model.sinr_id(d.s, d.p);
        for (int m = 0; m < M; ++m)
        {
            if (d.s.id[m])
                CHECK(testing::rel_diff(c.sinr(m, pv.y), sinr[m]) < 1e-12);
            else
                CHECK(sinr[m] == 0.0);
        }
    }
}

TEST_CASE("ID self-terms do not harvest", "[model]")
{
    const Scenario sc = testing::reference_scenario();
    const CompactProblem c = build_compact(sc);
    for (int m = 0; m < c.n_id(); ++m)
        CHECK(c.lambda_masked(c.n_eh + m, c.n_eh + m) == 0.0);
    // ID-beam power still reaches EH receivers through correlation
    Eigen::VectorXd y = Eigen::VectorXd::Zero(5);
    y[3] = 1.0;
    CHECK(c.objective(y) > 0.0);
}

TEST_CASE("Binary elimination and schedule recovery round-trip", "[model]")
{
    Schedule s{{true, false, true}, {false, true}};
    BeamPowers p{{0.2, 0.3, 0.1}, {0.25, 0.15}};
    const PowerVector pv = eliminate_binaries(s, p);
    CHECK(pv.y[1] == 0.0);
    CHECK(pv.y[3] == 0.0);
    CHECK(pv.total() == Catch::Approx(0.45));
    const auto back = recover_schedule(pv, 3, 1e-6);
    CHECK(back.schedule == s);
    CHECK(back.powers.eh == std::vector<double>{0.2, 0.0, 0.1});
    CHECK(back.powers.id == std::vector<double>{0.0, 0.15});
    CHECK(back.residual_power == 0.0);

    PowerVector tiny{pv.y};
    tiny.y[1] = 5e-7;
    const auto cleaned = recover_schedule(tiny, 3, 1e-6);
    CHECK_FALSE(cleaned.schedule.eh[1]);
    CHECK(cleaned.residual_power == 5e-7);
}

TEST_CASE("Scenario validation", "[model]")
{
    Scenario s = testing::reference_scenario();
    CHECK_NOTHROW(s.validate());
    s.power_budget = 0.0;
    CHECK_THROWS_AS(s.validate(), DomainError);
    s = testing::reference_scenario();
    s.id[0].placement.distance = 0.5 * rayleigh_distance(s.geometry);
    CHECK_THROWS_AS(s.validate(), DomainError);
    s = testing::reference_scenario();
    s.eh.clear();
    CHECK_THROWS_AS(s.validate(), DomainError);
}

TEST_CASE("Reference channel gains", "[model]")
{
    const SwiptModel m(testing::reference_scenario());
    const double beta = std::pow(0.01 / (4.0 * std::numbers::pi), 2);
    const double Z = 327.68;
    CHECK(testing::rel_diff(m.eh_gain(0), 256.0 * beta / std::pow(0.015 * Z, 2)) < 1e-12);
    CHECK(testing::rel_diff(m.id_gain(1), 256.0 * beta / std::pow(1.2 * Z, 2)) < 1e-12);
}
