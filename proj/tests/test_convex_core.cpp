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

#include <nfswipt/convex_core.hpp>
#include <nfswipt/sca_optimizer.hpp>

#include <catch_amalgamated.hpp>

#include <cmath>
#include <random>

using namespace nfswipt;

namespace
{
    // Subproblem at the initial point of a random compact problem with R a fraction of the start rate
    SubproblemSpec random_spec(std::mt19937_64 &rng, int K, int M)
    {
        std::uniform_real_distribution<double> u(0.0, 1.0);
        const Scenario sc = testing::random_scenario(rng, K, M, 0.0);
        CompactProblem c = build_compact(sc);
        Schedule all{std::vector<bool>(K, true), std::vector<bool>(M, true)};
        auto rp = restrict_problem(c, all);
        auto ip = initialize(rp.problem);
        REQUIRE(ip);
        rp.problem.rate_requirement = (0.1 + 0.85 * u(rng)) * rp.problem.sum_rate(ip->y);
        return {rp.problem, ip->slacks.anchor_s, ip->slacks.anchor_i, ip->y, ip->slacks.s, ip->slacks.i};
    }

    // Toy M = 1 problem in normalised units: y = (y_EH, y_ID), P0 = 1
    SubproblemSpec toy_spec(double R)
    {
        PowerProblem p;
        p.objective = Eigen::Vector2d(1.0, 0.2);
        p.power_budget = 1.0;
        p.links = {{1, 10.0, Eigen::Vector2d(5.0, 0.0), 1.0}};
        p.rate_requirement = R;
        const Eigen::Vector2d y(0.5, 0.5);
        Eigen::VectorXd s(1), i(1);
        s << 1.0 / p.received(0, y);
        i << p.interference(0, y);
        return {p, s, i, y, s, i};
    }

    // Best objective on a grid of the reduced constraint sum_l R_low(1/(g y_sig), I(y)) >= R
    double grid_oracle(const SubproblemSpec &spec, int steps)
    {
        const auto &p = spec.problem;
        const auto b = tangent_rate_bound(spec.anchor_s[0], spec.anchor_i[0]);
        double best = -INFINITY;
        Eigen::Vector2d y;
        for (int a = 0; a <= steps; ++a)
            for (int c = 0; a + c <= steps; ++c)
            {
                y << a * p.power_budget / steps, c * p.power_budget / steps;
                if (p.received(0, y) <= 0.0)
                    continue;
                if (b(1.0 / p.received(0, y), p.interference(0, y)) >= p.rate_requirement)
                    best = std::max(best, p.objective.dot(y));
            }
        return best;
    }
}

TEST_CASE("Without a rate constraint the subproblem is a simplex LP", "[convex]")
{
    PowerProblem p;
    p.objective = Eigen::Vector3d(3.0, 1.0, 2.0);
    p.power_budget = 2.0;
    p.rate_requirement = -INFINITY;
    const SubproblemSpec spec{p, {}, {}, Eigen::Vector3d::Constant(0.5), {}, {}};
    const auto a = solve_subproblem(spec);
    const auto b = eliminate_slacks_check(spec);
    CHECK(testing::rel_diff(a.objective, 6.0) < 1e-7);
    CHECK(testing::rel_diff(b.objective, 6.0) < 1e-7);
    CHECK(a.y[0] == Catch::Approx(2.0).epsilon(1e-7));
}

TEST_CASE("Toy subproblem matches a dense grid", "[convex]")
{
    for (double R : {0.5, 1.0, 1.2})
    {
        const auto spec = toy_spec(R);
        const auto rep = solve_subproblem(spec);
        const double oracle = grid_oracle(spec, 10000);
        INFO("R = " << R);
        CHECK(rep.objective >= oracle * (1 - 1e-3));
        CHECK(rep.objective <= oracle * (1 + 1e-3));
    }
}

TEST_CASE("SOC and slack-elimination paths agree", "[convex]")
{
    std::mt19937_64 rng(42);
    for (int t = 0; t < 25; ++t)
    {
        const auto spec = random_spec(rng, 1 + t % 4, 1 + (t / 4) % 4);
        const auto a = solve_subproblem(spec);
        const auto b = eliminate_slacks_check(spec);
        INFO("trial " << t);
        CHECK(testing::rel_diff(a.objective, b.objective) < 1e-6);
        CHECK(a.primal_residual < 1e-8);
        CHECK(a.dual_residual < 1e-8);
        CHECK(a.duality_gap < 1e-8);
        CHECK(a.merit_monotone);
    }
}

TEST_CASE("Returned points are feasible", "[convex]")
{
    std::mt19937_64 rng(8);
    for (int t = 0; t < 10; ++t)
    {
        const auto spec = random_spec(rng, 2, 2);
        const auto r = solve_subproblem(spec);
        const auto &p = spec.problem;
        CHECK(r.y.sum() <= p.power_budget * (1 + 1e-9));
        CHECK(r.y.minCoeff() >= -1e-12);
        for (std::size_t l = 0; l < p.links.size(); ++l)
        {
            CHECK(r.s[l] * p.received(l, r.y) >= 1.0 - 1e-8);
            CHECK(r.i[l] >= p.interference(l, r.y) * (1 - 1e-9));
        }
        CHECK(r.rate_slack >= -1e-8);
    }
}

TEST_CASE("Objective is insensitive to the solver tolerance", "[convex]")
{
    std::mt19937_64 rng(9);
    for (int t = 0; t < 10; ++t)
    {
        const auto spec = random_spec(rng, 3, 2);
        CHECK(testing::rel_diff(solve_subproblem(spec, 1e-6).objective, solve_subproblem(spec, 1e-10).objective) <
              1e-5);
    }
}

TEST_CASE("Scaling the objective scales the optimum", "[convex]")
{
    std::mt19937_64 rng(10);
    auto spec = random_spec(rng, 2, 2);
    const auto a = solve_subproblem(spec);
    spec.problem.objective *= 37.0;
    const auto b = solve_subproblem(spec);
    CHECK(testing::rel_diff(b.objective, 37.0 * a.objective) < 1e-6);
    CHECK((b.y - a.y).norm() <= 1e-5 * spec.problem.power_budget);
}

TEST_CASE("Both paths see the same active rate constraint", "[convex]")
{
    std::mt19937_64 rng(12);
    for (int t = 0; t < 5; ++t)
    {
        const auto spec = random_spec(rng, 2, 1);
        const auto a = solve_subproblem(spec);
        const auto b = eliminate_slacks_check(spec);
        CHECK(a.rate_active(1e-5) == b.rate_active(1e-5));
        CHECK(a.rate_active(1e-5));
    }
}

TEST_CASE("Inconsistent specs are rejected", "[convex]")
{
    auto spec = toy_spec(1.0);
    spec.anchor_s.resize(0);
    CHECK_THROWS(solve_subproblem(spec));
}
