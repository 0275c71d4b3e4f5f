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

// Shared fixtures for the unit tests and the acceptance binary

#ifndef NFSWIPT_TESTS_SUPPORT_HPP
#define NFSWIPT_TESTS_SUPPORT_HPP

#include <nfswipt/swipt_model.hpp>
#include <nfswipt/units.hpp>

#include <random>

namespace nfswipt::testing
{
    // N = 256, lambda = 1 cm, half-wavelength spacing, P0 = 30 dBm, sigma^2 = -80 dBm, zeta = 0.5
    inline Scenario reference_scenario(double rate = 5.0)
    {
        const ArrayGeometry g = ArrayGeometry::half_wavelength(256, 0.01);
        const double Z = rayleigh_distance(g);
        const double noise = dbm_to_watt(-80.0);
        Scenario s{g, {}, {}};
        s.eh = {{{0.0, 0.015 * Z}, 1.0}, {{0.1, 0.02 * Z}, 1.0}, {{-0.05, 0.03 * Z}, 1.0}};
        s.id = {{{0.0, 1.05 * Z}, noise}, {{0.05, 1.2 * Z}, noise}};
        s.power_budget = dbm_to_watt(30.0);
        s.harvest_efficiency = 0.5;
        s.rate_requirement = rate;
        return s;
    }

    // K EH receivers in [0.015 Z, 0.05 Z], M ID receivers in [1.05 Z, 1.3 Z], angles in [-0.5, 0.5]
    inline Scenario random_scenario(std::mt19937_64 &rng, int K, int M, double rate)
    {
        std::uniform_real_distribution<double> u(0.0, 1.0);
        Scenario s = reference_scenario(rate);
        const double Z = rayleigh_distance(s.geometry);
        s.eh.clear();
        s.id.clear();
        for (int k = 0; k < K; ++k)
            s.eh.push_back({{u(rng) - 0.5, (0.015 + 0.035 * u(rng)) * Z}, 0.5 + u(rng)});
        for (int m = 0; m < M; ++m)
            s.id.push_back({{u(rng) - 0.5, (1.05 + 0.25 * u(rng)) * Z}, dbm_to_watt(-80.0)});
        return s;
    }

    inline double rel_diff(double a, double b) { return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-300}); }
} // namespace nfswipt::testing

#endif
