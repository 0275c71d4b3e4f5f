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

#include <nfswipt/array_channel.hpp>

#include <catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

using namespace nfswipt;
using Catch::Matchers::WithinRel;

TEST_CASE("Rayleigh distance and Fresnel bound of the reference array", "[array]")
{
    const auto g = ArrayGeometry::half_wavelength(256, 0.01);
    CHECK(g.aperture() == 1.28);
    // 2 D^2 / lambda with D = 1.28 m
    CHECK_THAT(rayleigh_distance(g), WithinRel(2.0 * 1.28 * 1.28 / 0.01, 1e-14));
    CHECK_THAT(fresnel_region_min(g), WithinRel(std::max(0.5 * std::sqrt(std::pow(1.28, 3) / 0.01), 1.2 * 1.28), 1e-14));
    CHECK(g.element_offset(0) == -127.5);
    CHECK(g.element_offset(255) == 127.5);
    CHECK_THROWS_AS(g.element_offset(256), DomainError);
    CHECK_THROWS_AS(ArrayGeometry(1, 0.005, 0.01), DomainError);
    CHECK_THROWS_AS(ArrayGeometry(8, -1.0, 0.01), DomainError);
}

TEST_CASE("Steering vectors have unit norm", "[array]")
{
    const auto g = ArrayGeometry::half_wavelength(256, 0.01);
    const double Z = rayleigh_distance(g);
    CHECK_THAT(near_steering(g, {0.3, 0.1 * Z}).norm(), WithinRel(1.0, 1e-12));
    CHECK_THAT(far_steering(g, -0.7).norm(), WithinRel(1.0, 1e-12));
}

TEST_CASE("Fresnel element distance approximates the exact distance", "[array]")
{
    const auto g = ArrayGeometry::half_wavelength(256, 0.01);
    const Placement p{0.2, 20.0};
    for (int n : {0, 64, 128, 255})
    {
        const double exact = element_distance_exact(g, p, n);
        const double approx = element_distance_fresnel(g, p, n);
        // third-order term: delta^3 d^3 theta (1 - theta^2) / (2 r^2)
        const double dn = g.element_offset(n) * g.element_spacing();
        CHECK(std::abs(exact - approx) < std::abs(dn * dn * dn) / (p.distance * p.distance) + 1e-12);
    }
}

TEST_CASE("Near-field steering phase follows the Fresnel distance", "[array]")
{
    const auto g = ArrayGeometry::half_wavelength(64, 0.01);
    const Placement p{-0.3, 3.0};
    const auto v = near_steering(g, p);
    for (int n = 0; n < 64; ++n)
    {
        const double phase = -2.0 * std::numbers::pi * (element_distance_fresnel(g, p, n) - p.distance) / g.wavelength();
        const std::complex<double> want = std::polar(1.0 / 8.0, phase);
        CHECK(std::abs(v[n] - want) < 1e-12);
    }
}

TEST_CASE("Far-field steering is the large-distance limit", "[array]")
{
    const auto g = ArrayGeometry::half_wavelength(128, 0.01);
    const double theta = 0.37;
    const auto far = far_steering(g, theta);
    const auto near = near_steering(g, {theta, 1e9});
    // common phase differs by the array-centre reference
    CHECK(std::abs(std::abs(far.dot(near)) - 1.0) < 1e-9);
}

TEST_CASE("Path gains", "[array]")
{
    const auto g = ArrayGeometry::half_wavelength(256, 0.01);
    const double beta = std::pow(0.01 / (4.0 * std::numbers::pi), 2);
    CHECK_THAT(channel_gain(0.01, 1.0), WithinRel(std::sqrt(beta), 1e-14));
    CHECK_THAT(array_power_gain(g, 10.0), WithinRel(256.0 * beta / 100.0, 1e-14));
    CHECK_THROWS_AS(channel_gain(0.01, 0.0), DomainError);
}

TEST_CASE("Placement domains", "[array]")
{
    const auto g = ArrayGeometry::half_wavelength(256, 0.01);
    const double Z = rayleigh_distance(g);
    CHECK_NOTHROW(check_placement(g, {0.0, 0.015 * Z}, FieldType::near));
    CHECK_THROWS_AS(check_placement(g, {0.0, 1.01 * Z}, FieldType::near), DomainError);
    CHECK_THROWS_AS(check_placement(g, {0.0, 0.9 * Z}, FieldType::far), DomainError);
    CHECK_THROWS_AS(check_placement(g, {1.2, 2.0 * Z}, FieldType::far), DomainError);
    CHECK_THROWS_AS(check_placement(g, {0.0, -1.0}, FieldType::near), DomainError);
    CHECK_FALSE(in_fresnel_region(g, {0.0, 0.015 * Z}));
    CHECK(in_fresnel_region(g, {0.0, 0.03 * Z}));
    CHECK_THAT(spatial_angle_from_aod(g, std::numbers::pi / 3.0), WithinRel(0.5, 1e-14));
}
