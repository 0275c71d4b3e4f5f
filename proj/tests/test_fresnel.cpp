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

#include <nfswipt/fresnel.hpp>

#include <catch_amalgamated.hpp>

#include <cmath>
#include <complex>
#include <numbers>

using namespace nfswipt;

namespace
{
    // Composite Simpson on integral_0^x exp(j pi t^2 / 2) dt
    std::complex<double> simpson_fresnel(double x, int panels)
    {
        const double h = x / panels;
        auto f = [](double t) {
            const double a = 0.5 * std::numbers::pi * t * t;
            return std::complex<double>(std::cos(a), std::sin(a));
        };
        std::complex<double> acc = f(0.0) + f(x);
        for (int i = 1; i < panels; ++i)
            acc += (i % 2 ? 4.0 : 2.0) * f(i * h);
        return acc * h / 3.0;
    }
}

TEST_CASE("Fresnel integrals match quadrature", "[fresnel]")
{
    for (double x : {0.01, 0.3, 0.9, 1.0, 1.7, 2.4, 2.5, 2.6, 3.3, 4.75, 6.0, 8.2, 10.0})
    {
        const auto ref = simpson_fresnel(x, 200000);
        const auto got = fresnel_cs(x);
        INFO("x = " << x);
        CHECK(std::abs(got.real() - ref.real()) < 1e-11);
        CHECK(std::abs(got.imag() - ref.imag()) < 1e-11);
    }
}

TEST_CASE("Fresnel integrals are odd and tend to 1/2", "[fresnel]")
{
    for (double x : {0.2, 1.1, 2.5, 3.9, 12.0})
    {
        CHECK(fresnel_c(-x) == -fresnel_c(x));
        CHECK(fresnel_s(-x) == -fresnel_s(x));
    }
    CHECK(fresnel_c(0.0) == 0.0);
    CHECK(fresnel_s(0.0) == 0.0);
    CHECK(fresnel_c(INFINITY) == 0.5);
    CHECK(fresnel_s(-INFINITY) == -0.5);
    CHECK(std::isnan(fresnel_c(NAN)));
}

TEST_CASE("Fresnel integrals follow the large-argument expansion", "[fresnel]")
{
    // C ~ 1/2 + sin(pi x^2/2)/(pi x), S ~ 1/2 - cos(pi x^2/2)/(pi x), next term O(x^-3)
    for (double x : {40.0, 75.5, 200.0})
    {
        const double a = 0.5 * std::numbers::pi * x * x;
        const double bound = 1.0 / (std::numbers::pi * std::numbers::pi * x * x * x);
        CHECK(std::abs(fresnel_c(x) - (0.5 + std::sin(a) / (std::numbers::pi * x))) < 1.5 * bound);
        CHECK(std::abs(fresnel_s(x) - (0.5 - std::cos(a) / (std::numbers::pi * x))) < 1.5 * bound);
    }
}

TEST_CASE("Fresnel integrals are continuous at the method switch", "[fresnel]")
{
    const double lo = std::nextafter(2.5, 0.0), hi = std::nextafter(2.5, 3.0);
    CHECK(std::abs(fresnel_c(lo) - fresnel_c(hi)) < 1e-13);
    CHECK(std::abs(fresnel_s(lo) - fresnel_s(hi)) < 1e-13);
}
