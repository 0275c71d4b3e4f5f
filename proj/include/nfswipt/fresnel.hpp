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

#ifndef NFSWIPT_FRESNEL_HPP
#define NFSWIPT_FRESNEL_HPP

#include <cmath>
#include <complex>
#include <limits>
#include <numbers>

namespace nfswipt
{
    // C(x) + j S(x) with C(x) = int_0^x cos(pi t^2 / 2) dt, S(x) = int_0^x sin(pi t^2 / 2) dt.
    // |x| <= 2.5 uses the power series. Beyond that the auxiliary functions are
    // evaluated through the erfc continued fraction (modified Lentz), because the
    // divergent asymptotic series alone stalls around 1e-4 near the switch point.
    // Both branches reach close to machine precision.
    namespace detail
    {
        inline constexpr double fresnel_switch = 2.5;

        // pi x^2 / 2 reduced modulo 2 pi, keeping the integer part of x out of the rounding
        inline double half_pi_x2_reduced(double x)
        {
            const double a = std::floor(x);
            const double b = x - a;
            double t = std::fmod(a * a, 4.0) + std::fmod(2.0 * a * b, 4.0) + b * b;
            t = std::fmod(t, 4.0);
            return 0.5 * std::numbers::pi * t;
        }

        inline std::complex<double> fresnel_series(double x)
        {
            const double z = 0.5 * std::numbers::pi * x * x;
            double c = 0.0, s = 0.0;
            double power = x; // x * z^k / k!
            for (int k = 0; k < 200; ++k)
            {
                const double term = power / (2.0 * k + 1.0);
                const int sign = ((k / 2) % 2 == 0) ? 1 : -1;
                if (k % 2 == 0)
                    c += sign * term;
                else
                    s += sign * term;
                if (std::abs(term) < 1e-18 * std::max(1.0, std::abs(c) + std::abs(s)) && k > 2)
                    break;
                power *= z / (k + 1.0);
            }
            return {c, s};
        }

        inline std::complex<double> fresnel_continued_fraction(double x)
        {
            constexpr double eps = std::numeric_limits<double>::epsilon();
            constexpr double big = std::numeric_limits<double>::max() * eps;
            const double pix2 = std::numbers::pi * x * x;
            std::complex<double> b(1.0, -pix2);
            std::complex<double> cc(big, 0.0);
            std::complex<double> d = 1.0 / b;
            std::complex<double> h = d;
            int n = -1;
            for (int k = 2; k <= 300; ++k)
            {
                n += 2;
                const double a = -static_cast<double>(n) * (n + 1);
                b += 4.0;
                d = 1.0 / (a * d + b);
                cc = b + a / cc;
                const std::complex<double> del = cc * d;
                h *= del;
                if (std::abs(del.real() - 1.0) + std::abs(del.imag()) <= eps)
                    break;
            }
            h *= std::complex<double>(x, -x);
            const std::complex<double> rot = std::polar(1.0, half_pi_x2_reduced(x));
            return std::complex<double>(0.5, 0.5) * (1.0 - rot * h);
        }
    } // namespace detail

    inline std::complex<double> fresnel_cs(double x)
    {
        if (!std::isfinite(x))
        {
            if (std::isnan(x))
                return {x, x};
            return x > 0 ? std::complex<double>(0.5, 0.5) : std::complex<double>(-0.5, -0.5);
        }
        const double ax = std::abs(x);
        const std::complex<double> v = ax <= detail::fresnel_switch ? detail::fresnel_series(ax)
                                                                    : detail::fresnel_continued_fraction(ax);
        return x < 0 ? -v : v;
    }

    inline double fresnel_c(double x) { return fresnel_cs(x).real(); }
    inline double fresnel_s(double x) { return fresnel_cs(x).imag(); }
} // namespace nfswipt

#endif
