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

#ifndef NFSWIPT_RATE_BOUND_HPP
#define NFSWIPT_RATE_BOUND_HPP

#include <cmath>
#include <numbers>

namespace nfswipt
{
    // Affine minorant of log2(1 + 1/(S I)) taken at (S~, I~):
    //   value(S, I) = constant - slope_s * S - slope_i * I
    // log2(1 + 1/(x y)) is jointly convex for x, y > 0, so the tangent plane lies below it.
    struct RateBound
    {
        double constant = 0.0;
        double slope_s = 0.0;
        double slope_i = 0.0;

        double operator()(double s, double i) const { return constant - slope_s * s - slope_i * i; }
    };

    inline RateBound tangent_rate_bound(double s_anchor, double i_anchor)
    {
        const double log2e = std::numbers::log2e;
        const double si = s_anchor * i_anchor;
        RateBound b;
        b.slope_s = log2e / (s_anchor + s_anchor * si);
        b.slope_i = log2e / (i_anchor + i_anchor * si);
        // f~ + slope_s S~ + slope_i I~, with slope_s S~ = slope_i I~ = log2e / (1 + S~ I~)
        b.constant = std::log1p(1.0 / si) * log2e + 2.0 * log2e / (1.0 + si);
        return b;
    }

    inline double slack_rate(double s, double i) { return std::log1p(1.0 / (s * i)) * std::numbers::log2e; }
} // namespace nfswipt

#endif
