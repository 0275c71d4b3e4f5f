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

#ifndef NFSWIPT_UNITS_HPP
#define NFSWIPT_UNITS_HPP

#include <cmath>

namespace nfswipt
{
    inline constexpr double speed_of_light = 2.99792458e8; // m/s

    inline double dbm_to_watt(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }
    inline double watt_to_dbm(double watt) { return 10.0 * std::log10(watt) + 30.0; }
    inline double to_db(double ratio) { return 10.0 * std::log10(ratio); }

    inline double wavelength_from_frequency(double frequency_hz) { return speed_of_light / frequency_hz; }
} // namespace nfswipt

#endif
