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

#ifndef NFSWIPT_CONFIG_HPP
#define NFSWIPT_CONFIG_HPP

#include "array_channel.hpp"
#include "errors.hpp"
#include "sca_optimizer.hpp"
#include "swipt_model.hpp"
#include "units.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdint>
#include <fstream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

// Config schema (JSON). Distances are meters, or strings "<x>Z" relative to the
// Rayleigh distance of the configured array. Positions are (theta, distance) with
// theta the spatial angle; "aod_rad" may be given instead of "theta".
//
// {
//   "scenario": {
//     "array": {"antennas": 256, "wavelength_m": 0.01, "frequency_hz": 3e10, "spacing_m": 0.005},
//     "power_budget_dbm": 30,            (or "power_budget_w")
//     "noise_power_dbm": -80,            (or "noise_power_w"; default for every ID receiver)
//     "harvest_efficiency": 0.5,
//     "rate_requirement": 5,
//     "eh": [{"theta": 0, "distance": "0.015Z", "weight": 1}],
//     "id": [{"theta": 0, "distance": "1.05Z"}]
//   },
//   "solver": {"xi": 1e-3, "max_iterations": 100, "tolerance": 1e-8, "enumeration_cap": 16},
//   "sweep": {"rates": [0, 2, 4], "id_counts": [2, 3, 4], "trials": 20, "seed": 1,
//             "id_rate_requirement": 5, "id_distance": ["1.05Z", "1.3Z"],
//             "id_angle_mode": "spatial", "id_angle_limit_rad": 1.0471975511965976},
//   "correlation_map": {"reference": {"theta": 0, "distance": "0.05Z"},
//                       "theta_range": [-0.9, 0.9], "distance_range": ["0.03Z", "2Z"],
//                       "points": [50, 50]},
//   "output": {"directory": "out", "precision": 12}
// }
//
// "wavelength_m" wins over "frequency_hz" when both are present; the frequency is kept as metadata.

namespace nfswipt
{
    // How the M-sweep draws new ID angles. spatial: theta uniform in
    // [-sin(limit), sin(limit)]. physical: AoD psi uniform in [-limit, limit], theta = sin(psi).
    enum class AngleMode
    {
        spatial,
        physical
    };

    struct SweepConfig
    {
        std::vector<double> rates{0, 2, 4, 6, 8, 10, 12, 14};
        std::vector<int> id_counts{2, 3, 4, 5, 6};
        int trials = 20;
        std::uint64_t seed = 1;
        double id_rate_requirement = 5.0;
        double id_distance_lo = 0.0; // meters
        double id_distance_hi = 0.0;
        AngleMode angle_mode = AngleMode::spatial;
        double angle_limit = std::numbers::pi / 3.0;
        double id_noise_power = 1e-11;
    };

    struct CorrelationMapConfig
    {
        Placement reference{0.0, 1.0};
        double theta_lo = -0.9, theta_hi = 0.9;
        double r_lo = 0.0, r_hi = 0.0;
        int n_theta = 50, n_r = 50;
    };

    struct OutputConfig
    {
        std::string directory = "out";
        int precision = 12;
    };

    struct ExperimentConfig
    {
        Scenario scenario;
        std::optional<double> frequency_hz;
        SCAConfig solver;
        int enumeration_cap = 16;
        SweepConfig sweep;
        CorrelationMapConfig correlation_map;
        OutputConfig output;
    };

    namespace detail
    {
        using nlohmann::json;

        inline const json *find(const json &obj, const char *key)
        {
            auto it = obj.find(key);
            return it == obj.end() ? nullptr : &*it;
        }

        inline double number(const json &v, const std::string &path)
        {
            if (!v.is_number())
                throw ValidationError(path, "expected a number");
            double x = v.get<double>();
            if (!std::isfinite(x))
                throw ValidationError(path, "must be finite");
            return x;
        }

        inline double required_number(const json &obj, const char *key, const std::string &path)
        {
            const json *v = find(obj, key);
            if (!v)
                throw ValidationError(path + "." + key, "required field missing");
            return number(*v, path + "." + key);
        }

        inline double optional_number(const json &obj, const char *key, const std::string &path, double fallback)
        {
            const json *v = find(obj, key);
            return v ? number(*v, path + "." + key) : fallback;
        }

        inline int integer(const json &v, const std::string &path)
        {
            if (!v.is_number_integer())
                throw ValidationError(path, "expected an integer");
            return v.get<int>();
        }

        inline const json &object(const json &obj, const char *key, const std::string &path)
        {
            const json *v = find(obj, key);
            if (!v)
                throw ValidationError(path + "." + key, "required field missing");
            if (!v->is_object())
                throw ValidationError(path + "." + key, "expected an object");
            return *v;
        }

        // "<x>Z" -> x * Z, plain numbers are meters
        inline double distance(const json &v, double rayleigh, const std::string &path)
        {
            if (v.is_number())
                return number(v, path);
            if (!v.is_string())
                throw ValidationError(path, "expected meters or a string like \"1.05Z\"");
            std::string s = v.get<std::string>();
            if (s.empty() || (s.back() != 'Z' && s.back() != 'z'))
                throw ValidationError(path, "distance string must end in Z, got \"" + s + "\"");
            s.pop_back();
            std::istringstream in(s);
            double x = 0.0;
            if (!(in >> x) || !(in >> std::ws).eof() || !std::isfinite(x))
                throw ValidationError(path, "cannot parse multiplier \"" + s + "\"");
            return x * rayleigh;
        }

        // Either "<key>_w" or "<key>_dbm"
        inline std::optional<double> power(const json &obj, const std::string &key, const std::string &path)
        {
            const json *w = find(obj, (key + "_w").c_str());
            const json *dbm = find(obj, (key + "_dbm").c_str());
            if (w && dbm)
                throw ValidationError(path + "." + key, "give either _w or _dbm, not both");
            if (w)
                return number(*w, path + "." + key + "_w");
            if (dbm)
                return dbm_to_watt(number(*dbm, path + "." + key + "_dbm"));
            return std::nullopt;
        }

        inline Placement placement(const json &v, const ArrayGeometry &g, const std::string &path)
        {
            if (!v.is_object())
                throw ValidationError(path, "expected an object");
            const json *th = find(v, "theta");
            const json *aod = find(v, "aod_rad");
            if (th && aod)
                throw ValidationError(path, "give either theta or aod_rad, not both");
            if (!th && !aod)
                throw ValidationError(path + ".theta", "required field missing");
            double theta = th ? number(*th, path + ".theta")
                              : spatial_angle_from_aod(g, number(*aod, path + ".aod_rad"));
            if (!(std::abs(theta) <= 1.0))
                throw ValidationError(path + ".theta", "spatial angle must lie in [-1, 1]");
            const json *d = find(v, "distance");
            if (!d)
                throw ValidationError(path + ".distance", "required field missing");
            double r = distance(*d, rayleigh_distance(g), path + ".distance");
            if (!(r > 0.0))
                throw ValidationError(path + ".distance", "must be positive");
            return {theta, r};
        }

        inline std::pair<double, double> pair_of(const json &v, const std::string &path, auto &&convert)
        {
            if (!v.is_array() || v.size() != 2)
                throw ValidationError(path, "expected a two-element array");
            double lo = convert(v[0], path + "[0]"), hi = convert(v[1], path + "[1]");
            if (!(lo < hi))
                throw ValidationError(path, "lower bound must be below upper bound");
            return {lo, hi};
        }

        inline ArrayGeometry geometry(const json &a, std::optional<double> &frequency)
        {
            const std::string path = "scenario.array";
            const json *n = find(a, "antennas");
            if (!n)
                throw ValidationError(path + ".antennas", "required field missing");
            int N = integer(*n, path + ".antennas");
            if (N < 2)
                throw ValidationError(path + ".antennas", "need at least 2 antennas");
            if (const json *f = find(a, "frequency_hz"))
            {
                frequency = number(*f, path + ".frequency_hz");
                if (!(*frequency > 0.0))
                    throw ValidationError(path + ".frequency_hz", "must be positive");
            }
            double lambda = 0.0;
            if (const json *l = find(a, "wavelength_m"))
                lambda = number(*l, path + ".wavelength_m");
            else if (frequency)
                lambda = wavelength_from_frequency(*frequency);
            else
                throw ValidationError(path + ".wavelength_m", "required field missing (or give frequency_hz)");
            if (!(lambda > 0.0))
                throw ValidationError(path + ".wavelength_m", "must be positive");
            double d = optional_number(a, "spacing_m", path, 0.5 * lambda);
            if (!(d > 0.0))
                throw ValidationError(path + ".spacing_m", "must be positive");
            return ArrayGeometry(N, d, lambda);
        }

        inline Scenario scenario(const json &s, std::optional<double> &frequency)
        {
            const std::string path = "scenario";
            Scenario out{geometry(object(s, "array", path), frequency), {}, {}};
            const ArrayGeometry &g = out.geometry;

            auto p0 = power(s, "power_budget", path);
            if (!p0)
                throw ValidationError(path + ".power_budget_dbm", "required field missing");
            if (!(*p0 > 0.0))
                throw ValidationError(path + ".power_budget", "must be positive");
            out.power_budget = *p0;

            auto noise = power(s, "noise_power", path);
            out.harvest_efficiency = required_number(s, "harvest_efficiency", path);
            if (!(out.harvest_efficiency > 0.0 && out.harvest_efficiency <= 1.0))
                throw ValidationError(path + ".harvest_efficiency", "must lie in (0, 1]");
            out.rate_requirement = optional_number(s, "rate_requirement", path, 0.0);
            if (!(out.rate_requirement >= 0.0))
                throw ValidationError(path + ".rate_requirement", "must be nonnegative");

            const json *eh = find(s, "eh");
            if (!eh || !eh->is_array() || eh->empty())
                throw ValidationError(path + ".eh", "need a non-empty array of EH receivers");
            for (std::size_t k = 0; k < eh->size(); ++k)
            {
                const std::string p = path + ".eh[" + std::to_string(k) + "]";
                EhReceiver r{placement((*eh)[k], g, p), optional_number((*eh)[k], "weight", p, 1.0)};
                if (!(r.weight >= 0.0))
                    throw ValidationError(p + ".weight", "must be nonnegative");
                if (!(r.placement.distance < rayleigh_distance(g)))
                    throw ValidationError(p + ".distance", "EH receivers must lie inside the Rayleigh distance");
                out.eh.push_back(r);
            }

            const json *id = find(s, "id");
            if (!id || !id->is_array() || id->empty())
                throw ValidationError(path + ".id", "need a non-empty array of ID receivers");
            for (std::size_t m = 0; m < id->size(); ++m)
            {
                const std::string p = path + ".id[" + std::to_string(m) + "]";
                IdReceiver r{placement((*id)[m], g, p)};
                auto own = power((*id)[m], "noise_power", p);
                if (!own && !noise)
                    throw ValidationError(path + ".noise_power_dbm", "required field missing");
                r.noise_power = own ? *own : *noise;
                if (!(r.noise_power > 0.0))
                    throw ValidationError(p + ".noise_power", "must be positive");
                if (!(r.placement.distance >= rayleigh_distance(g)))
                    throw ValidationError(p + ".distance", "ID receivers must lie at or beyond the Rayleigh distance");
                out.id.push_back(r);
            }
            return out;
        }

        inline void solver(const json &v, ExperimentConfig &cfg)
        {
            const std::string path = "solver";
            cfg.solver.xi = optional_number(v, "xi", path, cfg.solver.xi);
            if (!(cfg.solver.xi > 0.0))
                throw ValidationError(path + ".xi", "must be positive");
            if (const json *it = find(v, "max_iterations"))
                cfg.solver.max_iterations = integer(*it, path + ".max_iterations");
            if (cfg.solver.max_iterations < 1)
                throw ValidationError(path + ".max_iterations", "must be at least 1");
            cfg.solver.tolerance = optional_number(v, "tolerance", path, cfg.solver.tolerance);
            if (!(cfg.solver.tolerance > 0.0))
                throw ValidationError(path + ".tolerance", "must be positive");
            if (const json *c = find(v, "enumeration_cap"))
                cfg.enumeration_cap = integer(*c, path + ".enumeration_cap");
            if (cfg.enumeration_cap < 1 || cfg.enumeration_cap > 30)
                throw ValidationError(path + ".enumeration_cap", "must lie in [1, 30]");
        }

        inline void sweep(const json &v, ExperimentConfig &cfg)
        {
            const std::string path = "sweep";
            SweepConfig &s = cfg.sweep;
            const double Z = rayleigh_distance(cfg.scenario.geometry);
            if (const json *r = find(v, "rates"))
            {
                if (!r->is_array() || r->empty())
                    throw ValidationError(path + ".rates", "expected a non-empty array");
                s.rates.clear();
                for (std::size_t i = 0; i < r->size(); ++i)
                {
                    double x = number((*r)[i], path + ".rates[" + std::to_string(i) + "]");
                    if (x < 0.0 || (!s.rates.empty() && !(x > s.rates.back())))
                        throw ValidationError(path + ".rates", "must be nonnegative and strictly ascending");
                    s.rates.push_back(x);
                }
            }
            const int base = cfg.scenario.n_id();
            if (const json *m = find(v, "id_counts"))
            {
                if (!m->is_array() || m->empty())
                    throw ValidationError(path + ".id_counts", "expected a non-empty array");
                s.id_counts.clear();
                for (std::size_t i = 0; i < m->size(); ++i)
                {
                    int x = integer((*m)[i], path + ".id_counts[" + std::to_string(i) + "]");
                    if (x < base || (!s.id_counts.empty() && x <= s.id_counts.back()))
                        throw ValidationError(path + ".id_counts",
                                              "must be ascending and at least the scenario's ID count");
                    s.id_counts.push_back(x);
                }
            }
            else
            {
                for (int &x : s.id_counts)
                    if (x < base)
                        throw ValidationError(path + ".id_counts", "default grid starts below the scenario's ID count");
            }
            if (const json *t = find(v, "trials"))
                s.trials = integer(*t, path + ".trials");
            if (s.trials < 1)
                throw ValidationError(path + ".trials", "must be at least 1");
            if (const json *sd = find(v, "seed"))
            {
                if (!sd->is_number_integer() || (sd->is_number_integer() && !sd->is_number_unsigned() &&
                                                 sd->get<std::int64_t>() < 0))
                    throw ValidationError(path + ".seed", "expected a nonnegative 64-bit integer");
                s.seed = sd->get<std::uint64_t>();
            }
            s.id_rate_requirement = optional_number(v, "id_rate_requirement", path, cfg.scenario.rate_requirement);
            if (!(s.id_rate_requirement >= 0.0))
                throw ValidationError(path + ".id_rate_requirement", "must be nonnegative");
            s.id_distance_lo = 1.05 * Z;
            s.id_distance_hi = 1.3 * Z;
            if (const json *d = find(v, "id_distance"))
            {
                std::tie(s.id_distance_lo, s.id_distance_hi) = pair_of(
                    *d, path + ".id_distance", [&](const json &x, const std::string &p) { return distance(x, Z, p); });
                if (s.id_distance_lo < Z)
                    throw ValidationError(path + ".id_distance", "new ID receivers must lie beyond the Rayleigh distance");
            }
            if (const json *mode = find(v, "id_angle_mode"))
            {
                std::string m = mode->is_string() ? mode->get<std::string>() : "";
                if (m == "spatial")
                    s.angle_mode = AngleMode::spatial;
                else if (m == "physical")
                    s.angle_mode = AngleMode::physical;
                else
                    throw ValidationError(path + ".id_angle_mode", "expected \"spatial\" or \"physical\"");
            }
            s.angle_limit = optional_number(v, "id_angle_limit_rad", path, s.angle_limit);
            if (!(s.angle_limit > 0.0 && s.angle_limit <= std::numbers::pi / 2.0))
                throw ValidationError(path + ".id_angle_limit_rad", "must lie in (0, pi/2]");
            s.id_noise_power = cfg.scenario.id.front().noise_power;
            if (auto n = power(v, "id_noise_power", path))
                s.id_noise_power = *n;
            if (!(s.id_noise_power > 0.0))
                throw ValidationError(path + ".id_noise_power", "must be positive");
        }

        inline void correlation_map(const json &v, ExperimentConfig &cfg)
        {
            const std::string path = "correlation_map";
            const ArrayGeometry &g = cfg.scenario.geometry;
            const double Z = rayleigh_distance(g), rmin = fresnel_region_min(g);
            CorrelationMapConfig &c = cfg.correlation_map;
            c.reference = {0.0, std::max(0.05 * Z, 1.5 * rmin)};
            c.r_lo = std::max(0.03 * Z, 1.01 * rmin);
            c.r_hi = 2.0 * Z;
            if (const json *ref = find(v, "reference"))
                c.reference = placement(*ref, g, path + ".reference");
            if (const json *t = find(v, "theta_range"))
            {
                std::tie(c.theta_lo, c.theta_hi) =
                    pair_of(*t, path + ".theta_range", [](const json &x, const std::string &p) { return number(x, p); });
                if (c.theta_lo < -1.0 || c.theta_hi > 1.0)
                    throw ValidationError(path + ".theta_range", "must lie within [-1, 1]");
            }
            if (const json *d = find(v, "distance_range"))
                std::tie(c.r_lo, c.r_hi) = pair_of(*d, path + ".distance_range",
                                                   [&](const json &x, const std::string &p) { return distance(x, Z, p); });
            if (!(c.r_lo > rmin) || c.r_hi > 2.0 * Z * (1.0 + 1e-12))
                throw ValidationError(path + ".distance_range", "must lie within (r_min, 2Z]");
            if (const json *p = find(v, "points"))
            {
                if (!p->is_array() || p->size() != 2)
                    throw ValidationError(path + ".points", "expected [n_theta, n_r]");
                c.n_theta = integer((*p)[0], path + ".points[0]");
                c.n_r = integer((*p)[1], path + ".points[1]");
                if (c.n_theta < 1 || c.n_r < 1)
                    throw ValidationError(path + ".points", "grid sizes must be positive");
            }
        }

        inline void output(const json &v, ExperimentConfig &cfg)
        {
            const std::string path = "output";
            if (const json *d = find(v, "directory"))
            {
                if (!d->is_string())
                    throw ValidationError(path + ".directory", "expected a string");
                cfg.output.directory = d->get<std::string>();
            }
            if (const json *p = find(v, "precision"))
                cfg.output.precision = integer(*p, path + ".precision");
            if (cfg.output.precision < 1 || cfg.output.precision > 17)
                throw ValidationError(path + ".precision", "must lie in [1, 17]");
        }
    } // namespace detail

    inline ExperimentConfig parse_config(const std::string &text)
    {
        nlohmann::json root;
        try
        {
            root = nlohmann::json::parse(text);
        }
        catch (const nlohmann::json::parse_error &e)
        {
            throw ParseError(e.what());
        }
        if (!root.is_object())
            throw ParseError("config root must be a JSON object");

        std::optional<double> frequency;
        ExperimentConfig cfg{detail::scenario(detail::object(root, "scenario", "config"), frequency), frequency,
                             SCAConfig{}, 16, SweepConfig{}, CorrelationMapConfig{}, OutputConfig{}};
        auto section = [&](const char *key, auto &&load) {
            if (const auto *v = detail::find(root, key))
            {
                if (!v->is_object())
                    throw ValidationError(key, "expected an object");
                load(*v, cfg);
            }
            else
                load(nlohmann::json::object(), cfg);
        };
        section("solver", detail::solver);
        section("sweep", detail::sweep);
        section("correlation_map", detail::correlation_map);
        section("output", detail::output);
        try
        {
            cfg.scenario.validate();
        }
        catch (const DomainError &e)
        {
            throw ValidationError("scenario", e.what());
        }
        return cfg;
    }

    inline ExperimentConfig load_config(const std::string &path)
    {
        std::ifstream in(path);
        if (!in)
            throw ParseError("cannot open config file '" + path + "'");
        std::ostringstream buf;
        buf << in.rdbuf();
        return parse_config(buf.str());
    }
} // namespace nfswipt

#endif
