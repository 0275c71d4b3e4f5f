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

#ifndef NFSWIPT_EXPERIMENTS_HPP
#define NFSWIPT_EXPERIMENTS_HPP

#include "benchmarks.hpp"
#include "config.hpp"
#include "correlation.hpp"
#include "swipt_model.hpp"
#include "units.hpp"

#include <cmath>
#include <cstdint>
#include <ostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

namespace nfswipt
{
    struct SchemeRow
    {
        double rate_requirement = 0.0;
        SchemeResult result;
        bool error = false;
        std::string message; // solver error text when error is set
    };

    struct SchemeTable
    {
        int n_eh = 0, n_id = 0;
        std::vector<SchemeRow> rows;

        int errors() const
        {
            int n = 0;
            for (const auto &r : rows)
                n += r.error;
            return n;
        }
    };

    struct IdCountRow
    {
        int n_id = 0;
        Scheme scheme = Scheme::proposed;
        double mean_q = 0.0;
        int trial_count = 0;
        int reported_count = 0; // trials whose Q entered the mean
        int error_count = 0;
        std::uint64_t seed = 0;
    };

    struct CorrelationRow
    {
        double theta = 0.0, r = 0.0;
        double eta_exact = 0.0, eta_approx = 0.0;

        double abs_error() const { return std::abs(eta_exact - eta_approx); }
    };

    // Runs one scheme, turning solver errors into a flagged row
    inline SchemeRow run_row(Scheme s, const CompactProblem &c, const ExperimentConfig &cfg)
    {
        SchemeRow row;
        row.rate_requirement = c.rate_requirement;
        try
        {
            row.result = run_scheme(s, c, cfg.solver, cfg.enumeration_cap);
        }
        catch (const std::exception &e)
        {
            row.error = true;
            row.message = e.what();
            row.result.scheme = s;
            row.result.status = "error";
        }
        return row;
    }

    inline SchemeTable solve_scenario(const ExperimentConfig &cfg, const std::vector<Scheme> &schemes)
    {
        const CompactProblem c = build_compact(cfg.scenario);
        SchemeTable t{cfg.scenario.n_eh(), cfg.scenario.n_id(), {}};
        for (Scheme s : schemes)
            t.rows.push_back(run_row(s, c, cfg));
        return t;
    }

    // Rate grid outer, schemes inner. The channel is built once; only R changes.
    inline SchemeTable sweep_rate(const ExperimentConfig &cfg, const std::vector<Scheme> &schemes)
    {
        CompactProblem c = build_compact(cfg.scenario);
        SchemeTable t{cfg.scenario.n_eh(), cfg.scenario.n_id(), {}};
        for (double r : cfg.sweep.rates)
        {
            c.rate_requirement = r;
            for (Scheme s : schemes)
                t.rows.push_back(run_row(s, c, cfg));
        }
        return t;
    }

    namespace detail
    {
        // 53 random bits -> [0, 1), identical on every platform
        inline double unit_uniform(std::mt19937_64 &rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

        inline std::mt19937_64 trial_rng(std::uint64_t seed, int trial)
        {
            std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                              static_cast<std::uint32_t>(trial)};
            return std::mt19937_64(seq);
        }
    } // namespace detail

    // The extra ID receivers of one trial; the first (M - base) enter the scenario with M receivers
    inline std::vector<IdReceiver> random_id_receivers(const SweepConfig &s, int count, int trial)
    {
        auto rng = detail::trial_rng(s.seed, trial);
        std::vector<IdReceiver> out;
        for (int i = 0; i < count; ++i)
        {
            const double u = 2.0 * detail::unit_uniform(rng) - 1.0;
            const double theta = s.angle_mode == AngleMode::spatial ? std::sin(s.angle_limit) * u
                                                                    : std::sin(s.angle_limit * u);
            const double r = s.id_distance_lo + (s.id_distance_hi - s.id_distance_lo) * detail::unit_uniform(rng);
            out.push_back({{theta, r}, s.id_noise_power});
        }
        return out;
    }

    inline Scenario id_count_scenario(const ExperimentConfig &cfg, int n_id, const std::vector<IdReceiver> &extra)
    {
        Scenario s = cfg.scenario;
        s.rate_requirement = cfg.sweep.id_rate_requirement;
        for (int m = s.n_id(); m < n_id; ++m)
            s.id.push_back(extra.at(m - cfg.scenario.n_id()));
        return s;
    }

    // Mean Q per (M, scheme). Infeasible results are left out of the mean, except
    // AS+EPA whose Q is reported regardless of rate feasibility.
    inline std::vector<IdCountRow> sweep_id_count(const ExperimentConfig &cfg, const std::vector<Scheme> &schemes)
    {
        const SweepConfig &sw = cfg.sweep;
        const int base = cfg.scenario.n_id();
        const int extra = sw.id_counts.back() - base;
        std::vector<IdCountRow> rows;
        for (int M : sw.id_counts)
            for (Scheme s : schemes)
                rows.push_back({M, s, 0.0, sw.trials, 0, 0, sw.seed});

        for (int trial = 0; trial < sw.trials; ++trial)
        {
            const auto receivers = random_id_receivers(sw, extra, trial);
            std::size_t at = 0;
            for (int M : sw.id_counts)
            {
                const CompactProblem c = build_compact(id_count_scenario(cfg, M, receivers));
                for (Scheme s : schemes)
                {
                    IdCountRow &row = rows[at++];
                    SchemeRow r = run_row(s, c, cfg);
                    if (r.error)
                        ++row.error_count;
                    else if (r.result.feasible || s == Scheme::as_epa)
                    {
                        row.mean_q += r.result.harvested_q;
                        ++row.reported_count;
                    }
                }
            }
        }
        for (auto &row : rows)
            row.mean_q = row.reported_count > 0 ? row.mean_q / row.reported_count : 0.0;
        return rows;
    }

    inline std::vector<CorrelationRow> correlation_map(const ExperimentConfig &cfg)
    {
        const ArrayGeometry &g = cfg.scenario.geometry;
        const CorrelationMapConfig &m = cfg.correlation_map;
        const double Z = rayleigh_distance(g);
        auto field = [&](double r) { return r < Z ? FieldType::near : FieldType::far; };
        auto curvature_r = [&](double r) { return r < Z ? r : INFINITY; };
        auto grid = [](double lo, double hi, int n, int i) { return n == 1 ? lo : lo + (hi - lo) * i / (n - 1); };

        const Placement ref = m.reference;
        std::vector<CorrelationRow> out;
        for (int a = 0; a < m.n_theta; ++a)
            for (int b = 0; b < m.n_r; ++b)
            {
                const Placement p{grid(m.theta_lo, m.theta_hi, m.n_theta, a), grid(m.r_lo, m.r_hi, m.n_r, b)};
                CorrelationRow row{p.spatial_angle, p.distance, 0.0, 0.0};
                row.eta_exact = correlation_exact(g, ref, p, field(ref.distance), field(p.distance));
                row.eta_approx = correlation_approx_or_planar(g, ref.spatial_angle, curvature_r(ref.distance),
                                                              p.spatial_angle, curvature_r(p.distance));
                out.push_back(row);
            }
        return out;
    }

    // ---- CSV emission ----

    class CsvWriter
    {
    public:
        CsvWriter(std::ostream &out, int precision) : out_(out), precision_(precision) {}

        CsvWriter &cell(const std::string &s)
        {
            sep();
            if (s.find_first_of(",\"\n") == std::string::npos)
                out_ << s;
            else
            {
                out_ << '"';
                for (char ch : s)
                    out_ << (ch == '"' ? "\"\"" : std::string(1, ch));
                out_ << '"';
            }
            return *this;
        }

        CsvWriter &cell(double x)
        {
            sep();
            if (std::isinf(x))
                out_ << (x > 0 ? "inf" : "-inf");
            else if (std::isnan(x))
                out_ << "nan";
            else
            {
                std::ostringstream s;
                s.imbue(std::locale::classic());
                s.precision(precision_);
                s << x;
                out_ << s.str();
            }
            return *this;
        }

        CsvWriter &cell(long long x)
        {
            sep();
            out_ << x;
            return *this;
        }

        CsvWriter &cell(int x) { return cell(static_cast<long long>(x)); }
        CsvWriter &cell(std::uint64_t x)
        {
            sep();
            out_ << x;
            return *this;
        }

        void end()
        {
            out_ << '\n';
            first_ = true;
        }

    private:
        void sep()
        {
            if (!first_)
                out_ << ',';
            first_ = false;
        }

        std::ostream &out_;
        int precision_;
        bool first_ = true;
    };

    inline double q_dbm(double q) { return q > 0.0 ? watt_to_dbm(q) : -INFINITY; }

    inline void write_scheme_csv(std::ostream &out, const SchemeTable &t, int precision)
    {
        CsvWriter w(out, precision);
        w.cell("R").cell("scheme").cell("Q_watts").cell("Q_dBm").cell("sum_rate").cell("feasible");
        for (int k = 0; k < t.n_eh; ++k)
            w.cell("P_EH" + std::to_string(k + 1));
        for (int m = 0; m < t.n_id; ++m)
            w.cell("P_ID" + std::to_string(m + 1));
        w.cell("iterations").cell("status");
        w.end();
        for (const auto &row : t.rows)
        {
            const SchemeResult &r = row.result;
            w.cell(row.rate_requirement).cell(std::string(to_string(r.scheme)));
            w.cell(r.harvested_q).cell(q_dbm(r.harvested_q)).cell(r.sum_rate).cell(r.feasible ? 1 : 0);
            for (int i = 0; i < t.n_eh + t.n_id; ++i)
                w.cell(r.y.y.size() == t.n_eh + t.n_id ? r.y.y[i] : 0.0);
            w.cell(r.iterations).cell(row.error ? "error: " + row.message : r.status);
            w.end();
        }
    }

    // Per-beam powers of the proposed scheme along the rate grid
    inline void write_power_breakdown_csv(std::ostream &out, const SchemeTable &t, int precision)
    {
        CsvWriter w(out, precision);
        w.cell("R");
        for (int k = 0; k < t.n_eh; ++k)
            w.cell("P_EH" + std::to_string(k + 1));
        for (int m = 0; m < t.n_id; ++m)
            w.cell("P_ID" + std::to_string(m + 1));
        w.cell("feasible");
        w.end();
        for (const auto &row : t.rows)
        {
            if (row.result.scheme != Scheme::proposed)
                continue;
            w.cell(row.rate_requirement);
            for (int i = 0; i < t.n_eh + t.n_id; ++i)
                w.cell(row.result.y.y.size() == t.n_eh + t.n_id ? row.result.y.y[i] : 0.0);
            w.cell(row.result.feasible && !row.error ? 1 : 0);
            w.end();
        }
    }

    inline void write_id_count_csv(std::ostream &out, const std::vector<IdCountRow> &rows, int precision)
    {
        CsvWriter w(out, precision);
        w.cell("M").cell("scheme").cell("mean_Q").cell("mean_Q_dBm").cell("trial_count").cell("reported_count");
        w.cell("error_count").cell("seed");
        w.end();
        for (const auto &r : rows)
        {
            w.cell(r.n_id).cell(std::string(to_string(r.scheme))).cell(r.mean_q).cell(q_dbm(r.mean_q));
            w.cell(r.trial_count).cell(r.reported_count).cell(r.error_count).cell(r.seed);
            w.end();
        }
    }

    inline void write_correlation_csv(std::ostream &out, const std::vector<CorrelationRow> &rows, int precision)
    {
        CsvWriter w(out, precision);
        w.cell("theta").cell("r").cell("eta_exact").cell("eta_approx").cell("abs_error");
        w.end();
        for (const auto &r : rows)
        {
            w.cell(r.theta).cell(r.r).cell(r.eta_exact).cell(r.eta_approx).cell(r.abs_error());
            w.end();
        }
    }

    // matplotlib script reading the sweep CSVs written next to it
    inline void write_rate_plot_script(std::ostream &out)
    {
        out << R"(#!/usr/bin/env python3
# Generated by nfswipt. Reads sweep_rate.csv and sweep_rate_powers.csv from this directory.
import csv, os, sys
import matplotlib
matplotlib.use("Agg")
import matplotlib.pyplot as plt

here = os.path.dirname(os.path.abspath(__file__))
rows = list(csv.DictReader(open(os.path.join(here, "sweep_rate.csv"))))
fig, ax = plt.subplots()
for scheme in dict.fromkeys(r["scheme"] for r in rows):
    pts = [(float(r["R"]), float(r["Q_dBm"])) for r in rows
           if r["scheme"] == scheme and r["feasible"] == "1"]
    if pts:
        ax.plot(*zip(*pts), marker="o", label=scheme)
ax.set_xlabel("sum-rate requirement R [bits/s/Hz]")
ax.set_ylabel("harvested sum-power [dBm]")
ax.grid(True)
ax.legend()
fig.savefig(os.path.join(here, "sweep_rate.png"), dpi=150)

prow = list(csv.DictReader(open(os.path.join(here, "sweep_rate_powers.csv"))))
beams = [k for k in prow[0].keys() if k.startswith("P_")] if prow else []
fig, ax = plt.subplots()
for b in beams:
    pts = [(float(r["R"]), float(r[b])) for r in prow if r["feasible"] == "1"]
    if pts:
        ax.plot(*zip(*pts), marker="o", label=b)
ax.set_xlabel("sum-rate requirement R [bits/s/Hz]")
ax.set_ylabel("beam power [W]")
ax.grid(True)
ax.legend()
fig.savefig(os.path.join(here, "sweep_rate_powers.png"), dpi=150)
)";
    }

    inline void write_id_count_plot_script(std::ostream &out)
    {
        out << R"(#!/usr/bin/env python3
# Generated by nfswipt. Reads sweep_id_count.csv from this directory.
import csv, os
import matplotlib
matplotlib.use("Agg")
import matplotlib.pyplot as plt

here = os.path.dirname(os.path.abspath(__file__))
rows = list(csv.DictReader(open(os.path.join(here, "sweep_id_count.csv"))))
fig, ax = plt.subplots()
for scheme in dict.fromkeys(r["scheme"] for r in rows):
    pts = [(int(r["M"]), float(r["mean_Q_dBm"])) for r in rows
           if r["scheme"] == scheme and int(r["reported_count"]) > 0]
    if pts:
        ax.plot(*zip(*pts), marker="o", label=scheme)
ax.set_xlabel("number of ID receivers M")
ax.set_ylabel("mean harvested sum-power [dBm]")
ax.grid(True)
ax.legend()
fig.savefig(os.path.join(here, "sweep_id_count.png"), dpi=150)
)";
    }
} // namespace nfswipt

#endif
