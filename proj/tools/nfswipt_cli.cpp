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

// nfswipt command line: solve, sweep-rate, sweep-id-count, correlation-map

#include <nfswipt/config.hpp>
#include <nfswipt/experiments.hpp>

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace fs = std::filesystem;
using namespace nfswipt;

namespace
{
    struct Common
    {
        std::string config;
        std::string out;
        std::optional<std::uint64_t> seed;
        std::string scheme = "all";
        bool strict = false;
    };

    std::vector<Scheme> parse_schemes(const std::string &name)
    {
        if (name == "all")
            return {all_schemes.begin(), all_schemes.end()};
        return {scheme_from_string(name)};
    }

    fs::path output_dir(const Common &c, const ExperimentConfig &cfg)
    {
        fs::path dir = c.out.empty() ? fs::path(cfg.output.directory) : fs::path(c.out);
        fs::create_directories(dir);
        return dir;
    }

    template <class Fn>
    void write_file(const fs::path &path, Fn &&fn)
    {
        std::ofstream out(path, std::ios::binary);
        if (!out)
            throw std::runtime_error("cannot write " + path.string());
        fn(out);
        std::cout << "wrote " << path.string() << '\n';
    }

    ExperimentConfig load(const Common &c)
    {
        ExperimentConfig cfg = load_config(c.config);
        if (c.seed)
            cfg.sweep.seed = *c.seed;
        return cfg;
    }

    int report_errors(const Common &c, int errors)
    {
        if (errors > 0)
            std::cerr << errors << " row(s) hit solver errors\n";
        return c.strict && errors > 0 ? 3 : 0;
    }

    int run_solve(const Common &c)
    {
        const auto cfg = load(c);
        const auto table = solve_scenario(cfg, parse_schemes(c.scheme));
        for (const auto &row : table.rows)
        {
            const auto &r = row.result;
            std::printf("%-10s Q = %.6e W (%.3f dBm)  rate = %.4f  feasible = %d  %s\n",
                        std::string(to_string(r.scheme)).c_str(), r.harvested_q, q_dbm(r.harvested_q), r.sum_rate,
                        r.feasible ? 1 : 0, row.error ? row.message.c_str() : r.status.c_str());
        }
        const fs::path dir = output_dir(c, cfg);
        write_file(dir / "solve.csv", [&](std::ostream &o) { write_scheme_csv(o, table, cfg.output.precision); });
        return report_errors(c, table.errors());
    }

    int run_sweep_rate(const Common &c)
    {
        const auto cfg = load(c);
        const auto table = sweep_rate(cfg, parse_schemes(c.scheme));
        const fs::path dir = output_dir(c, cfg);
        write_file(dir / "sweep_rate.csv", [&](std::ostream &o) { write_scheme_csv(o, table, cfg.output.precision); });
        write_file(dir / "sweep_rate_powers.csv",
                   [&](std::ostream &o) { write_power_breakdown_csv(o, table, cfg.output.precision); });
        write_file(dir / "plot_sweep_rate.py", [](std::ostream &o) { write_rate_plot_script(o); });
        return report_errors(c, table.errors());
    }

    int run_sweep_id_count(const Common &c)
    {
        const auto cfg = load(c);
        const auto rows = sweep_id_count(cfg, parse_schemes(c.scheme));
        const fs::path dir = output_dir(c, cfg);
        write_file(dir / "sweep_id_count.csv",
                   [&](std::ostream &o) { write_id_count_csv(o, rows, cfg.output.precision); });
        write_file(dir / "plot_sweep_id_count.py", [](std::ostream &o) { write_id_count_plot_script(o); });
        int errors = 0;
        for (const auto &r : rows)
            errors += r.error_count;
        return report_errors(c, errors);
    }

    int run_correlation_map(const Common &c)
    {
        const auto cfg = load(c);
        const auto rows = correlation_map(cfg);
        double mean = 0.0, worst = 0.0;
        for (const auto &r : rows)
        {
            mean += r.abs_error();
            worst = std::max(worst, r.abs_error());
        }
        std::printf("%zu points, mean |error| = %.4e, max |error| = %.4e\n", rows.size(),
                    rows.empty() ? 0.0 : mean / rows.size(), worst);
        const fs::path dir = output_dir(c, cfg);
        write_file(dir / "correlation_map.csv",
                   [&](std::ostream &o) { write_correlation_csv(o, rows, cfg.output.precision); });
        return 0;
    }
} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"Beam scheduling and power allocation for near-field EH / far-field ID SWIPT"};
    app.require_subcommand(1);
    Common common;

    auto add_common = [&](CLI::App *sub, bool schemes) {
        sub->add_option("--config", common.config, "JSON experiment config")->required()->check(CLI::ExistingFile);
        sub->add_option("--out", common.out, "output directory (overrides output.directory)");
        sub->add_option("--seed", common.seed, "RNG seed (overrides sweep.seed)");
        if (schemes)
        {
            sub->add_option("--scheme", common.scheme, "proposed|exhaustive|gs-opa|os-epa|as-epa|all")
                ->check(CLI::IsMember({"all", "proposed", "exhaustive", "gs-opa", "os-epa", "as-epa"}));
            sub->add_flag("--strict", common.strict, "exit nonzero when any row hits a solver error");
        }
    };

    auto *solve = app.add_subcommand("solve", "solve the configured scenario once");
    auto *rate = app.add_subcommand("sweep-rate", "harvested power versus the sum-rate requirement");
    auto *count = app.add_subcommand("sweep-id-count", "mean harvested power versus the number of ID receivers");
    auto *corr = app.add_subcommand("correlation-map", "exact versus approximate correlation over a grid");
    add_common(solve, true);
    add_common(rate, true);
    add_common(count, true);
    add_common(corr, false);

    CLI11_PARSE(app, argc, argv);

    try
    {
        if (solve->parsed())
            return run_solve(common);
        if (rate->parsed())
            return run_sweep_rate(common);
        if (count->parsed())
            return run_sweep_id_count(common);
        return run_correlation_map(common);
    }
    catch (const ValidationError &e)
    {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    }
    catch (const ParseError &e)
    {
        std::cerr << "config parse error: " << e.what() << '\n';
        return 2;
    }
    catch (const std::exception &e)
    {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
