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

#ifndef NFSWIPT_BENCHMARKS_HPP
#define NFSWIPT_BENCHMARKS_HPP

#include "errors.hpp"
#include "sca_optimizer.hpp"
#include "swipt_model.hpp"

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace nfswipt
{
    enum class Scheme
    {
        proposed,   // joint scheduling + power allocation via SCA over all beams
        exhaustive, // every non-empty schedule, SCA power allocation for each
        gs_opa,     // greedy scheduling (one EH, one ID), optimized power
        os_epa,     // optimal scheduling, equal power
        as_epa      // all beams, equal power
    };

    inline constexpr std::array<Scheme, 5> all_schemes{Scheme::proposed, Scheme::exhaustive, Scheme::gs_opa,
                                                        Scheme::os_epa, Scheme::as_epa};

    inline std::string_view to_string(Scheme s)
    {
        switch (s)
        {
        case Scheme::proposed:
            return "proposed";
        case Scheme::exhaustive:
            return "exhaustive";
        case Scheme::gs_opa:
            return "gs-opa";
        case Scheme::os_epa:
            return "os-epa";
        default:
            return "as-epa";
        }
    }

    inline Scheme scheme_from_string(std::string_view name)
    {
        for (Scheme s : all_schemes)
            if (to_string(s) == name)
                return s;
        throw DomainError("unknown scheme '" + std::string(name) + "'");
    }

    struct SchemeResult
    {
        Scheme scheme = Scheme::proposed;
        Schedule schedule;
        BeamPowers powers;
        PowerVector y;
        double harvested_q = 0.0;
        double sum_rate = 0.0;
        bool feasible = false;
        int iterations = 0;
        std::string status;
        std::vector<double> objective_trace;
    };

    inline constexpr int default_enumeration_cap = 16;

    namespace detail
    {
        inline Schedule schedule_from_mask(std::uint64_t mask, int K, int M)
        {
            Schedule s{std::vector<bool>(K), std::vector<bool>(M)};
            for (int k = 0; k < K; ++k)
                s.eh[k] = (mask >> k) & 1u;
            for (int m = 0; m < M; ++m)
                s.id[m] = (mask >> (K + m)) & 1u;
            return s;
        }

        inline SchemeResult from_solve(Scheme scheme, const SolveResult &r)
        {
            SchemeResult out;
            out.scheme = scheme;
            out.schedule = r.schedule;
            out.powers = r.powers;
            out.y = r.y;
            out.harvested_q = r.harvested_q;
            out.sum_rate = r.sum_rate;
            out.feasible = r.feasible();
            out.iterations = r.iterations;
            out.status = to_string(r.status);
            out.objective_trace = r.objective_trace;
            return out;
        }

        inline SchemeResult equal_power(Scheme scheme, const CompactProblem &c, const Schedule &s)
        {
            const int K = c.n_eh, M = c.n_id();
            const int count = s.count();
            BeamPowers p{std::vector<double>(K, 0.0), std::vector<double>(M, 0.0)};
            const double each = count > 0 ? c.power_budget / count : 0.0;
            for (int k = 0; k < K; ++k)
                if (s.eh[k])
                    p.eh[k] = each;
            for (int m = 0; m < M; ++m)
                if (s.id[m])
                    p.id[m] = each;
            SchemeResult out;
            out.scheme = scheme;
            out.schedule = s;
            out.powers = p;
            out.y = eliminate_binaries(s, p);
            out.harvested_q = c.objective(out.y.y);
            out.sum_rate = c.sum_rate(out.y.y);
            out.feasible = out.sum_rate >= c.rate_requirement;
            out.status = out.feasible ? "feasible" : "infeasible";
            return out;
        }

        inline SchemeResult infeasible(Scheme scheme, const CompactProblem &c, std::string why)
        {
            SchemeResult out;
            out.scheme = scheme;
            out.schedule = Schedule{std::vector<bool>(c.n_eh, false), std::vector<bool>(c.n_id(), false)};
            out.powers = BeamPowers{std::vector<double>(c.n_eh, 0.0), std::vector<double>(c.n_id(), 0.0)};
            out.y.y = Eigen::VectorXd::Zero(c.n_beams());
            out.feasible = false;
            out.status = std::move(why);
            return out;
        }

        inline void check_cap(const CompactProblem &c, int cap)
        {
            if (c.n_beams() > cap)
                throw CapExceeded("K + M = " + std::to_string(c.n_beams()) + " exceeds the enumeration cap " +
                                  std::to_string(cap));
        }
    } // namespace detail

    inline SchemeResult proposed_scheme(const CompactProblem &c, const SCAConfig &cfg = {})
    {
        return detail::from_solve(Scheme::proposed, sca_solve(c, cfg));
    }

    inline SchemeResult exhaustive_search(const CompactProblem &c, const SCAConfig &cfg = {},
                                          int cap = default_enumeration_cap)
    {
        detail::check_cap(c, cap);
        const int K = c.n_eh, M = c.n_id();
        const std::uint64_t combos = std::uint64_t{1} << c.n_beams();
        SchemeResult best = detail::infeasible(Scheme::exhaustive, c, "infeasible");
        bool found = false;
        int failures = 0;
        for (std::uint64_t mask = 1; mask < combos; ++mask)
        {
            SolveResult r;
            try
            {
                r = solve_power_allocation(c, detail::schedule_from_mask(mask, K, M), cfg);
            }
            catch (const SubproblemFailure &)
            {
                ++failures;
                continue;
            }
            if (!r.feasible())
                continue;
            if (!found || r.harvested_q > best.harvested_q)
            {
                best = detail::from_solve(Scheme::exhaustive, r);
                found = true;
            }
        }
        if (found && failures > 0)
            best.status += " (" + std::to_string(failures) + " schedules failed)";
        return best;
    }

    inline SchemeResult greedy_opa(const CompactProblem &c, const SCAConfig &cfg = {})
    {
        const int K = c.n_eh, M = c.n_id();
        int k_best = 0, m_best = 0;
        for (int k = 1; k < K; ++k)
            if (c.c_eh[k] > c.c_eh[k_best])
                k_best = k;
        for (int m = 1; m < M; ++m)
            if (c.id_gain[m] / c.noise[m] > c.id_gain[m_best] / c.noise[m_best])
                m_best = m;
        Schedule s{std::vector<bool>(K, false), std::vector<bool>(M, false)};
        s.eh[k_best] = true;
        s.id[m_best] = true;
        auto out = detail::from_solve(Scheme::gs_opa, solve_power_allocation(c, s, cfg));
        return out;
    }

    inline SchemeResult optimal_sched_epa(const CompactProblem &c, int cap = default_enumeration_cap)
    {
        detail::check_cap(c, cap);
        const int K = c.n_eh, M = c.n_id();
        const std::uint64_t combos = std::uint64_t{1} << c.n_beams();
        SchemeResult best = detail::infeasible(Scheme::os_epa, c, "infeasible");
        bool found = false;
        for (std::uint64_t mask = 1; mask < combos; ++mask)
        {
            auto r = detail::equal_power(Scheme::os_epa, c, detail::schedule_from_mask(mask, K, M));
            if (r.feasible && (!found || r.harvested_q > best.harvested_q))
            {
                best = std::move(r);
                found = true;
            }
        }
        return best;
    }

    inline SchemeResult all_sched_epa(const CompactProblem &c)
    {
        Schedule s{std::vector<bool>(c.n_eh, true), std::vector<bool>(c.n_id(), true)};
        return detail::equal_power(Scheme::as_epa, c, s);
    }

    inline SchemeResult run_scheme(Scheme scheme, const CompactProblem &c, const SCAConfig &cfg = {},
                                   int cap = default_enumeration_cap)
    {
        switch (scheme)
        {
        case Scheme::proposed:
            return proposed_scheme(c, cfg);
        case Scheme::exhaustive:
            return exhaustive_search(c, cfg, cap);
        case Scheme::gs_opa:
            return greedy_opa(c, cfg);
        case Scheme::os_epa:
            return optimal_sched_epa(c, cap);
        default:
            return all_sched_epa(c);
        }
    }
} // namespace nfswipt

#endif
