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

#ifndef NFSWIPT_SCA_OPTIMIZER_HPP
#define NFSWIPT_SCA_OPTIMIZER_HPP

#include "convex_core.hpp"
#include "errors.hpp"
#include "rate_bound.hpp"
#include "swipt_model.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

namespace nfswipt
{
    struct SCAConfig
    {
        double xi = 1e-3;                // stop once the fractional objective increase falls below this
        int max_iterations = 100;
        double tolerance = 1e-8;         // convex subproblem tolerance
        double schedule_threshold = 0.0; // <= 0 selects 1e-6 * P0
    };

    enum class SolveStatus
    {
        converged,
        max_iterations,
        infeasible
    };

    inline const char *to_string(SolveStatus s)
    {
        switch (s)
        {
        case SolveStatus::converged:
            return "converged";
        case SolveStatus::max_iterations:
            return "max_iterations";
        default:
            return "infeasible";
        }
    }

    // 1/S_m <= received power, I_m >= interference-plus-noise, with the current Taylor point
    struct SlackState
    {
        Eigen::VectorXd s;
        Eigen::VectorXd i;
        Eigen::VectorXd anchor_s;
        Eigen::VectorXd anchor_i;
    };

    struct SolveResult
    {
        Schedule schedule;
        BeamPowers powers;
        PowerVector y;
        double harvested_q = 0.0;
        double sum_rate = 0.0;
        int iterations = 0;
        std::vector<double> objective_trace;
        SolveStatus status = SolveStatus::infeasible;
        double residual_power = 0.0;
        std::string diagnostics;

        bool feasible() const { return status != SolveStatus::infeasible; }
    };

    inline constexpr double slack_s_floor = 1e-15;        // epsilon_S
    inline constexpr double fractional_denominator = 1e-30; // W

    // Tangent lower bound of log2(1 + 1/(S I)) at (S~, I~), evaluated at (S, I)
    inline double r_low(double s, double i, double s_anchor, double i_anchor)
    {
        return tangent_rate_bound(s_anchor, i_anchor)(s, i);
    }

    // Power problem over the beams `active` leaves on. Unscheduled EH receivers
    // still harvest, so the objective keeps every EH row of Lambda_bar.
    struct RestrictedProblem
    {
        PowerProblem problem;
        std::vector<Eigen::Index> index; // position in the full y of each free coordinate
    };

    inline RestrictedProblem restrict_problem(const CompactProblem &c, const Schedule &active)
    {
        const int K = c.n_eh, M = c.n_id();
        if (static_cast<int>(active.eh.size()) != K || static_cast<int>(active.id.size()) != M)
            throw DomainError("schedule mask does not match the problem size");
        RestrictedProblem rp;
        for (int k = 0; k < K; ++k)
            if (active.eh[k])
                rp.index.push_back(k);
        for (int m = 0; m < M; ++m)
            if (active.id[m])
                rp.index.push_back(K + m);
        const auto n = static_cast<Eigen::Index>(rp.index.size());
        const Eigen::VectorXd w = c.objective_weights();
        rp.problem.objective = Eigen::VectorXd(n);
        for (Eigen::Index j = 0; j < n; ++j)
            rp.problem.objective[j] = w[rp.index[j]];
        rp.problem.power_budget = c.power_budget;
        rp.problem.rate_requirement = c.rate_requirement > 0.0 ? c.rate_requirement
                                                                : -std::numeric_limits<double>::infinity();
        for (Eigen::Index j = 0; j < n; ++j)
        {
            const Eigen::Index full = rp.index[j];
            if (full < K)
                continue;
            const int m = static_cast<int>(full - K);
            const Eigen::VectorXd u = c.interference_row(m);
            RateLink link;
            link.signal = j;
            link.gain = c.id_gain[m];
            link.noise = c.noise[m];
            link.interference = Eigen::VectorXd(n);
            for (Eigen::Index i = 0; i < n; ++i)
                link.interference[i] = u[rp.index[i]];
            rp.problem.links.push_back(std::move(link));
        }
        return rp;
    }

    struct InitialPoint
    {
        Eigen::VectorXd y;
        SlackState slacks;
    };

    // Equal split over the ID beams, then full budget on each single ID beam;
    // the first candidate meeting R wins. Slacks start tight.
    inline std::optional<InitialPoint> initialize(const PowerProblem &p)
    {
        const Eigen::Index n = p.dim();
        const auto L = static_cast<Eigen::Index>(p.links.size());
        const double R = p.has_rate_constraint() ? p.rate_requirement : 0.0;

        std::vector<Eigen::VectorXd> candidates;
        if (L > 0)
        {
            Eigen::VectorXd eq = Eigen::VectorXd::Zero(n);
            for (const auto &l : p.links)
                eq[l.signal] = p.power_budget / L;
            candidates.push_back(eq);
            for (const auto &l : p.links)
            {
                Eigen::VectorXd one = Eigen::VectorXd::Zero(n);
                one[l.signal] = p.power_budget;
                candidates.push_back(one);
            }
        }
        else if (R <= 0.0)
            candidates.push_back(Eigen::VectorXd::Zero(n));

        for (const auto &y : candidates)
        {
            if (p.sum_rate(y) < R)
                continue;
            InitialPoint ip;
            ip.y = y;
            ip.slacks.s = Eigen::VectorXd(L);
            ip.slacks.i = Eigen::VectorXd(L);
            for (Eigen::Index l = 0; l < L; ++l)
            {
                const double recv = p.received(l, y);
                ip.slacks.s[l] = std::max(slack_s_floor, std::min(1.0 / recv, slack_s_upper));
                ip.slacks.i[l] = p.interference(l, y);
            }
            ip.slacks.anchor_s = ip.slacks.s;
            ip.slacks.anchor_i = ip.slacks.i;
            return ip;
        }
        return std::nullopt;
    }

    inline std::optional<InitialPoint> initialize(const CompactProblem &c)
    {
        Schedule all{std::vector<bool>(c.n_eh, true), std::vector<bool>(c.n_id(), true)};
        auto rp = restrict_problem(c, all);
        return initialize(rp.problem);
    }

    inline double schedule_threshold(const SCAConfig &cfg, double p0)
    {
        return cfg.schedule_threshold > 0.0 ? cfg.schedule_threshold : 1e-6 * p0;
    }

    // SCA over the power allocation of the beams `active` leaves on; the rest stay at zero.
    inline SolveResult solve_power_allocation(const CompactProblem &c, const Schedule &active, const SCAConfig &cfg)
    {
        if (!(cfg.xi > 0.0) || cfg.max_iterations < 1)
            throw DomainError("SCA config needs xi > 0 and max_iterations >= 1");
        const auto rp = restrict_problem(c, active);
        const PowerProblem &p = rp.problem;
        const Eigen::Index n_full = c.n_beams();

        SolveResult res;
        auto expand = [&](const Eigen::VectorXd &yr)
        {
            Eigen::VectorXd y = Eigen::VectorXd::Zero(n_full);
            for (std::size_t j = 0; j < rp.index.size(); ++j)
                y[rp.index[j]] = yr[static_cast<Eigen::Index>(j)];
            return y;
        };

        const auto init = initialize(p);
        if (!init)
        {
            res.status = SolveStatus::infeasible;
            res.y.y = Eigen::VectorXd::Zero(n_full);
            res.schedule = Schedule{std::vector<bool>(c.n_eh, false), std::vector<bool>(c.n_id(), false)};
            res.powers = BeamPowers{std::vector<double>(c.n_eh, 0.0), std::vector<double>(c.n_id(), 0.0)};
            res.diagnostics = "no initial candidate meets the rate requirement";
            return res;
        }

        Eigen::VectorXd y = init->y;
        SlackState slack = init->slacks;
        double q_prev = p.objective.dot(y);
        res.objective_trace.push_back(q_prev);
        res.status = SolveStatus::max_iterations;

        if (p.dim() == 0)
            res.status = SolveStatus::converged;
        for (int it = 1; it <= cfg.max_iterations && p.dim() > 0; ++it)
        {
            SubproblemSpec spec{p, slack.anchor_s, slack.anchor_i, y, slack.s, slack.i};
            SolverReport rep;
            try
            {
                rep = solve_subproblem(spec, cfg.tolerance);
            }
            catch (const std::exception &e)
            {
                throw SubproblemFailure(std::string("SCA iteration ") + std::to_string(it) + ": " + e.what());
            }
            y = rep.y;
            slack.s = rep.s;
            slack.i = rep.i;
            slack.anchor_s = rep.s;
            slack.anchor_i = rep.i;
            const double q = p.objective.dot(y);
            res.objective_trace.push_back(q);
            res.iterations = it;
            // without a rate constraint the subproblem is the whole problem
            if (!p.has_rate_constraint() || (q - q_prev) / std::max(q_prev, fractional_denominator) < cfg.xi)
            {
                res.status = SolveStatus::converged;
                break;
            }
            q_prev = q;
        }

        // schedule recovery, keeping sub-threshold ID power when dropping it would break the rate requirement
        const double R = c.rate_requirement;
        const double thr = schedule_threshold(cfg, c.power_budget);
        const Eigen::VectorXd raw = expand(y);
        RecoveredSchedule rec = recover_schedule(PowerVector{raw}, c.n_eh, thr);
        Eigen::VectorXd clean = eliminate_binaries(rec.schedule, rec.powers).y;
        if (c.sum_rate(clean) < R - 1e-4 && c.sum_rate(raw) >= R - 1e-4)
        {
            rec = recover_schedule(PowerVector{raw}, c.n_eh, std::numeric_limits<double>::min());
            clean = raw;
            res.diagnostics = "sub-threshold beams retained to keep the rate requirement";
        }
        res.schedule = rec.schedule;
        res.powers = rec.powers;
        res.residual_power = rec.residual_power;
        res.y.y = clean;
        res.harvested_q = c.objective(clean);
        res.sum_rate = c.sum_rate(clean);
        if (!(res.y.total() <= c.power_budget + 1e-9) || res.sum_rate < R - 1e-4)
            throw SubproblemFailure("SCA end point violates the exact constraints: power " +
                                    std::to_string(res.y.total()) + ", rate " + std::to_string(res.sum_rate));
        return res;
    }

    inline SolveResult sca_solve(const CompactProblem &c, const SCAConfig &cfg = {})
    {
        Schedule all{std::vector<bool>(c.n_eh, true), std::vector<bool>(c.n_id(), true)};
        return solve_power_allocation(c, all, cfg);
    }

    inline SolveResult sca_solve(const Scenario &s, const SCAConfig &cfg = {})
    {
        return sca_solve(build_compact(s), cfg);
    }
} // namespace nfswipt

#endif
