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

#ifndef NFSWIPT_CONVEX_CORE_HPP
#define NFSWIPT_CONVEX_CORE_HPP

#include "barrier.hpp"
#include "errors.hpp"
#include "rate_bound.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <vector>

namespace nfswipt
{
    // One ID beam inside a power problem: received power gain * y[signal],
    // interference-plus-noise interference^T y + noise.
    struct RateLink
    {
        Eigen::Index signal = 0;
        double gain = 0.0;
        Eigen::VectorXd interference;
        double noise = 0.0;
    };

    // maximize objective^T y  s.t.  1^T y <= P0,  y >= 0,  sum_l rate_l(y) >= R
    // over the coordinates a schedule leaves free. R = -inf drops the rate constraint.
    struct PowerProblem
    {
        Eigen::VectorXd objective;
        double power_budget = 1.0;
        std::vector<RateLink> links;
        double rate_requirement = 0.0;

        Eigen::Index dim() const { return objective.size(); }
        bool has_rate_constraint() const { return std::isfinite(rate_requirement); }

        double received(std::size_t l, const Eigen::VectorXd &y) const { return links[l].gain * y[links[l].signal]; }
        double interference(std::size_t l, const Eigen::VectorXd &y) const
        {
            return links[l].interference.dot(y) + links[l].noise;
        }
        double sum_rate(const Eigen::VectorXd &y) const
        {
            double r = 0.0;
            for (std::size_t l = 0; l < links.size(); ++l)
                r += std::log2(1.0 + received(l, y) / interference(l, y));
            return r;
        }
        double max_gain() const
        {
            double g = 0.0;
            for (const auto &l : links)
                g = std::max(g, l.gain);
            return g;
        }
    };

    // (P5) at one Taylor point. start_* is the warm start; S and I may be left empty.
    struct SubproblemSpec
    {
        PowerProblem problem;
        Eigen::VectorXd anchor_s;
        Eigen::VectorXd anchor_i;
        Eigen::VectorXd start_y;
        Eigen::VectorXd start_s;
        Eigen::VectorXd start_i;
    };

    enum class SolverStatus
    {
        optimal,
        max_iterations
    };

    struct SolverReport
    {
        Eigen::VectorXd y;
        Eigen::VectorXd s; // 1/S_m >= received power
        Eigen::VectorXd i; // interference-plus-noise slack [W]
        double objective = 0.0;
        double primal_residual = 0.0;
        double dual_residual = 0.0;
        double duality_gap = 0.0; // relative
        double rate_slack = std::numeric_limits<double>::infinity(); // sum of bounds minus R
        int iterations = 0;
        bool merit_monotone = true;
        bool warm_started = false;
        SolverStatus status = SolverStatus::optimal;

        bool rate_active(double tol = 1e-5) const { return rate_slack < tol; }
    };

    inline constexpr double slack_s_upper = 1e15;

    namespace detail
    {
        struct Scaling
        {
            double p0;
            double wscale;
            std::vector<double> gs;    // gain * P0
            std::vector<double> sigma; // noise
        };

        inline Scaling make_scaling(const PowerProblem &p)
        {
            Scaling sc{p.power_budget, p.objective.cwiseAbs().maxCoeff(), {}, {}};
            if (!(sc.wscale > 0.0))
                sc.wscale = 1.0;
            for (const auto &l : p.links)
            {
                sc.gs.push_back(l.gain * p.power_budget);
                sc.sigma.push_back(l.noise);
            }
            return sc;
        }

        inline std::vector<RateBound> bounds(const SubproblemSpec &spec)
        {
            std::vector<RateBound> b;
            for (std::size_t l = 0; l < spec.problem.links.size(); ++l)
                b.push_back(tangent_rate_bound(spec.anchor_s[l], spec.anchor_i[l]));
            return b;
        }

        inline void check_spec(const SubproblemSpec &spec)
        {
            const auto &p = spec.problem;
            if (!(p.power_budget > 0.0))
                throw DomainError("subproblem power budget must be positive");
            for (const auto &l : p.links)
            {
                if (l.signal < 0 || l.signal >= p.dim() || l.interference.size() != p.dim())
                    throw DomainError("rate link inconsistent with problem dimension");
                if (!(l.gain > 0.0) || !(l.noise > 0.0))
                    throw DomainError("rate link gain and noise must be positive");
            }
            if (p.has_rate_constraint())
            {
                const auto L = static_cast<Eigen::Index>(p.links.size());
                if (spec.anchor_s.size() != L || spec.anchor_i.size() != L)
                    throw DomainError("anchor size does not match the number of rate links");
                if (!(spec.anchor_s.array() > 0.0).all() || !(spec.anchor_i.array() > 0.0).all())
                    throw DomainError("anchor slacks must be positive");
            }
        }

        // Scaled start z = y / P0 pulled strictly inside the simplex
        inline Eigen::VectorXd interior_z(const Eigen::VectorXd &y, double p0, Eigen::Index n)
        {
            Eigen::VectorXd z = (y.size() == n) ? Eigen::VectorXd(y / p0) : Eigen::VectorXd::Zero(n);
            z = z.cwiseMax(0.0);
            const double eps = 1e-6;
            const double total = z.sum();
            if (total > 1.0)
                z /= total;
            return (1.0 - eps) * z + Eigen::VectorXd::Constant(n, eps / (n + 1.0));
        }

        inline ipm::Options barrier_options(double tolerance, bool warm)
        {
            ipm::Options o;
            o.tolerance = tolerance;
            o.t0 = warm ? 100.0 : 1.0;
            return o;
        }
    } // namespace detail

    // Interior-point solve of (P5) over (y, S, I) with the hyperbolic constraints
    // S_m (c_m^T y) >= 1 written as cones ||(2, s - t)|| <= s + t in scaled units:
    // z = y / P0, s = S g P0, iota = I / sigma^2.
    inline SolverReport solve_subproblem(const SubproblemSpec &spec, double tolerance = 1e-8)
    {
        detail::check_spec(spec);
        const PowerProblem &p = spec.problem;
        const auto sc = detail::make_scaling(p);
        const Eigen::Index n = p.dim();
        const bool with_rate = p.has_rate_constraint();
        const Eigen::Index L = with_rate ? static_cast<Eigen::Index>(p.links.size()) : 0;
        const Eigen::Index dim = n + 2 * L;
        const auto zs = [](Eigen::Index j) { return j; };
        const auto ss = [n](Eigen::Index l) { return n + l; };
        const auto is = [n, L](Eigen::Index l) { return n + L + l; };

        ipm::ConvexProgram prog;
        prog.c = Eigen::VectorXd::Zero(dim);
        prog.c.head(n) = -p.objective / sc.wscale;

        {
            ipm::LinearLe budget{Eigen::VectorXd::Zero(dim), 1.0};
            budget.a.head(n).setOnes();
            prog.constraints.emplace_back(std::move(budget));
        }
        for (Eigen::Index j = 0; j < n; ++j)
        {
            ipm::LinearLe nonneg{Eigen::VectorXd::Zero(dim), 0.0};
            nonneg.a[zs(j)] = -1.0;
            prog.constraints.emplace_back(std::move(nonneg));
        }

        std::vector<RateBound> rb;
        if (with_rate)
        {
            rb = detail::bounds(spec);
            const double gmax = p.max_gain();
            ipm::LinearLe rate{Eigen::VectorXd::Zero(dim), -p.rate_requirement};
            for (Eigen::Index l = 0; l < L; ++l)
            {
                const auto &lk = p.links[l];
                // (P0 / sigma) u^T z + 1 <= iota
                ipm::LinearLe interf{Eigen::VectorXd::Zero(dim), -1.0};
                interf.a.head(n) = lk.interference * (sc.p0 / sc.sigma[l]);
                interf.a[is(l)] = -1.0;
                prog.constraints.emplace_back(std::move(interf));

                // ||(2, s - z_sig)|| <= s + z_sig
                ipm::SecondOrderCone cone{Eigen::MatrixXd::Zero(2, dim), Eigen::Vector2d(2.0, 0.0),
                                          Eigen::VectorXd::Zero(dim), 0.0};
                cone.A(1, ss(l)) = 1.0;
                cone.A(1, zs(lk.signal)) = -1.0;
                cone.e[ss(l)] = 1.0;
                cone.e[zs(lk.signal)] = 1.0;
                prog.constraints.emplace_back(std::move(cone));

                ipm::LinearLe s_box{Eigen::VectorXd::Zero(dim), slack_s_upper * sc.gs[l]};
                s_box.a[ss(l)] = 1.0;
                prog.constraints.emplace_back(std::move(s_box));
                ipm::LinearLe i_box{Eigen::VectorXd::Zero(dim), (sc.p0 * gmax + sc.sigma[l]) / sc.sigma[l]};
                i_box.a[is(l)] = 1.0;
                prog.constraints.emplace_back(std::move(i_box));

                rate.a[ss(l)] = rb[l].slope_s / sc.gs[l];
                rate.a[is(l)] = rb[l].slope_i * sc.sigma[l];
                rate.b += rb[l].constant;
            }
            prog.constraints.emplace_back(std::move(rate));
        }

        auto start_point = [&](bool warm)
        {
            Eigen::VectorXd x(dim);
            x.head(n) = warm ? detail::interior_z(spec.start_y, sc.p0, n)
                             : Eigen::VectorXd(Eigen::VectorXd::Constant(n, 1.0 / (n + 1.0)));
            if (warm && spec.start_y.size() == n && (spec.start_y.array() > 0.0).all() &&
                spec.start_y.sum() < sc.p0)
                x.head(n) = spec.start_y / sc.p0;
            for (Eigen::Index l = 0; l < L; ++l)
            {
                const auto &lk = p.links[l];
                const double z = x[zs(lk.signal)];
                const double iota_tight = lk.interference.dot(x.head(n)) * sc.p0 / sc.sigma[l] + 1.0;
                double s = (1.0 + 1e-9) / z;
                double iota = iota_tight * (1.0 + 1e-9);
                if (warm && spec.start_s.size() == L && spec.start_i.size() == L)
                {
                    const double s_given = spec.start_s[l] * sc.gs[l];
                    const double i_given = spec.start_i[l] / sc.sigma[l];
                    if (s_given * z > 1.0)
                        s = s_given;
                    if (i_given > iota_tight)
                        iota = i_given;
                }
                x[ss(l)] = s;
                x[is(l)] = iota;
            }
            return x;
        };

        auto run = [&](bool warm)
        {
            const ipm::Options opt = detail::barrier_options(tolerance, warm);
            const auto x0 = ipm::find_interior_point(prog, start_point(warm), opt);
            if (!x0)
                throw InfeasibleSubproblem("no strictly feasible point for the convex subproblem");
            return ipm::minimize(prog, *x0, opt);
        };

        SolverReport rep;
        ipm::Result r;
        try
        {
            r = run(true);
            rep.warm_started = true;
        }
        catch (const NumericalFailure &)
        {
            r = run(false);
        }
        if (r.status == ipm::Status::max_iterations && rep.warm_started)
        {
            r = run(false);
            rep.warm_started = false;
        }

        rep.y = r.x.head(n) * sc.p0;
        rep.s = Eigen::VectorXd(L);
        rep.i = Eigen::VectorXd(L);
        double bound_sum = 0.0;
        for (Eigen::Index l = 0; l < L; ++l)
        {
            rep.s[l] = r.x[ss(l)] / sc.gs[l];
            rep.i[l] = r.x[is(l)] * sc.sigma[l];
            bound_sum += rb[l](rep.s[l], rep.i[l]);
        }
        if (with_rate)
            rep.rate_slack = bound_sum - p.rate_requirement;
        rep.objective = p.objective.dot(rep.y);
        rep.primal_residual = r.primal_residual;
        rep.dual_residual = r.dual_residual;
        rep.duality_gap = r.duality_gap / std::max(std::abs(r.objective), 1e-6);
        rep.iterations = r.newton_iterations;
        rep.merit_monotone = r.merit_monotone;
        rep.status = r.status == ipm::Status::optimal ? SolverStatus::optimal : SolverStatus::max_iterations;
        return rep;
    }

    // Cross-check of solve_subproblem: the slacks are substituted out
    // (S = 1 / (g y_sig), I tight, both optimal because the bound decreases in S and I),
    // leaving a smooth concave rate constraint in y alone.
    inline SolverReport eliminate_slacks_check(const SubproblemSpec &spec, double tolerance = 1e-8)
    {
        detail::check_spec(spec);
        const PowerProblem &p = spec.problem;
        const auto sc = detail::make_scaling(p);
        const Eigen::Index n = p.dim();
        const bool with_rate = p.has_rate_constraint();
        const auto L = static_cast<Eigen::Index>(p.links.size());

        ipm::ConvexProgram prog;
        prog.c = -p.objective / sc.wscale;
        prog.constraints.emplace_back(ipm::LinearLe{Eigen::VectorXd::Ones(n), 1.0});
        for (Eigen::Index j = 0; j < n; ++j)
        {
            ipm::LinearLe nonneg{Eigen::VectorXd::Zero(n), 0.0};
            nonneg.a[j] = -1.0;
            prog.constraints.emplace_back(std::move(nonneg));
        }

        std::vector<RateBound> rb;
        if (with_rate)
        {
            rb = detail::bounds(spec);
            const double gmax = p.max_gain();
            struct Term
            {
                Eigen::Index sig;
                double a; // coefficient of 1 / z_sig
                Eigen::VectorXd u; // coefficient of z in iota
                double b; // coefficient of iota
            };
            std::vector<Term> terms;
            double constant = -p.rate_requirement;
            for (Eigen::Index l = 0; l < L; ++l)
            {
                const auto &lk = p.links[l];
                const Eigen::VectorXd u = lk.interference * (sc.p0 / sc.sigma[l]);
                terms.push_back({lk.signal, rb[l].slope_s / sc.gs[l], u, rb[l].slope_i * sc.sigma[l]});
                constant += rb[l].constant - terms.back().b; // iota = u^T z + 1

                // S <= upper  <=>  z_sig >= 1 / (upper g P0)
                ipm::LinearLe floor{Eigen::VectorXd::Zero(n), -1.0 / (slack_s_upper * sc.gs[l])};
                floor.a[lk.signal] = -1.0;
                prog.constraints.emplace_back(std::move(floor));
                // interference box
                ipm::LinearLe ibox{u, (sc.p0 * gmax + sc.sigma[l]) / sc.sigma[l] - 1.0};
                prog.constraints.emplace_back(std::move(ibox));
            }
            ipm::SmoothConcave g;
            g.value = [terms, constant](const Eigen::VectorXd &z)
            {
                double v = constant;
                for (const auto &t : terms)
                {
                    if (!(z[t.sig] > 0.0))
                        return std::numeric_limits<double>::quiet_NaN();
                    v -= t.a / z[t.sig] + t.b * t.u.dot(z);
                }
                return v;
            };
            g.gradient = [terms](const Eigen::VectorXd &z)
            {
                Eigen::VectorXd grad = Eigen::VectorXd::Zero(z.size());
                for (const auto &t : terms)
                {
                    grad[t.sig] += t.a / (z[t.sig] * z[t.sig]);
                    grad -= t.b * t.u;
                }
                return grad;
            };
            g.hessian = [terms](const Eigen::VectorXd &z)
            {
                Eigen::MatrixXd h = Eigen::MatrixXd::Zero(z.size(), z.size());
                for (const auto &t : terms)
                    h(t.sig, t.sig) -= 2.0 * t.a / (z[t.sig] * z[t.sig] * z[t.sig]);
                return h;
            };
            prog.constraints.emplace_back(std::move(g));
        }

        const ipm::Options opt = detail::barrier_options(tolerance, false);
        auto x0 = ipm::find_interior_point(prog, detail::interior_z(spec.start_y, sc.p0, n), opt);
        if (!x0)
            x0 = ipm::find_interior_point(prog, detail::interior_z(Eigen::VectorXd::Zero(n), sc.p0, n), opt);
        if (!x0)
            throw InfeasibleSubproblem("no strictly feasible point for the reduced subproblem");
        const ipm::Result r = ipm::minimize(prog, *x0, opt);

        SolverReport rep;
        rep.y = r.x * sc.p0;
        rep.s = Eigen::VectorXd(with_rate ? L : 0);
        rep.i = Eigen::VectorXd(with_rate ? L : 0);
        if (with_rate)
        {
            double bound_sum = 0.0;
            for (Eigen::Index l = 0; l < L; ++l)
            {
                rep.s[l] = 1.0 / p.received(l, rep.y);
                rep.i[l] = p.interference(l, rep.y);
                bound_sum += rb[l](rep.s[l], rep.i[l]);
            }
            rep.rate_slack = bound_sum - p.rate_requirement;
        }
        rep.objective = p.objective.dot(rep.y);
        rep.primal_residual = r.primal_residual;
        rep.dual_residual = r.dual_residual;
        rep.duality_gap = r.duality_gap / std::max(std::abs(r.objective), 1e-6);
        rep.iterations = r.newton_iterations;
        rep.merit_monotone = r.merit_monotone;
        rep.status = r.status == ipm::Status::optimal ? SolverStatus::optimal : SolverStatus::max_iterations;
        return rep;
    }
} // namespace nfswipt

#endif
