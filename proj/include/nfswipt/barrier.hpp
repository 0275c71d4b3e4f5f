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

#ifndef NFSWIPT_BARRIER_HPP
#define NFSWIPT_BARRIER_HPP

#include "errors.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <variant>
#include <vector>

// Dense log-barrier interior-point method for small convex programs
//
//     minimize c^T x  subject to  a_i^T x <= b_i,  ||A_j x + b_j|| <= e_j^T x + f_j,  g_k(x) >= 0
//
// with g_k smooth and concave. Infeasible starts go through a phase-I problem
// that shifts the violated constraints by one extra variable.
namespace nfswipt::ipm
{
    using Eigen::MatrixXd;
    using Eigen::VectorXd;

    struct LinearLe
    {
        VectorXd a;
        double b = 0.0;
    };

    struct SecondOrderCone
    {
        MatrixXd A;
        VectorXd b;
        VectorXd e;
        double f = 0.0;
    };

    // g(x) >= 0 with g concave. value() returns NaN outside its domain.
    struct SmoothConcave
    {
        std::function<double(const VectorXd &)> value;
        std::function<VectorXd(const VectorXd &)> gradient;
        std::function<MatrixXd(const VectorXd &)> hessian;
    };

    using Constraint = std::variant<LinearLe, SecondOrderCone, SmoothConcave>;

    struct ConvexProgram
    {
        VectorXd c;
        std::vector<Constraint> constraints;

        Eigen::Index dim() const { return c.size(); }
    };

    // Positive margin of a constraint at x (the quantity whose log forms the barrier);
    // nonpositive or NaN means x is outside the strict interior.
    inline double margin(const Constraint &con, const VectorXd &x)
    {
        return std::visit(
            [&](const auto &k) -> double
            {
                using T = std::decay_t<decltype(k)>;
                if constexpr (std::is_same_v<T, LinearLe>)
                    return k.b - k.a.dot(x);
                else if constexpr (std::is_same_v<T, SecondOrderCone>)
                {
                    const double u = k.e.dot(x) + k.f;
                    const double v = (k.A * x + k.b).norm();
                    return u - v;
                }
                else
                    return k.value(x);
            },
            con);
    }

    inline double barrier_parameter(const Constraint &con)
    {
        return std::holds_alternative<SecondOrderCone>(con) ? 2.0 : 1.0;
    }

    // Adds -log-barrier value, gradient and Hessian of one constraint. Returns false outside the domain.
    inline bool accumulate(const Constraint &con, const VectorXd &x, double &value, VectorXd *grad, MatrixXd *hess)
    {
        return std::visit(
            [&](const auto &k) -> bool
            {
                using T = std::decay_t<decltype(k)>;
                if constexpr (std::is_same_v<T, LinearLe>)
                {
                    const double s = k.b - k.a.dot(x);
                    if (!(s > 0.0))
                        return false;
                    value -= std::log(s);
                    if (grad)
                        *grad += k.a / s;
                    if (hess)
                        hess->noalias() += (k.a * k.a.transpose()) / (s * s);
                    return true;
                }
                else if constexpr (std::is_same_v<T, SecondOrderCone>)
                {
                    const double u = k.e.dot(x) + k.f;
                    const VectorXd v = k.A * x + k.b;
                    const double psi = u * u - v.squaredNorm();
                    if (!(u > 0.0) || !(psi > 0.0))
                        return false;
                    value -= std::log(psi);
                    if (grad || hess)
                    {
                        const VectorXd dpsi = 2.0 * (u * k.e - k.A.transpose() * v);
                        if (grad)
                            *grad -= dpsi / psi;
                        if (hess)
                        {
                            const MatrixXd d2psi = 2.0 * (k.e * k.e.transpose() - k.A.transpose() * k.A);
                            hess->noalias() += (dpsi * dpsi.transpose()) / (psi * psi) - d2psi / psi;
                        }
                    }
                    return true;
                }
                else
                {
                    const double gv = k.value(x);
                    if (!(gv > 0.0))
                        return false;
                    value -= std::log(gv);
                    if (grad || hess)
                    {
                        const VectorXd dg = k.gradient(x);
                        if (grad)
                            *grad -= dg / gv;
                        if (hess)
                            hess->noalias() += (dg * dg.transpose()) / (gv * gv) - k.hessian(x) / gv;
                    }
                    return true;
                }
            },
            con);
    }

    // Constraint function psi(x) >= 0 whose -log forms the barrier, with its gradient
    inline double barrier_argument(const Constraint &con, const VectorXd &x, VectorXd &dpsi)
    {
        return std::visit(
            [&](const auto &k) -> double
            {
                using T = std::decay_t<decltype(k)>;
                if constexpr (std::is_same_v<T, LinearLe>)
                {
                    dpsi = -k.a;
                    return k.b - k.a.dot(x);
                }
                else if constexpr (std::is_same_v<T, SecondOrderCone>)
                {
                    const double u = k.e.dot(x) + k.f;
                    const VectorXd v = k.A * x + k.b;
                    dpsi = 2.0 * (u * k.e - k.A.transpose() * v);
                    return u * u - v.squaredNorm();
                }
                else
                {
                    dpsi = k.gradient(x);
                    return k.value(x);
                }
            },
            con);
    }

    struct Options
    {
        double tolerance = 1e-8;   // relative duality gap target
        double gap_floor = 1e-6;   // objective magnitude below which the gap target is absolute
        double t0 = 1.0;
        double mu = 10.0;
        int max_newton = 500;
        double newton_tolerance = 1e-14; // on lambda^2 / 2
    };

    enum class Status
    {
        optimal,
        max_iterations,
        stopped_early // phase I reached strict feasibility
    };

    struct Result
    {
        VectorXd x;
        double objective = 0.0;
        double duality_gap = 0.0;
        double dual_residual = 0.0;   // || c - sum lambda_i grad psi_i || / max(1, ||c||)
        double primal_residual = 0.0; // largest constraint violation, 0 in the interior
        int newton_iterations = 0;
        int outer_iterations = 0;
        bool merit_monotone = true;
        Status status = Status::optimal;
    };

    inline bool strictly_feasible(const ConvexProgram &p, const VectorXd &x)
    {
        for (const auto &con : p.constraints)
            if (!(margin(con, x) > 0.0))
                return false;
        return true;
    }

    inline double primal_violation(const ConvexProgram &p, const VectorXd &x)
    {
        double worst = 0.0;
        for (const auto &con : p.constraints)
        {
            const double m = margin(con, x);
            worst = std::max(worst, std::isnan(m) ? std::numeric_limits<double>::infinity() : -m);
        }
        return worst;
    }

    namespace detail
    {
        inline bool merit(const ConvexProgram &p, const VectorXd &x, double t, double &value, VectorXd *grad,
                          MatrixXd *hess)
        {
            value = t * p.c.dot(x);
            if (grad)
                *grad = t * p.c;
            if (hess)
                hess->setZero(p.dim(), p.dim());
            for (const auto &con : p.constraints)
                if (!accumulate(con, x, value, grad, hess))
                    return false;
            return std::isfinite(value);
        }

        // Newton direction with symmetric diagonal equilibration
        inline VectorXd newton_step(const MatrixXd &H, const VectorXd &g)
        {
            const VectorXd d = H.diagonal().cwiseAbs().cwiseMax(1e-300).cwiseSqrt().cwiseInverse();
            const MatrixXd Hs = d.asDiagonal() * H * d.asDiagonal();
            Eigen::LDLT<MatrixXd> ldlt(Hs);
            VectorXd step;
            if (ldlt.info() == Eigen::Success && ldlt.isPositive())
                step = ldlt.solve(-(d.asDiagonal() * g));
            if (step.size() == 0 || !step.allFinite())
            {
                MatrixXd reg = Hs;
                reg.diagonal().array() += 1e-10;
                Eigen::LLT<MatrixXd> llt(reg);
                if (llt.info() != Eigen::Success)
                    throw NumericalFailure("barrier Hessian is not positive definite");
                step = llt.solve(-(d.asDiagonal() * g));
            }
            return d.asDiagonal() * step;
        }
    } // namespace detail

    // Barrier method from a strictly feasible x0. `stop` is polled after every
    // Newton step and ends the solve early when it returns true.
    inline Result minimize(const ConvexProgram &p, VectorXd x0, const Options &opt = {},
                           const std::function<bool(const VectorXd &)> &stop = {})
    {
        if (!strictly_feasible(p, x0))
            throw InfeasibleSubproblem("barrier start point is not strictly feasible");

        double nu = 0.0;
        for (const auto &con : p.constraints)
            nu += barrier_parameter(con);

        Result res;
        VectorXd x = std::move(x0);
        double t = opt.t0;
        const bool trivial_objective = p.c.isZero(0.0);
        const double cnorm = std::max(1.0, p.c.norm());

        // Multipliers lambda_i = (1 - grad psi_i^T dx / psi_i) / (t psi_i) from one more Newton
        // step dx (primal-dual estimate); the dual residual is || c - sum lambda_i grad psi_i ||.
        auto finish = [&](Status status)
        {
            double v;
            VectorXd grad;
            MatrixXd hess;
            detail::merit(p, x, t, v, &grad, &hess);
            const VectorXd dx = detail::newton_step(hess, grad);
            VectorXd r = p.c, dpsi;
            for (const auto &con : p.constraints)
            {
                const double psi = barrier_argument(con, x, dpsi);
                const double lambda = std::max(0.0, (1.0 - dpsi.dot(dx) / psi) / (t * psi));
                r -= lambda * dpsi;
            }
            res.x = x;
            res.objective = p.c.dot(x);
            res.duality_gap = trivial_objective ? 0.0 : nu / t;
            res.dual_residual = r.norm() / cnorm;
            res.primal_residual = primal_violation(p, x);
            res.status = status;
            return res;
        };

        for (;;)
        {
            ++res.outer_iterations;
            // centering
            double last_lambda2 = INFINITY;
            int stalls = 0;
            for (;;)
            {
                double f;
                VectorXd grad;
                MatrixXd hess;
                if (!detail::merit(p, x, t, f, &grad, &hess))
                    throw NumericalFailure("barrier iterate left the domain");
                const VectorXd dx = detail::newton_step(hess, grad);
                const double lambda2 = -grad.dot(dx);
                if (!(lambda2 >= 0.0) || !std::isfinite(lambda2))
                    throw NumericalFailure("Newton decrement is not finite");
                if (lambda2 / 2.0 <= opt.newton_tolerance)
                    break;
                if (res.newton_iterations >= opt.max_newton)
                    return finish(Status::max_iterations);

                double alpha = 1.0, f_new = 0.0;
                bool accepted = false;
                if (lambda2 < 0.1)
                {
                    // quadratic region: take the full step while the decrement keeps shrinking;
                    // the merit change here can fall below its rounding error
                    if (lambda2 >= 0.25 * last_lambda2 && ++stalls > 3)
                    {
                        ++res.newton_iterations;
                        break;
                    }
                    accepted = detail::merit(p, x + dx, t, f_new, nullptr, nullptr);
                }
                last_lambda2 = lambda2;
                if (!accepted)
                {
                    const double slope = grad.dot(dx);
                    for (int ls = 0; ls < 200; ++ls)
                    {
                        const VectorXd xn = x + alpha * dx;
                        if (detail::merit(p, xn, t, f_new, nullptr, nullptr) && f_new <= f + 0.01 * alpha * slope)
                        {
                            accepted = true;
                            break;
                        }
                        alpha *= 0.5;
                    }
                }
                ++res.newton_iterations;
                if (!accepted)
                {
                    // no progress possible in floating point: the point is as centred as it gets
                    break;
                }
                if (f_new > f + 1e-13 * std::abs(f))
                    res.merit_monotone = false;
                x += alpha * dx;
                if (stop && stop(x))
                    return finish(Status::stopped_early);
            }
            if (trivial_objective)
                return finish(Status::optimal);
            const double scale = std::max(std::abs(p.c.dot(x)), opt.gap_floor);
            if (nu / t <= opt.tolerance * scale)
                return finish(Status::optimal);
            if (res.newton_iterations >= opt.max_newton)
                return finish(Status::max_iterations);
            t *= opt.mu;
        }
    }

    // Finds a strictly feasible point by minimizing a shift s applied to the
    // constraints x0 violates. Returns nullopt when the shifted optimum stays >= 0.
    inline std::optional<VectorXd> find_interior_point(const ConvexProgram &p, const VectorXd &x0,
                                                       const Options &opt = {})
    {
        if (strictly_feasible(p, x0))
            return x0;
        const Eigen::Index n = p.dim();
        ConvexProgram phase1;
        phase1.c = VectorXd::Zero(n + 1);
        phase1.c[n] = 1.0;
        double s0 = 0.0;
        for (const auto &con : p.constraints)
        {
            const double m = margin(con, x0);
            if (std::isnan(m))
                throw InfeasibleSubproblem("phase-I start outside a constraint's domain");
            const bool shift = !(m > 0.0);
            if (shift)
                s0 = std::max(s0, -m);
            std::visit(
                [&](const auto &k)
                {
                    using T = std::decay_t<decltype(k)>;
                    if constexpr (std::is_same_v<T, LinearLe>)
                    {
                        LinearLe l{VectorXd::Zero(n + 1), k.b};
                        l.a.head(n) = k.a;
                        l.a[n] = shift ? -1.0 : 0.0;
                        phase1.constraints.emplace_back(std::move(l));
                    }
                    else if constexpr (std::is_same_v<T, SecondOrderCone>)
                    {
                        SecondOrderCone q{MatrixXd::Zero(k.A.rows(), n + 1), k.b, VectorXd::Zero(n + 1), k.f};
                        q.A.leftCols(n) = k.A;
                        q.e.head(n) = k.e;
                        q.e[n] = shift ? 1.0 : 0.0;
                        phase1.constraints.emplace_back(std::move(q));
                    }
                    else
                    {
                        const double sh = shift ? 1.0 : 0.0;
                        SmoothConcave g;
                        g.value = [k, n, sh](const VectorXd &xs) { return k.value(xs.head(n)) + sh * xs[n]; };
                        g.gradient = [k, n, sh](const VectorXd &xs)
                        {
                            VectorXd out(n + 1);
                            out.head(n) = k.gradient(xs.head(n));
                            out[n] = sh;
                            return out;
                        };
                        g.hessian = [k, n](const VectorXd &xs)
                        {
                            MatrixXd out = MatrixXd::Zero(n + 1, n + 1);
                            out.topLeftCorner(n, n) = k.hessian(xs.head(n));
                            return out;
                        };
                        phase1.constraints.emplace_back(std::move(g));
                    }
                },
                con);
        }
        const double floor = -1.0;
        {
            LinearLe lb{VectorXd::Zero(n + 1), -floor};
            lb.a[n] = -1.0;
            phase1.constraints.emplace_back(std::move(lb));
        }
        VectorXd xs(n + 1);
        xs.head(n) = x0;
        xs[n] = s0 + 1.0;

        Options o = opt;
        o.gap_floor = 1.0;
        const Result r = minimize(phase1, xs, o, [&](const VectorXd &v) { return v[n] < 0.0 && strictly_feasible(p, v.head(n)); });
        if (r.status == Status::stopped_early)
            return VectorXd(r.x.head(n));
        return std::nullopt;
    }
} // namespace nfswipt::ipm

#endif
