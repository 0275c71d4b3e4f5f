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

#ifndef NFSWIPT_CORRELATION_HPP
#define NFSWIPT_CORRELATION_HPP

#include "array_channel.hpp"
#include "errors.hpp"
#include "fresnel.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <limits>
#include <numbers>
#include <span>
#include <vector>

namespace nfswipt
{
    // Curvature differences below this (1/m) are treated as two planar wavefronts
    inline constexpr double degenerate_curvature = 1e-12;

    struct CorrelationParams
    {
        double beta1 = 0.0;
        double beta2 = 0.0;
    };

    // (1 - theta^2) / r, zero for a far-field endpoint (r = +inf)
    inline double wavefront_curvature(double spatial_angle, double distance)
    {
        if (std::isinf(distance))
            return 0.0;
        return (1.0 - spatial_angle * spatial_angle) / distance;
    }

    // Throws DegenerateCurvature when the two wavefront curvatures coincide
    inline CorrelationParams correlation_params(const ArrayGeometry &g, double theta_p, double r_p,
                                                double theta_q, double r_q)
    {
        const double dk = std::abs(wavefront_curvature(theta_p, r_p) - wavefront_curvature(theta_q, r_q));
        if (!(dk > degenerate_curvature))
            throw DegenerateCurvature("curvature difference " + std::to_string(dk) + " 1/m below threshold");
        const double root = std::sqrt(g.element_spacing() * dk);
        return {(theta_q - theta_p) / root, 0.5 * g.n_antennas() * root};
    }

    // |a(theta_p)^H a(theta_q)| in closed form (Dirichlet kernel)
    inline double far_field_correlation(int n_antennas, double theta_p, double theta_q)
    {
        const double x = 0.5 * std::numbers::pi * (theta_q - theta_p);
        const double den = n_antennas * std::sin(x);
        if (std::abs(den) < 1e-300 || std::abs(std::sin(x)) < 1e-12)
            return 1.0;
        return std::min(1.0, std::abs(std::sin(n_antennas * x) / den));
    }

    // Fresnel-integral approximation of the steering-vector correlation,
    // |(C^ + j S^) / (2 beta2)| with C^ = C(b1 + b2) - C(b1 - b2), S^ likewise.
    // Valid for half-wavelength spacing. Pass r = +inf for a far-field endpoint.
    inline double correlation_approx(const ArrayGeometry &g, double theta_p, double r_p, double theta_q, double r_q)
    {
        const auto [b1, b2] = correlation_params(g, theta_p, r_p, theta_q, r_q);
        const std::complex<double> v = fresnel_cs(b1 + b2) - fresnel_cs(b1 - b2);
        return std::min(1.0, std::abs(v) / (2.0 * b2));
    }

    // correlation_approx with the degenerate case routed to the Dirichlet kernel
    inline double correlation_approx_or_planar(const ArrayGeometry &g, double theta_p, double r_p,
                                               double theta_q, double r_q)
    {
        try
        {
            return correlation_approx(g, theta_p, r_p, theta_q, r_q);
        }
        catch (const DegenerateCurvature &)
        {
            return far_field_correlation(g.n_antennas(), theta_p, theta_q);
        }
    }

    // |v_p^H v_q| with each v the near- or far-field steering vector per its field type
    inline double correlation_exact(const ArrayGeometry &g, const Placement &p, const Placement &q,
                                    FieldType field_p, FieldType field_q)
    {
        check_placement(g, p, field_p);
        check_placement(g, q, field_q);
        if (field_p == FieldType::far && field_q == FieldType::far)
            return far_field_correlation(g.n_antennas(), p.spatial_angle, q.spatial_angle);
        const Eigen::VectorXcd vp = steering(g, p, field_p);
        const Eigen::VectorXcd vq = steering(g, q, field_q);
        return std::min(1.0, std::abs(vp.dot(vq)));
    }

    // Squared correlations among K near-field (EH) then M far-field (ID) receivers.
    // The masked form zeroes the last M diagonal entries.
    class CorrelationMatrix
    {
    public:
        CorrelationMatrix(Eigen::MatrixXd entries, int n_eh, bool masked)
            : entries_(std::move(entries)), n_eh_(n_eh), masked_(masked) {}

        const Eigen::MatrixXd &entries() const noexcept { return entries_; }
        double operator()(Eigen::Index p, Eigen::Index q) const { return entries_(p, q); }
        Eigen::Index size() const noexcept { return entries_.rows(); }
        int n_eh() const noexcept { return n_eh_; }
        int n_id() const noexcept { return static_cast<int>(entries_.rows()) - n_eh_; }
        bool is_masked() const noexcept { return masked_; }

        CorrelationMatrix masked() const
        {
            Eigen::MatrixXd e = entries_;
            for (Eigen::Index i = n_eh_; i < e.rows(); ++i)
                e(i, i) = 0.0;
            return {std::move(e), n_eh_, true};
        }

    private:
        Eigen::MatrixXd entries_;
        int n_eh_;
        bool masked_;
    };

    inline CorrelationMatrix build_correlation_matrix(const ArrayGeometry &g, std::span<const Placement> eh,
                                                      std::span<const Placement> id, bool masked)
    {
        if (eh.empty() || id.empty())
            throw DomainError("correlation matrix needs at least one EH and one ID receiver");
        const auto K = static_cast<Eigen::Index>(eh.size());
        const auto n = K + static_cast<Eigen::Index>(id.size());

        std::vector<Eigen::VectorXcd> beams;
        beams.reserve(n);
        for (const auto &p : eh)
        {
            check_placement(g, p, FieldType::near);
            beams.push_back(near_steering(g, p));
        }
        for (const auto &p : id)
        {
            check_placement(g, p, FieldType::far);
            beams.push_back(far_steering(g, p.spatial_angle));
        }

        Eigen::MatrixXd lambda = Eigen::MatrixXd::Identity(n, n);
        for (Eigen::Index p = 0; p < n; ++p)
            for (Eigen::Index q = p + 1; q < n; ++q)
            {
                const double eta = std::min(1.0, std::abs(beams[p].dot(beams[q])));
                lambda(p, q) = lambda(q, p) = eta * eta;
            }
        CorrelationMatrix full(std::move(lambda), static_cast<int>(K), false);
        return masked ? full.masked() : full;
    }
} // namespace nfswipt

#endif
