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

#ifndef NFSWIPT_ARRAY_CHANNEL_HPP
#define NFSWIPT_ARRAY_CHANNEL_HPP

#include "errors.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <string>

namespace nfswipt
{
    // Uniform linear array centred at the origin. Element n sits at offset
    // delta_n * d with delta_n = n - (N-1)/2, so the centre of the aperture is
    // the phase and distance reference for every receiver.
    class ArrayGeometry
    {
    public:
        ArrayGeometry(int n_antennas, double element_spacing, double wavelength)
            : n_(n_antennas), d_(element_spacing), lambda_(wavelength)
        {
            if (n_ < 2)
                throw DomainError("ArrayGeometry: need at least 2 antennas, got " + std::to_string(n_));
            if (!(d_ > 0.0) || !std::isfinite(d_))
                throw DomainError("ArrayGeometry: element spacing must be positive");
            if (!(lambda_ > 0.0) || !std::isfinite(lambda_))
                throw DomainError("ArrayGeometry: wavelength must be positive");
        }

        // Half-wavelength spaced array, the configuration every experiment uses
        static ArrayGeometry half_wavelength(int n_antennas, double wavelength)
        {
            return ArrayGeometry(n_antennas, 0.5 * wavelength, wavelength);
        }

        int n_antennas() const noexcept { return n_; }
        double element_spacing() const noexcept { return d_; }
        double wavelength() const noexcept { return lambda_; }

        // D = N * d
        double aperture() const noexcept { return n_ * d_; }

        double element_offset(int n) const
        {
            if (n < 0 || n >= n_)
                throw DomainError("element index " + std::to_string(n) + " outside [0, " + std::to_string(n_ - 1) + "]");
            return n - 0.5 * (n_ - 1);
        }

    private:
        int n_;
        double d_;
        double lambda_;
    };

    // Receiver position in polar coordinates about the array centre.
    // spatial_angle is theta = 2 d cos(phi) / lambda, not the physical angle phi.
    struct Placement
    {
        double spatial_angle = 0.0;
        double distance = 1.0;

        friend bool operator==(const Placement &, const Placement &) = default;
    };

    enum class FieldType
    {
        near,
        far
    };

    inline const char *to_string(FieldType f) { return f == FieldType::near ? "near" : "far"; }

    inline double rayleigh_distance(const ArrayGeometry &g)
    {
        const double D = g.aperture();
        return 2.0 * D * D / g.wavelength();
    }

    // Lower edge of the radiative Fresnel region, max(sqrt(D^3/lambda)/2, 1.2 D)
    inline double fresnel_region_min(const ArrayGeometry &g)
    {
        const double D = g.aperture();
        return std::max(0.5 * std::sqrt(D * D * D / g.wavelength()), 1.2 * D);
    }

    inline double spatial_angle_from_aod(const ArrayGeometry &g, double aod_rad)
    {
        return 2.0 * g.element_spacing() * std::cos(aod_rad) / g.wavelength();
    }

    inline void check_placement(const Placement &p)
    {
        if (!(p.distance > 0.0))
            throw DomainError("placement distance must be positive");
        if (!(std::abs(p.spatial_angle) <= 1.0))
            throw DomainError("spatial angle " + std::to_string(p.spatial_angle) + " outside [-1, 1]");
    }

    // Near-field receivers must lie inside the Rayleigh distance, far-field receivers at r >= Z.
    // The radiative Fresnel bound r_min is not enforced: the reference deployment places
    // EH receivers at 0.015 Z and 0.02 Z, below it. See in_fresnel_region().
    inline void check_placement(const ArrayGeometry &g, const Placement &p, FieldType field)
    {
        check_placement(p);
        const double Z = rayleigh_distance(g);
        if (field == FieldType::near)
        {
            if (!(p.distance < Z))
                throw DomainError("near-field placement at r = " + std::to_string(p.distance) +
                                  " m not inside the Rayleigh distance " + std::to_string(Z));
        }
        else if (!(p.distance >= Z))
            throw DomainError("far-field placement at r = " + std::to_string(p.distance) +
                              " m inside the Rayleigh distance " + std::to_string(Z));
    }

    inline bool in_fresnel_region(const ArrayGeometry &g, const Placement &p)
    {
        return p.distance > fresnel_region_min(g) && p.distance < rayleigh_distance(g);
    }

    // Spherical-wavefront distance from element n to the receiver
    inline double element_distance_exact(const ArrayGeometry &g, const Placement &p, int n)
    {
        const double dn = g.element_offset(n) * g.element_spacing();
        const double r = p.distance;
        return std::sqrt(r * r + dn * dn - 2.0 * r * p.spatial_angle * dn);
    }

    // Second-order (Fresnel) expansion of element_distance_exact
    inline double element_distance_fresnel(const ArrayGeometry &g, const Placement &p, int n)
    {
        const double dn = g.element_offset(n) * g.element_spacing();
        const double r = p.distance;
        const double t = p.spatial_angle;
        return r - dn * t + dn * dn * (1.0 - t * t) / (2.0 * r);
    }

    // Unit-norm near-field response b(theta, r); phases use the Fresnel distance
    inline Eigen::VectorXcd near_steering(const ArrayGeometry &g, const Placement &p)
    {
        check_placement(p);
        const int N = g.n_antennas();
        const double scale = 1.0 / std::sqrt(static_cast<double>(N));
        const double k = 2.0 * std::numbers::pi / g.wavelength();
        Eigen::VectorXcd b(N);
        for (int n = 0; n < N; ++n)
        {
            // (r_n - r) evaluated directly so the phase stays accurate for very large r
            const double dn = g.element_offset(n) * g.element_spacing();
            const double excess = -dn * p.spatial_angle + dn * dn * (1.0 - p.spatial_angle * p.spatial_angle) / (2.0 * p.distance);
            b[n] = std::polar(scale, -k * excess);
        }
        return b;
    }

    // Unit-norm far-field (DFT) response a(theta), entry n = exp(j pi n theta) / sqrt(N)
    inline Eigen::VectorXcd far_steering(const ArrayGeometry &g, double spatial_angle)
    {
        if (!(std::abs(spatial_angle) <= 1.0))
            throw DomainError("spatial angle " + std::to_string(spatial_angle) + " outside [-1, 1]");
        const int N = g.n_antennas();
        const double scale = 1.0 / std::sqrt(static_cast<double>(N));
        Eigen::VectorXcd a(N);
        for (int n = 0; n < N; ++n)
            a[n] = std::polar(scale, std::numbers::pi * n * spatial_angle);
        return a;
    }

    inline Eigen::VectorXcd steering(const ArrayGeometry &g, const Placement &p, FieldType field)
    {
        return field == FieldType::near ? near_steering(g, p) : far_steering(g, p.spatial_angle);
    }

    // Free-space amplitude lambda / (4 pi r), shared by all elements
    inline double channel_gain(double wavelength, double distance)
    {
        if (!(distance > 0.0))
            throw DomainError("channel_gain: distance must be positive");
        return wavelength / (4.0 * std::numbers::pi * distance);
    }

    // Effective array power gain g = N |h|^2
    inline double array_power_gain(const ArrayGeometry &g, double distance)
    {
        const double h = channel_gain(g.wavelength(), distance);
        return g.n_antennas() * h * h;
    }
} // namespace nfswipt

#endif
