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

#ifndef NFSWIPT_SWIPT_MODEL_HPP
#define NFSWIPT_SWIPT_MODEL_HPP

#include "array_channel.hpp"
#include "correlation.hpp"
#include "errors.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <string>
#include <vector>

namespace nfswipt
{
    struct EhReceiver
    {
        Placement placement;
        double weight = 1.0; // alpha_k
    };

    struct IdReceiver
    {
        Placement placement;
        double noise_power = 1e-11; // sigma_m^2 [W]
    };

    struct Scenario
    {
        ArrayGeometry geometry;
        std::vector<EhReceiver> eh;
        std::vector<IdReceiver> id;
        double power_budget = 1.0;       // P0 [W]
        double harvest_efficiency = 0.5; // zeta
        double rate_requirement = 0.0;   // R [bits/s/Hz]

        int n_eh() const noexcept { return static_cast<int>(eh.size()); }
        int n_id() const noexcept { return static_cast<int>(id.size()); }
        int n_beams() const noexcept { return n_eh() + n_id(); }

        std::vector<Placement> eh_placements() const
        {
            std::vector<Placement> out;
            for (const auto &r : eh)
                out.push_back(r.placement);
            return out;
        }

        std::vector<Placement> id_placements() const
        {
            std::vector<Placement> out;
            for (const auto &r : id)
                out.push_back(r.placement);
            return out;
        }

        void validate() const
        {
            if (eh.empty())
                throw DomainError("scenario needs at least one EH receiver");
            if (id.empty())
                throw DomainError("scenario needs at least one ID receiver");
            if (!(power_budget > 0.0))
                throw DomainError("power budget must be positive");
            if (!(harvest_efficiency > 0.0 && harvest_efficiency <= 1.0))
                throw DomainError("harvest efficiency must lie in (0, 1]");
            if (!(rate_requirement >= 0.0))
                throw DomainError("rate requirement must be nonnegative");
            for (std::size_t k = 0; k < eh.size(); ++k)
            {
                check_placement(geometry, eh[k].placement, FieldType::near);
                if (!(eh[k].weight >= 0.0))
                    throw DomainError("EH weight " + std::to_string(k) + " must be nonnegative");
            }
            for (std::size_t m = 0; m < id.size(); ++m)
            {
                check_placement(geometry, id[m].placement, FieldType::far);
                if (!(id[m].noise_power > 0.0))
                    throw DomainError("ID noise power " + std::to_string(m) + " must be positive");
            }
        }
    };

    struct Schedule
    {
        std::vector<bool> eh;
        std::vector<bool> id;

        friend bool operator==(const Schedule &, const Schedule &) = default;

        int count() const
        {
            int c = 0;
            for (bool b : eh)
                c += b;
            for (bool b : id)
                c += b;
            return c;
        }
    };

    // Per-receiver transmit powers P^EH_k, P^ID_m before binary elimination
    struct BeamPowers
    {
        std::vector<double> eh;
        std::vector<double> id;

        friend bool operator==(const BeamPowers &, const BeamPowers &) = default;
    };

    // y = [P~EH_1 .. P~EH_K, P~ID_1 .. P~ID_M], P~ = s * P
    struct PowerVector
    {
        Eigen::VectorXd y;

        double total() const { return y.sum(); }
    };

    inline PowerVector eliminate_binaries(const Schedule &s, const BeamPowers &p)
    {
        if (s.eh.size() != p.eh.size() || s.id.size() != p.id.size())
            throw DomainError("schedule and power lists differ in size");
        const auto K = static_cast<Eigen::Index>(p.eh.size());
        PowerVector out{Eigen::VectorXd(K + static_cast<Eigen::Index>(p.id.size()))};
        for (Eigen::Index k = 0; k < K; ++k)
            out.y[k] = s.eh[k] ? p.eh[k] : 0.0;
        for (std::size_t m = 0; m < p.id.size(); ++m)
            out.y[K + m] = s.id[m] ? p.id[m] : 0.0;
        return out;
    }

    struct RecoveredSchedule
    {
        Schedule schedule;
        BeamPowers powers;
        double residual_power = 0.0; // power dropped from beams below the threshold
    };

    // Beams at or below the threshold are declared unscheduled and their power is reported as residual
    inline RecoveredSchedule recover_schedule(const PowerVector &pv, int n_eh, double threshold)
    {
        if (!(threshold > 0.0))
            throw DomainError("schedule recovery threshold must be positive");
        const auto n = pv.y.size();
        if (n_eh < 0 || n_eh > n)
            throw DomainError("EH count inconsistent with power vector");
        RecoveredSchedule r;
        for (Eigen::Index i = 0; i < n; ++i)
        {
            const double v = pv.y[i];
            const bool on = v > threshold;
            if (!on)
                r.residual_power += std::max(v, 0.0);
            auto &bits = i < n_eh ? r.schedule.eh : r.schedule.id;
            auto &pw = i < n_eh ? r.powers.eh : r.powers.id;
            bits.push_back(on);
            pw.push_back(on ? v : 0.0);
        }
        return r;
    }

    // (P3) data. c_eh carries alpha_k * zeta * g^EH_k so the objective equals the weighted harvested power.
    struct CompactProblem
    {
        int n_eh = 0;
        Eigen::VectorXd c_eh;
        std::vector<Eigen::VectorXd> c_id; // selector with g^ID_m at index K + m
        Eigen::VectorXd id_gain;           // g^ID_m
        Eigen::MatrixXd lambda_masked;
        Eigen::VectorXd noise;
        double power_budget = 1.0;
        double rate_requirement = 0.0;

        int n_id() const noexcept { return static_cast<int>(c_id.size()); }
        int n_beams() const noexcept { return static_cast<int>(c_eh.size()); }

        // Objective gradient Lambda_bar^T c_eh
        Eigen::VectorXd objective_weights() const { return lambda_masked.transpose() * c_eh; }
        double objective(const Eigen::VectorXd &y) const { return c_eh.dot(lambda_masked * y); }

        double received(int m, const Eigen::VectorXd &y) const { return c_id[m].dot(y); }
        double interference(int m, const Eigen::VectorXd &y) const
        {
            return c_id[m].dot(lambda_masked * y) + noise[m];
        }
        // Interference row (c_id_m)^T Lambda_bar
        Eigen::VectorXd interference_row(int m) const { return lambda_masked.transpose() * c_id[m]; }

        double sinr(int m, const Eigen::VectorXd &y) const { return received(m, y) / interference(m, y); }

        double sum_rate(const Eigen::VectorXd &y) const
        {
            double r = 0.0;
            for (int m = 0; m < n_id(); ++m)
                r += std::log2(1.0 + sinr(m, y));
            return r;
        }
    };

    // Evaluator caching gains and correlations of a scenario. The sums are
    // written out receiver by receiver, independent of CompactProblem's algebra.
    class SwiptModel
    {
    public:
        explicit SwiptModel(Scenario s) : scenario_(std::move(s)), lambda_(init())
        {
        }

        const Scenario &scenario() const noexcept { return scenario_; }
        const CorrelationMatrix &correlation() const noexcept { return lambda_; }
        double eh_gain(int k) const { return eh_gain_[k]; }
        double id_gain(int m) const { return id_gain_[m]; }

        // eta^2 between beam p and q in the stacked [EH, ID] order
        double eta2(int p, int q) const { return lambda_(p, q); }

        std::vector<double> sinr_id(const Schedule &s, const BeamPowers &p) const
        {
            const int K = scenario_.n_eh(), M = scenario_.n_id();
            std::vector<double> out(M);
            for (int m = 0; m < M; ++m)
            {
                const double g = id_gain_[m];
                double interf = scenario_.id[m].noise_power;
                for (int k = 0; k < K; ++k)
                    if (s.eh[k])
                        interf += p.eh[k] * g * eta2(K + m, k);
                for (int j = 0; j < M; ++j)
                    if (j != m && s.id[j])
                        interf += p.id[j] * g * eta2(K + m, K + j);
                out[m] = s.id[m] ? p.id[m] * g / interf : 0.0;
            }
            return out;
        }

        std::vector<double> rates(const PowerVector &pv) const
        {
            const int K = scenario_.n_eh(), M = scenario_.n_id();
            std::vector<double> out(M);
            for (int m = 0; m < M; ++m)
            {
                const double g = id_gain_[m];
                double interf = scenario_.id[m].noise_power;
                for (int k = 0; k < K; ++k)
                    interf += pv.y[k] * g * eta2(K + m, k);
                for (int j = 0; j < M; ++j)
                    if (j != m)
                        interf += pv.y[K + j] * g * eta2(K + m, K + j);
                out[m] = std::log2(1.0 + pv.y[K + m] * g / interf);
            }
            return out;
        }

        double sum_rate(const PowerVector &pv) const
        {
            double r = 0.0;
            for (double v : rates(pv))
                r += v;
            return r;
        }

        double harvested_power(int k, const PowerVector &pv) const
        {
            const int K = scenario_.n_eh(), M = scenario_.n_id();
            const double g = eh_gain_[k];
            double q = pv.y[k] * g;
            for (int i = 0; i < K; ++i)
                if (i != k)
                    q += pv.y[i] * g * eta2(k, i);
            for (int m = 0; m < M; ++m)
                q += pv.y[K + m] * g * eta2(k, K + m);
            return scenario_.harvest_efficiency * q;
        }

        double harvested_sum_power(const PowerVector &pv) const
        {
            double q = 0.0;
            for (int k = 0; k < scenario_.n_eh(); ++k)
                q += scenario_.eh[k].weight * harvested_power(k, pv);
            return q;
        }

        CompactProblem compact() const
        {
            const int K = scenario_.n_eh(), M = scenario_.n_id();
            CompactProblem c;
            c.n_eh = K;
            c.c_eh = Eigen::VectorXd::Zero(K + M);
            for (int k = 0; k < K; ++k)
                c.c_eh[k] = scenario_.eh[k].weight * scenario_.harvest_efficiency * eh_gain_[k];
            c.id_gain = Eigen::VectorXd(M);
            c.noise = Eigen::VectorXd(M);
            for (int m = 0; m < M; ++m)
            {
                Eigen::VectorXd sel = Eigen::VectorXd::Zero(K + M);
                sel[K + m] = id_gain_[m];
                c.c_id.push_back(std::move(sel));
                c.id_gain[m] = id_gain_[m];
                c.noise[m] = scenario_.id[m].noise_power;
            }
            c.lambda_masked = lambda_.masked().entries();
            c.power_budget = scenario_.power_budget;
            c.rate_requirement = scenario_.rate_requirement;
            return c;
        }

    private:
        CorrelationMatrix init()
        {
            scenario_.validate();
            for (const auto &r : scenario_.eh)
                eh_gain_.push_back(array_power_gain(scenario_.geometry, r.placement.distance));
            for (const auto &r : scenario_.id)
                id_gain_.push_back(array_power_gain(scenario_.geometry, r.placement.distance));
            const auto eh = scenario_.eh_placements();
            const auto id = scenario_.id_placements();
            return build_correlation_matrix(scenario_.geometry, eh, id, false);
        }

        Scenario scenario_;
        std::vector<double> eh_gain_;
        std::vector<double> id_gain_;
        CorrelationMatrix lambda_;
    };

    inline std::vector<double> sinr_id(const Scenario &s, const Schedule &sched, const BeamPowers &p)
    {
        return SwiptModel(s).sinr_id(sched, p);
    }

    inline double sum_rate(const Scenario &s, const PowerVector &pv) { return SwiptModel(s).sum_rate(pv); }

    inline double harvested_sum_power(const Scenario &s, const PowerVector &pv)
    {
        return SwiptModel(s).harvested_sum_power(pv);
    }

    inline CompactProblem build_compact(const Scenario &s) { return SwiptModel(s).compact(); }
} // namespace nfswipt

#endif
