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

#ifndef NFSWIPT_ERRORS_HPP
#define NFSWIPT_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace nfswipt
{
    // Placement outside the region its field type requires, index out of range, bad geometry
    class DomainError : public std::invalid_argument
    {
    public:
        using std::invalid_argument::invalid_argument;
    };

    // Curvature difference too small for the Fresnel-integral correlation approximation
    class DegenerateCurvature : public std::domain_error
    {
    public:
        using std::domain_error::domain_error;
    };

    // Interior-point failure: ill-conditioned Newton system or no strictly feasible start
    class NumericalFailure : public std::runtime_error
    {
    public:
        using std::runtime_error::runtime_error;
    };

    class InfeasibleSubproblem : public std::runtime_error
    {
    public:
        using std::runtime_error::runtime_error;
    };

    // A convex subproblem inside the SCA loop could not be solved; what() carries the solver diagnostics
    class SubproblemFailure : public std::runtime_error
    {
    public:
        using std::runtime_error::runtime_error;
    };

    class CapExceeded : public std::length_error
    {
    public:
        using std::length_error::length_error;
    };

    class ParseError : public std::runtime_error
    {
    public:
        using std::runtime_error::runtime_error;
    };

    // Carries the dotted field path of the offending config entry
    class ValidationError : public std::invalid_argument
    {
    public:
        ValidationError(std::string field, const std::string &reason)
            : std::invalid_argument(field + ": " + reason), field_(std::move(field)) {}

        const std::string &field() const noexcept { return field_; }

    private:
        std::string field_;
    };
} // namespace nfswipt

#endif
