// SPDX-License-Identifier: Apache-2.0
//
// iac - closed-form interference alignment and cancellation transceivers
// Copyright (C) 2026 The iac authors
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

#ifndef IAC_VERIFIER_HPP
#define IAC_VERIFIER_HPP

#include "iac/iac_graph.hpp"
#include "iac/solver.hpp"
#include "iac/system_model.hpp"

#include <string>
#include <vector>

namespace iac
{
    struct Tolerances
    {
        double align = 1e-8;     // sine of the angle between the two sides of an alignment equation
        double zf = 1e-8;        // ||U_k^H H_kj v|| relative to ||H_kj v||
        double sigma_min = 1e-6; // floor on sigma_min(U_k^H H_kk V_k)
        double rank = 1e-8;      // singular-value threshold relative to the largest

        // Defaults overridden by IAC_ALIGN_TOL, IAC_ZF_TOL, IAC_SIGMA_MIN and IAC_RANK_TOL when set.
        // Throws std::invalid_argument on a value that is not a positive number.
        static Tolerances from_env();

        bool operator==(const Tolerances &) const = default;
    };

    // Sine of the principal angle between span(a) and span(b), in [0, 1]. Evaluated as the norm of
    // the rejection of one unit vector from the other, which stays accurate near 0; symmetric by
    // construction. Throws ZeroVector.
    double span_residual(const CVector &a, const CVector &b);

    struct EquationResidual
    {
        AlignmentEquation equation;
        double sin_angle = 0.0;
    };

    struct DimensionCheck
    {
        int signal_rank = 0;
        int interference_rank = 0;
        bool ok = false;
    };

    // Signal rank d_k, signal + interference ranks <= M, and the two subspaces independent.
    DimensionCheck check_dimension_condition(const ChannelSet &channels, const PrecoderSet &precoders,
                                             const SystemConfig &config, int receiver, double rank_tol = 1e-8);

    struct ReceiverCheck
    {
        int receiver = 0;
        double max_zf_residual = 0.0;       // over the streams the receiver zero-forces
        double raw_interference_residual = 0.0; // over every other user, cancelled ones included
        double sigma_min_effective = 0.0;
        int signal_rank = 0;
        int interference_rank = 0;
        bool dimension_ok = false;
    };

    struct DesignReport
    {
        int k_iac = 0;
        int overhead_packets = 0;
        std::vector<EquationResidual> per_equation;
        std::vector<ReceiverCheck> per_receiver;
        int total_dof_claimed = 0;
        Tolerances tolerances;
        bool pass = false;
        std::vector<std::string> failures;
    };

    // Never throws on a failed check; every failure is listed in `failures`.
    DesignReport verify_design(const ChannelSet &channels, const PrecoderSet &precoders, const ReceiverSet &receivers,
                               const AlignmentEquationSet &equations, const SystemConfig &config,
                               const Tolerances &tolerances = {});

} // namespace iac

#endif
