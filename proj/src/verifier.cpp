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

#include "iac/verifier.hpp"

#include "iac/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <sstream>

namespace iac
{
    namespace
    {
        void override_from_env(const char *name, double &value)
        {
            const char *raw = std::getenv(name);
            if (raw == nullptr || *raw == '\0')
                return;
            char *end = nullptr;
            const double parsed = std::strtod(raw, &end);
            if (end == raw || *end != '\0' || !(parsed > 0.0) || !std::isfinite(parsed))
                throw std::invalid_argument(std::string(name) + " must be a positive number, got '" + raw + "'");
            value = parsed;
        }

        std::string fmt(double x)
        {
            std::ostringstream os;
            os.precision(3);
            os << x;
            return os.str();
        }
    } // namespace

    Tolerances Tolerances::from_env()
    {
        Tolerances t;
        override_from_env("IAC_ALIGN_TOL", t.align);
        override_from_env("IAC_ZF_TOL", t.zf);
        override_from_env("IAC_SIGMA_MIN", t.sigma_min);
        override_from_env("IAC_RANK_TOL", t.rank);
        return t;
    }

    double span_residual(const CVector &a, const CVector &b)
    {
        const double na = a.norm();
        const double nb = b.norm();
        if (na == 0.0 || nb == 0.0)
            throw Error(ErrorCode::ZeroVector, "span_residual of a zero vector");
        if (a.size() != b.size())
            throw std::invalid_argument("span_residual: length mismatch");
        const CVector ua = a / na;
        const CVector ub = b / nb;
        const double ab = (ub - ua.dot(ub) * ua).norm();
        const double ba = (ua - ub.dot(ua) * ub).norm();
        return std::clamp(std::max(ab, ba), 0.0, 1.0);
    }

    DimensionCheck check_dimension_condition(const ChannelSet &channels, const PrecoderSet &precoders,
                                             const SystemConfig &config, int receiver, double rank_tol)
    {
        const Eigen::Index m = config.num_antennas();
        const CMatrix signal = channels.h(receiver, receiver) * precoders.of(receiver);
        const CMatrix interference =
            linalg::stack_columns(interference_vectors(channels, precoders, config, receiver), m);

        DimensionCheck out;
        out.signal_rank = linalg::numerical_rank(signal, rank_tol);
        out.interference_rank = linalg::numerical_rank(interference, rank_tol);
        CMatrix joint(m, signal.cols() + interference.cols());
        joint << signal, interference;
        const int joint_rank = linalg::numerical_rank(joint, rank_tol);
        out.ok = out.signal_rank == config.dof(receiver) && out.signal_rank + out.interference_rank <= m &&
                 joint_rank == out.signal_rank + out.interference_rank;
        return out;
    }

    DesignReport verify_design(const ChannelSet &channels, const PrecoderSet &precoders, const ReceiverSet &receivers,
                               const AlignmentEquationSet &equations, const SystemConfig &config,
                               const Tolerances &tolerances)
    {
        DesignReport report;
        report.k_iac = compute_k_iac(config);
        report.overhead_packets = compute_overhead(config);
        report.total_dof_claimed = config.total_dof();
        report.tolerances = tolerances;

        for (const AlignmentEquation &eq : equations.equations())
        {
            const int k = eq.receiver;
            const double r = span_residual(channels.h(k, eq.reference.tx) * precoders.column(eq.reference),
                                           channels.h(k, eq.aligned.tx) * precoders.column(eq.aligned));
            report.per_equation.push_back({eq, r});
            if (!(r < tolerances.align))
                report.failures.push_back("alignment at receiver " + std::to_string(k) + " between " +
                                          to_string(eq.reference) + " and " + to_string(eq.aligned) +
                                          ": sin angle " + fmt(r));
        }

        for (int k = 1; k <= config.num_users(); ++k)
        {
            ReceiverCheck rc;
            rc.receiver = k;
            const CMatrix &u = receivers.of(k);

            auto residual = [&](int j)
            {
                double worst = 0.0;
                for (Eigen::Index l = 0; l < precoders.of(j).cols(); ++l)
                {
                    const CVector hv = channels.h(k, j) * precoders.of(j).col(l);
                    const double n = hv.norm();
                    if (n > 0.0)
                        worst = std::max(worst, (u.adjoint() * hv).norm() / n);
                }
                return worst;
            };
            for (int j : alignment_interferers(config, k))
                rc.max_zf_residual = std::max(rc.max_zf_residual, residual(j));
            for (int j = 1; j <= config.num_users(); ++j)
                if (j != k)
                    rc.raw_interference_residual = std::max(rc.raw_interference_residual, residual(j));

            rc.sigma_min_effective = linalg::sigma_min(u.adjoint() * channels.h(k, k) * precoders.of(k));
            const DimensionCheck dim = check_dimension_condition(channels, precoders, config, k, tolerances.rank);
            rc.signal_rank = dim.signal_rank;
            rc.interference_rank = dim.interference_rank;
            rc.dimension_ok = dim.ok;

            const std::string rx = "receiver " + std::to_string(k);
            if (!(rc.max_zf_residual < tolerances.zf))
                report.failures.push_back(rx + ": zero-forcing residual " + fmt(rc.max_zf_residual));
            if (!(rc.sigma_min_effective > tolerances.sigma_min))
                report.failures.push_back(rx + ": effective channel sigma_min " + fmt(rc.sigma_min_effective));
            if (!rc.dimension_ok)
                report.failures.push_back(rx + ": signal rank " + std::to_string(rc.signal_rank) +
                                          ", interference rank " + std::to_string(rc.interference_rank) +
                                          " violate the dimension condition");
            report.per_receiver.push_back(rc);
        }

        report.pass = report.failures.empty();
        return report;
    }

} // namespace iac
