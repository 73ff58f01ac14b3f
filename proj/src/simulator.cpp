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

#include "iac/simulator.hpp"

#include "iac/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

namespace iac
{
    std::string_view to_string(SymbolModel model)
    {
        return model == SymbolModel::Gaussian ? "gaussian" : "qpsk";
    }

    std::string_view to_string(Cancellation mode)
    {
        return mode == Cancellation::Genie ? "genie" : "detected";
    }

    void SimParams::validate() const
    {
        if (trials < 1)
            throw std::invalid_argument("trials must be at least 1");
        if (snr_db.empty())
            throw std::invalid_argument("at least one SNR point is required");
        for (double s : snr_db)
            if (std::isnan(s) || s == -std::numeric_limits<double>::infinity())
                throw std::invalid_argument("SNR points must be finite or +inf");
        if (cancellation == Cancellation::Detected && symbols != SymbolModel::Qpsk)
            throw std::invalid_argument("detected cancellation requires QPSK symbols");
    }

    double noise_variance(double snr_db)
    {
        if (snr_db == std::numeric_limits<double>::infinity())
            return 0.0;
        return std::pow(10.0, -snr_db / 10.0);
    }

    namespace
    {
        const double kQpskScale = 1.0 / std::sqrt(2.0);

        cx draw_symbol(SymbolModel model, std::mt19937_64 &rng)
        {
            if (model == SymbolModel::Gaussian)
                return linalg::complex_normal(rng);
            std::bernoulli_distribution coin(0.5);
            const double re = coin(rng) ? kQpskScale : -kQpskScale;
            const double im = coin(rng) ? kQpskScale : -kQpskScale;
            return {re, im};
        }

        cx qpsk_decision(cx z)
        {
            return {z.real() >= 0.0 ? kQpskScale : -kQpskScale, z.imag() >= 0.0 ? kQpskScale : -kQpskScale};
        }
    } // namespace

    TrialResult simulate_trial(const ChannelSet &channels, const PrecoderSet &precoders, const ReceiverSet &receivers,
                               const SystemConfig &config, double snr_db, const SimParams &params,
                               std::uint64_t trial_seed)
    {
        if (params.cancellation == Cancellation::Detected && params.symbols != SymbolModel::Qpsk)
            throw std::invalid_argument("detected cancellation requires QPSK symbols");

        const int users = config.num_users();
        const Eigen::Index m = config.num_antennas();
        const int k_iac = compute_k_iac(config);
        const double sigma2 = noise_variance(snr_db);
        const double sigma = std::sqrt(sigma2);
        auto at = [](int user) { return static_cast<std::size_t>(user - 1); };

        std::mt19937_64 rng(trial_seed);
        std::vector<CVector> x(static_cast<std::size_t>(users));
        for (int j = 1; j <= users; ++j)
        {
            x[at(j)].resize(config.dof(j));
            for (Eigen::Index l = 0; l < x[at(j)].size(); ++l)
                x[at(j)](l) = draw_symbol(params.symbols, rng);
        }
        std::vector<CVector> noise(static_cast<std::size_t>(users));
        for (int k = 1; k <= users; ++k)
        {
            noise[at(k)].resize(m);
            for (Eigen::Index i = 0; i < m; ++i)
                noise[at(k)](i) = sigma * linalg::complex_normal(rng);
        }

        TrialResult out;
        out.snr_db = snr_db;
        out.per_user_rate.assign(static_cast<std::size_t>(users), 0.0);
        std::vector<CVector> decided(static_cast<std::size_t>(users));

        // Step 1 runs receivers 1..k_IAC in order; step 2 (k > k_IAC) only needs users 1..k_IAC,
        // which step 1 has finished by then.
        for (int k = 1; k <= users; ++k)
        {
            const CMatrix &u = receivers.of(k);
            const CMatrix g = u.adjoint() * channels.h(k, k) * precoders.of(k);
            if (!(linalg::condition_ratio(g) > linalg::kConditioningFloor))
                throw Error(ErrorCode::SingularEffectiveChannel,
                            "U_k^H H_kk V_k is singular at receiver " + std::to_string(k));
            const CMatrix w = g.inverse();

            const std::vector<int> cancelled = cancelled_users(config, k);
            auto is_cancelled = [&](int j) { return std::find(cancelled.begin(), cancelled.end(), j) != cancelled.end(); };

            CVector y = noise[at(k)];
            CVector clean = noise[at(k)];
            for (int j = 1; j <= users; ++j)
            {
                const CVector contribution = channels.h(k, j) * (precoders.of(j) * x[at(j)]);
                y += contribution;
                if (!is_cancelled(j))
                    clean += contribution;
            }

            CVector cancellation_error = CVector::Zero(m);
            for (int j : cancelled)
            {
                const CVector &estimate = params.cancellation == Cancellation::Genie ? x[at(j)] : decided[at(j)];
                y -= channels.h(k, j) * (precoders.of(j) * estimate);
                cancellation_error += channels.h(k, j) * (precoders.of(j) * (x[at(j)] - estimate));
            }
            if (!cancelled.empty())
            {
                const double desired = (channels.h(k, k) * (precoders.of(k) * x[at(k)])).norm();
                if (desired > 0.0)
                    out.max_cancellation_residual =
                        std::max(out.max_cancellation_residual, (y - clean).norm() / desired);
            }
            if (k <= k_iac)
                out.packets_shared += (users - k) * config.dof(k);

            const CVector z = w * (u.adjoint() * y);
            decided[at(k)] = z;
            if (params.symbols == SymbolModel::Qpsk)
                for (Eigen::Index l = 0; l < z.size(); ++l)
                {
                    decided[at(k)](l) = qpsk_decision(z(l));
                    if (decided[at(k)](l) != x[at(k)](l))
                        ++out.symbol_errors;
                }

            const CMatrix d = w * g;
            Eigen::VectorXd interference = Eigen::VectorXd::Zero(d.rows());
            for (Eigen::Index l = 0; l < d.rows(); ++l)
                for (Eigen::Index c = 0; c < d.cols(); ++c)
                    if (c != l)
                        interference(l) += std::norm(d(l, c));
            for (int j = 1; j <= users; ++j)
                if (j != k && !is_cancelled(j))
                    interference += (w * u.adjoint() * channels.h(k, j) * precoders.of(j)).rowwise().squaredNorm();
            if (params.cancellation == Cancellation::Detected)
                interference += (w * (u.adjoint() * cancellation_error)).cwiseAbs2();

            for (Eigen::Index l = 0; l < d.rows(); ++l)
            {
                const double signal = std::norm(d(l, l));
                const double noise_power = sigma2 * w.row(l).squaredNorm();
                const double denom = interference(l) + noise_power;
                const double sinr = denom > 0.0 ? signal / denom : std::numeric_limits<double>::infinity();
                out.per_stream_sinr.push_back(sinr);
                out.per_stream_signal_power.push_back(signal);
                out.per_stream_interference_power.push_back(interference(l));
                out.per_user_rate[at(k)] += std::log2(1.0 + sinr);
            }
            out.sum_rate += out.per_user_rate[at(k)];
        }
        return out;
    }

    SweepResult snr_sweep(const ChannelSet &channels, const PrecoderSet &precoders, const ReceiverSet &receivers,
                          const SystemConfig &config, const SimParams &params)
    {
        params.validate();
        std::vector<double> points = params.snr_db;
        std::sort(points.begin(), points.end());

        SweepResult out;
        out.total_dof = config.total_dof();
        for (std::size_t p = 0; p < points.size(); ++p)
        {
            SweepRow row;
            row.snr_db = points[p];
            row.per_user_rate.assign(static_cast<std::size_t>(config.num_users()), 0.0);
            std::vector<double> sinr_sum(static_cast<std::size_t>(config.total_dof()), 0.0);
            for (int t = 0; t < params.trials; ++t)
            {
                const TrialResult trial = simulate_trial(
                    channels, precoders, receivers, config, points[p], params,
                    derive_seed(params.seed, {static_cast<std::uint64_t>(p), static_cast<std::uint64_t>(t)}));
                row.mean_sum_rate += trial.sum_rate;
                for (std::size_t j = 0; j < row.per_user_rate.size(); ++j)
                    row.per_user_rate[j] += trial.per_user_rate[j];
                for (std::size_t s = 0; s < sinr_sum.size(); ++s)
                    sinr_sum[s] += trial.per_stream_sinr[s];
                row.packets_shared = trial.packets_shared;
            }
            const double n = params.trials;
            row.mean_sum_rate /= n;
            for (double &r : row.per_user_rate)
                r /= n;
            for (double s : sinr_sum)
                row.per_stream_sinr_db.push_back(10.0 * std::log10(s / n));
            out.rows.push_back(std::move(row));
        }
        return out;
    }

    double estimate_dof_slope(const SweepResult &sweep, double lo_db, double hi_db)
    {
        if (!(hi_db > lo_db))
            throw std::invalid_argument("estimate_dof_slope: hi must exceed lo");
        auto rate_at = [&](double snr)
        {
            for (const SweepRow &row : sweep.rows)
                if (std::abs(row.snr_db - snr) < 1e-9)
                    return row.mean_sum_rate;
            throw Error(ErrorCode::MissingPoint, "no sweep row at " + std::to_string(snr) + " dB");
        };
        const double gain = rate_at(hi_db) - rate_at(lo_db);
        return gain / std::log2(std::pow(10.0, (hi_db - lo_db) / 10.0));
    }

} // namespace iac
