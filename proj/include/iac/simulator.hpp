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

#ifndef IAC_SIMULATOR_HPP
#define IAC_SIMULATOR_HPP

#include "iac/solver.hpp"
#include "iac/system_model.hpp"

#include <cstdint>
#include <string_view>
#include <vector>

namespace iac
{
    enum class SymbolModel
    {
        Gaussian, // unit-power circularly-symmetric complex Gaussian
        Qpsk,
    };

    enum class Cancellation
    {
        Genie,    // subtract with the transmitted symbols
        Detected, // subtract with hard decisions from the decoding receiver (QPSK only)
    };

    std::string_view to_string(SymbolModel model);
    std::string_view to_string(Cancellation mode);

    struct SimParams
    {
        std::vector<double> snr_db; // +infinity means noiseless
        int trials = 1;
        SymbolModel symbols = SymbolModel::Gaussian;
        Cancellation cancellation = Cancellation::Genie;
        std::uint64_t seed = 0;

        // Throws std::invalid_argument on trials < 1, no SNR points, NaN points, or DETECTED without QPSK.
        void validate() const;
    };

    // Noise variance per receive antenna for unit-power streams: 10^(-snr/10), 0 for +infinity.
    double noise_variance(double snr_db);

    struct TrialResult
    {
        double snr_db = 0.0;
        std::vector<double> per_stream_sinr; // linear, users 1..K then streams in order
        std::vector<double> per_stream_signal_power;
        std::vector<double> per_stream_interference_power; // residual interference after cancellation and ZF
        std::vector<double> per_user_rate;
        double sum_rate = 0.0;
        int packets_shared = 0;
        double max_cancellation_residual = 0.0; // relative to the desired signal energy at that receiver
        long symbol_errors = 0;                 // hard-decision errors, QPSK only
    };

    // One channel use through the two-step decoder: receivers 1..k_IAC in order, each subtracting the
    // packets decoded by earlier receivers, then receivers k_IAC+1..K subtracting users 1..k_IAC.
    // SINR comes from the linear model (exact second-order statistics); DETECTED adds the realized
    // cancellation error. Throws SingularEffectiveChannel if U_k^H H_kk V_k cannot be inverted.
    TrialResult simulate_trial(const ChannelSet &channels, const PrecoderSet &precoders, const ReceiverSet &receivers,
                               const SystemConfig &config, double snr_db, const SimParams &params,
                               std::uint64_t trial_seed);

    struct SweepRow
    {
        double snr_db = 0.0;
        double mean_sum_rate = 0.0;
        std::vector<double> per_user_rate;
        std::vector<double> per_stream_sinr_db; // 10 log10 of the mean linear SINR
        int packets_shared = 0;
    };

    struct SweepResult
    {
        std::vector<SweepRow> rows; // ascending snr_db
        int total_dof = 0;
    };

    // Per-trial seeds come from (params.seed, SNR index, trial index).
    SweepResult snr_sweep(const ChannelSet &channels, const PrecoderSet &precoders, const ReceiverSet &receivers,
                          const SystemConfig &config, const SimParams &params);

    // (R(hi) - R(lo)) / log2(10^((hi - lo) / 10)); throws MissingPoint when either SNR is absent.
    double estimate_dof_slope(const SweepResult &sweep, double lo_db, double hi_db);

} // namespace iac

#endif
