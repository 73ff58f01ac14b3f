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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fixtures.hpp"
#include "oracles.hpp"

#include "iac/pipeline.hpp"
#include "iac/simulator.hpp"

#include <limits>

using namespace iac;

namespace
{
    const double kInf = std::numeric_limits<double>::infinity();

    Design twelve_design(std::uint64_t seed = 1)
    {
        DesignOptions opts;
        opts.optimal = true;
        opts.channel_seed = seed;
        opts.graph_seed = seed;
        return run_design(fixtures::twelve_stream_config(), opts);
    }

    TrialResult trial(const Design &d, double snr, const SimParams &p, std::uint64_t seed = 0)
    {
        return simulate_trial(d.channels, d.transceivers.precoders, d.transceivers.receivers, d.config, snr, p, seed);
    }
}

TEST_CASE("noise variance")
{
    CHECK(noise_variance(0.0) == 1.0);
    CHECK(noise_variance(20.0) == doctest::Approx(0.01));
    CHECK(noise_variance(kInf) == 0.0);
}

TEST_CASE("parameter validation")
{
    SimParams p;
    p.snr_db = {10.0};
    CHECK_NOTHROW(p.validate());
    p.trials = 0;
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);
    p.trials = 1;
    p.cancellation = Cancellation::Detected;
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);
    p.symbols = SymbolModel::Qpsk;
    CHECK_NOTHROW(p.validate());
    p.snr_db.clear();
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);
}

TEST_CASE("noiseless genie decoding leaves no interference")
{
    const Design d = twelve_design();
    REQUIRE(d.report.pass);
    SimParams p;
    p.snr_db = {kInf};
    const TrialResult r = trial(d, kInf, p, 3);
    REQUIRE(r.per_stream_sinr.size() == 12);
    for (std::size_t s = 0; s < 12; ++s)
        CHECK(r.per_stream_interference_power[s] < 1e-12 * r.per_stream_signal_power[s]);
    CHECK(r.max_cancellation_residual < 1e-12);
}

TEST_CASE("single user matches the zero-forcing MIMO formula")
{
    const SystemConfig solo(4, {4});
    DesignOptions opts;
    opts.channel_seed = 9;
    const Design d = run_design(solo, opts);
    SimParams p;
    for (double snr : {0.0, 10.0, 25.0})
    {
        p.snr_db = {snr};
        const TrialResult r = trial(d, snr, p);
        const double expect = oracle::zf_mimo_rate(d.channels.h(1, 1), d.transceivers.precoders.of(1),
                                                   noise_variance(snr));
        CHECK(std::abs(r.sum_rate - expect) < 1e-9 * std::max(1.0, expect));
    }
}

TEST_CASE("packets shared equal the overhead")
{
    DesignOptions opts;
    const Design d = run_design(fixtures::eleven_stream_config(), opts);
    SimParams p;
    p.snr_db = {20.0};
    for (std::uint64_t t = 0; t < 5; ++t)
        CHECK(trial(d, 20.0, p, t).packets_shared == 21);
    CHECK(trial(twelve_design(), 20.0, p).packets_shared == 21);
}

TEST_CASE("sweep with one point and one trial equals the trial")
{
    const Design d = twelve_design();
    SimParams p;
    p.snr_db = {30.0};
    p.seed = 5;
    const SweepResult s =
        snr_sweep(d.channels, d.transceivers.precoders, d.transceivers.receivers, d.config, p);
    const TrialResult r = trial(d, 30.0, p, derive_seed(5, {0, 0}));
    REQUIRE(s.rows.size() == 1);
    CHECK(s.rows[0].mean_sum_rate == r.sum_rate);
    CHECK(s.rows[0].packets_shared == r.packets_shared);
    for (std::size_t j = 0; j < r.per_user_rate.size(); ++j)
        CHECK(s.rows[0].per_user_rate[j] == r.per_user_rate[j]);
}

TEST_CASE("sum rate rises with SNR at the DoF slope")
{
    const Design d = twelve_design(2);
    SimParams p;
    p.snr_db = {60.0, 0.0, 20.0, 40.0, 50.0};
    p.trials = 3;
    const SweepResult s =
        snr_sweep(d.channels, d.transceivers.precoders, d.transceivers.receivers, d.config, p);
    REQUIRE(s.rows.size() == 5);
    for (std::size_t i = 1; i < s.rows.size(); ++i)
    {
        CHECK(s.rows[i].snr_db > s.rows[i - 1].snr_db);
        CHECK(s.rows[i].mean_sum_rate >= s.rows[i - 1].mean_sum_rate);
    }
    CHECK(estimate_dof_slope(s, 40.0, 60.0) == doctest::Approx(12.0).epsilon(0.05));

    const TrialResult lo = trial(d, 40.0, p), hi = trial(d, 60.0, p);
    for (std::size_t st = 0; st < lo.per_stream_sinr.size(); ++st)
        CHECK(hi.per_stream_sinr[st] / lo.per_stream_sinr[st] == doctest::Approx(100.0).epsilon(0.05));
}

TEST_CASE("rates ignore the phase of loop anchors")
{
    DesignOptions base;
    base.optimal = true;
    base.channel_seed = 6;
    DesignOptions rotated = base;
    rotated.solver.anchor_phase = std::polar(1.0, 2.5);
    const Design a = run_design(fixtures::twelve_stream_config(), base);
    const Design b = run_design(fixtures::twelve_stream_config(), rotated);
    SimParams p;
    p.snr_db = {30.0};
    CHECK(std::abs(trial(a, 30.0, p).sum_rate - trial(b, 30.0, p).sum_rate) < 1e-9);
}

TEST_CASE("sweeps are reproducible")
{
    const Design d = twelve_design();
    SimParams p;
    p.snr_db = {10.0, 20.0};
    p.trials = 4;
    p.symbols = SymbolModel::Qpsk;
    p.cancellation = Cancellation::Detected;
    p.seed = 77;
    const SweepResult a = snr_sweep(d.channels, d.transceivers.precoders, d.transceivers.receivers, d.config, p);
    const SweepResult b = snr_sweep(d.channels, d.transceivers.precoders, d.transceivers.receivers, d.config, p);
    REQUIRE(a.rows.size() == b.rows.size());
    for (std::size_t i = 0; i < a.rows.size(); ++i)
    {
        CHECK(a.rows[i].mean_sum_rate == b.rows[i].mean_sum_rate);
        CHECK(a.rows[i].per_stream_sinr_db == b.rows[i].per_stream_sinr_db);
    }
}

TEST_CASE("detected cancellation with QPSK")
{
    const Design d = twelve_design(3);
    SimParams p;
    p.symbols = SymbolModel::Qpsk;
    p.cancellation = Cancellation::Detected;

    // noiseless: every decision is right and cancellation is exact
    p.snr_db = {kInf};
    const TrialResult clean = trial(d, kInf, p, 1);
    CHECK(clean.symbol_errors == 0);
    CHECK(clean.max_cancellation_residual < 1e-12);

    // very noisy: wrong decisions propagate into later receivers
    long errors = 0;
    double worst_residual = 0.0;
    p.snr_db = {-10.0};
    for (std::uint64_t t = 0; t < 20; ++t)
    {
        const TrialResult r = trial(d, -10.0, p, t);
        errors += r.symbol_errors;
        worst_residual = std::max(worst_residual, r.max_cancellation_residual);
    }
    CHECK(errors > 0);
    CHECK(worst_residual > 1e-3);
}

TEST_CASE("dof slope estimator")
{
    SweepResult ideal;
    for (double snr : {10.0, 20.0, 30.0})
    {
        SweepRow row;
        row.snr_db = snr;
        row.mean_sum_rate = 7.0 * std::log2(std::pow(10.0, snr / 10.0));
        ideal.rows.push_back(row);
    }
    CHECK(estimate_dof_slope(ideal, 10.0, 30.0) == doctest::Approx(7.0).epsilon(1e-12));
    try
    {
        estimate_dof_slope(ideal, 10.0, 40.0);
        FAIL("expected MissingPoint");
    }
    catch (const Error &e)
    {
        CHECK(e.code() == ErrorCode::MissingPoint);
    }
    CHECK_THROWS_AS(estimate_dof_slope(ideal, 30.0, 10.0), std::invalid_argument);
}

TEST_CASE("singular effective channel")
{
    const Design d = twelve_design();
    ReceiverSet broken = d.transceivers.receivers;
    broken.u[0].setZero();
    SimParams p;
    p.snr_db = {10.0};
    try
    {
        simulate_trial(d.channels, d.transceivers.precoders, broken, d.config, 10.0, p, 0);
        FAIL("expected SingularEffectiveChannel");
    }
    catch (const Error &e)
    {
        CHECK(e.code() == ErrorCode::SingularEffectiveChannel);
    }
}
