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

#ifndef IAC_SERIALIZATION_HPP
#define IAC_SERIALIZATION_HPP

#include "iac/feasibility.hpp"
#include "iac/iac_graph.hpp"
#include "iac/simulator.hpp"
#include "iac/solver.hpp"
#include "iac/system_model.hpp"
#include "iac/verifier.hpp"

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <string>

// JSON/DOT/CSV forms of every artifact. Parsing failures throw Error(Format) unless the
// document is well-formed but describes an invalid system, which throws InvalidConfig.
namespace iac::io
{
    using json = nlohmann::json;

    inline constexpr std::string_view kBundleFormat = "iac-design-bundle";
    inline constexpr int kBundleVersion = 1;

    json to_json(const SystemConfig &config);
    SystemConfig config_from_json(const json &doc);
    SystemConfig load_config(const std::string &path);

    // {"rows", "cols", "data": [[re, im], ...]} in row-major order
    json matrix_to_json(const CMatrix &m);
    CMatrix matrix_from_json(const json &doc);

    json to_json(const ChannelSet &channels);
    ChannelSet channels_from_json(const json &doc);

    json to_json(const IacGraph &graph);
    IacGraph graph_from_json(const json &doc);
    json to_json(const AlignmentEquationSet &equations);
    std::string to_dot(const IacGraph &graph);

    json to_json(const PrecoderSet &precoders);
    PrecoderSet precoders_from_json(const json &doc);
    json to_json(const ReceiverSet &receivers);
    ReceiverSet receivers_from_json(const json &doc);

    json to_json(const FeasibilityVerdict &verdict, const SystemConfig &config);
    json to_json(const ConstructionTrace &trace);

    json to_json(const Tolerances &tolerances);
    Tolerances tolerances_from_json(const json &doc);
    json to_json(const DesignReport &report);
    DesignReport report_from_json(const json &doc);

    json to_json(const SweepResult &sweep);
    // header snr_db,sum_rate_bits,slope_ref; slope_ref is total DoF * log2(SNR), the ideal high-SNR line
    std::string sweep_csv(const SweepResult &sweep);

    struct RunManifest
    {
        std::string command;
        std::string tool_version;
        std::uint64_t channel_seed = 0;
        std::uint64_t graph_seed = 0;
        int retry_budget = 0;
        bool optimal = false;
        Tolerances tolerances;
        std::optional<std::int64_t> timestamp; // from SOURCE_DATE_EPOCH, so reruns stay byte-identical
        std::vector<double> sigma_min_effective; // per receiver, as verified at design time
    };

    json to_json(const RunManifest &manifest);
    RunManifest manifest_from_json(const json &doc);

    struct DesignBundle
    {
        RunManifest manifest;
        SystemConfig config;
        ChannelSet channels;
        IacGraph graph;
        AlignmentEquationSet equations;
        PrecoderSet precoders;
        ReceiverSet receivers;
        DesignReport report;
    };

    json to_json(const DesignBundle &bundle);
    // Also checks that every matrix shape agrees with the embedded config.
    DesignBundle bundle_from_json(const json &doc);
    DesignBundle load_bundle(const std::string &path);

    json read_json_file(const std::string &path);
    void write_text_file(const std::string &path, const std::string &text);

} // namespace iac::io

#endif
