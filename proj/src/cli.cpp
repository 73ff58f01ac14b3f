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

#include "iac/cli.hpp"

#include "iac/feasibility.hpp"
#include "iac/pipeline.hpp"
#include "iac/serialization.hpp"
#include "iac/simulator.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdlib>
#include <iostream>
#include <sstream>

#ifndef IAC_TOOL_VERSION
#define IAC_TOOL_VERSION "dev"
#endif

namespace iac::cli
{
    namespace
    {
        using io::json;

        int exit_code_for(ErrorCode code)
        {
            switch (code)
            {
            case ErrorCode::InvalidConfig:
            case ErrorCode::Format:
                return kExitInput;
            case ErrorCode::InfeasibleConfig:
            case ErrorCode::MissingPoint:
                return kExitDomain;
            case ErrorCode::ConstructionExhausted:
                return kExitConstruction;
            default:
                return kExitNumeric;
            }
        }

        std::optional<std::int64_t> source_date_epoch()
        {
            const char *raw = std::getenv("SOURCE_DATE_EPOCH");
            if (raw == nullptr || *raw == '\0')
                return std::nullopt;
            char *end = nullptr;
            const long long v = std::strtoll(raw, &end, 10);
            if (*end != '\0')
                return std::nullopt;
            return v;
        }

        void emit(const std::string &path, const std::string &text, std::ostream &out)
        {
            if (path.empty())
                out << text;
            else
                io::write_text_file(path, text);
        }

        struct DesignArgs
        {
            std::string config_path;
            std::uint64_t channel_seed = 1;
            std::uint64_t graph_seed = 1;
            bool optimal = false;
            int retry_budget = kDefaultRetryBudget;
            std::string out;
        };

        struct SimulateArgs
        {
            std::string bundle_path;
            std::string snr = "40:10:60";
            int trials = 10;
            std::uint64_t seed = 1;
            std::string symbols = "gaussian";
            std::string cancellation = "genie";
            bool json_output = false;
            std::string out;
        };

        int cmd_feasibility(const std::string &path, std::ostream &out)
        {
            const SystemConfig config = io::load_config(path);
            const FeasibilityVerdict verdict = check_feasibility(config);
            out << io::to_json(verdict, config).dump(2) << "\n";
            return verdict.feasible ? kExitOk : kExitDomain;
        }

        int cmd_design(const DesignArgs &args, std::ostream &out, std::ostream &err)
        {
            const SystemConfig config = io::load_config(args.config_path);
            DesignOptions options;
            options.channel_seed = args.channel_seed;
            options.graph_seed = args.graph_seed;
            options.optimal = args.optimal;
            options.retry_budget = args.retry_budget;
            options.tolerances = Tolerances::from_env();
            options.solver.rank_tol = options.tolerances.rank;

            if (args.optimal && !is_optimal_tuple(config))
                err << "note: tuple does not reach 2M DoF with k_IAC = 2; using the general construction\n";

            const Design design = run_design(config, options);

            io::RunManifest manifest;
            manifest.command = "design";
            manifest.tool_version = IAC_TOOL_VERSION;
            manifest.channel_seed = args.channel_seed;
            manifest.graph_seed = args.graph_seed;
            manifest.retry_budget = args.retry_budget;
            manifest.optimal = design.used_optimal;
            manifest.tolerances = options.tolerances;
            manifest.timestamp = source_date_epoch();
            for (const ReceiverCheck &rc : design.report.per_receiver)
                manifest.sigma_min_effective.push_back(rc.sigma_min_effective);

            const io::DesignBundle bundle{manifest,
                                          design.config,
                                          design.channels,
                                          design.build.graph,
                                          design.build.equations,
                                          design.transceivers.precoders,
                                          design.transceivers.receivers,
                                          design.report};
            if (!args.out.empty())
                io::write_text_file(args.out, io::to_json(bundle).dump(2) + "\n");

            json summary = {{"report", io::to_json(design.report)},
                            {"construction", io::to_json(design.build.trace)},
                            {"equations", design.build.equations.size()}};
            out << summary.dump(2) << "\n";
            for (const std::string &f : design.report.failures)
                err << "verification failed: " << f << "\n";
            return design.report.pass ? kExitOk : kExitDomain;
        }

        int cmd_simulate(const SimulateArgs &args, std::ostream &out, std::ostream &err)
        {
            const io::DesignBundle bundle = io::load_bundle(args.bundle_path);

            // the stored design must reproduce the verifier's effective-channel conditioning
            const DesignReport check = verify_design(bundle.channels, bundle.precoders, bundle.receivers,
                                                     bundle.equations, bundle.config, bundle.manifest.tolerances);
            const std::vector<double> &recorded = bundle.manifest.sigma_min_effective;
            if (recorded.size() != check.per_receiver.size())
                throw Error(ErrorCode::Format, "bundle manifest does not record sigma_min for every receiver");
            for (std::size_t k = 0; k < recorded.size(); ++k)
                if (!(std::abs(recorded[k] - check.per_receiver[k].sigma_min_effective) <= 1e-12))
                    throw Error(ErrorCode::Format,
                                "bundle does not reproduce the recorded sigma_min at receiver " + std::to_string(k + 1));

            SimParams params;
            params.snr_db = parse_snr_range(args.snr);
            params.trials = args.trials;
            params.seed = args.seed;
            params.symbols = args.symbols == "qpsk" ? SymbolModel::Qpsk : SymbolModel::Gaussian;
            params.cancellation = args.cancellation == "detected" ? Cancellation::Detected : Cancellation::Genie;
            params.validate();

            const SweepResult sweep =
                snr_sweep(bundle.channels, bundle.precoders, bundle.receivers, bundle.config, params);
            emit(args.out, args.json_output ? io::to_json(sweep).dump(2) + "\n" : io::sweep_csv(sweep), out);

            std::ostream &note = args.out.empty() ? err : out;
            if (sweep.rows.size() < 2)
            {
                note << "dof slope: needs at least two SNR points\n";
                return kExitOk;
            }
            const double lo = sweep.rows[sweep.rows.size() - 2].snr_db;
            const double hi = sweep.rows.back().snr_db;
            if (!std::isfinite(hi))
            {
                note << "dof slope: not defined against an infinite SNR point\n";
                return kExitOk;
            }
            note << "dof slope " << lo << " -> " << hi << " dB: " << estimate_dof_slope(sweep, lo, hi)
                 << " (total DoF " << sweep.total_dof << ")\n";
            return kExitOk;
        }

        int cmd_enumerate(int m, int k, bool lines, std::ostream &out)
        {
            const auto tuples = enumerate_optimal_tuples(m, k);
            if (!lines)
            {
                out << json(tuples).dump() << "\n";
                return kExitOk;
            }
            for (const auto &t : tuples)
            {
                for (std::size_t i = 0; i < t.size(); ++i)
                    out << (i ? " " : "") << t[i];
                out << "\n";
            }
            return kExitOk;
        }

        int cmd_graph_export(const std::string &path, bool dot, const std::string &out_path, std::ostream &out)
        {
            const io::DesignBundle bundle = io::load_bundle(path);
            if (dot)
                emit(out_path, io::to_dot(bundle.graph), out);
            else
            {
                json doc = io::to_json(bundle.graph);
                doc["equations"] = io::to_json(bundle.equations);
                emit(out_path, doc.dump(2) + "\n", out);
            }
            return kExitOk;
        }
    } // namespace

    std::vector<double> parse_snr_range(const std::string &range)
    {
        std::vector<double> parts;
        std::stringstream ss(range);
        std::string item;
        while (std::getline(ss, item, ':'))
        {
            std::size_t used = 0;
            double v = 0.0;
            try
            {
                v = std::stod(item, &used);
            }
            catch (const std::exception &)
            {
                throw std::invalid_argument("bad SNR value '" + item + "'");
            }
            if (used != item.size() || std::isnan(v))
                throw std::invalid_argument("bad SNR value '" + item + "'");
            parts.push_back(v);
        }
        if (parts.size() == 1)
            return parts;
        if (parts.size() != 3)
            throw std::invalid_argument("SNR range must be 'lo:step:hi' or a single value");
        const double lo = parts[0], step = parts[1], hi = parts[2];
        if (!(step > 0.0) || !(hi >= lo) || !std::isfinite(lo) || !std::isfinite(hi))
            throw std::invalid_argument("SNR range needs step > 0 and hi >= lo");
        std::vector<double> out;
        for (int i = 0;; ++i)
        {
            const double v = lo + i * step;
            if (v > hi + 1e-9 * std::max(1.0, std::abs(hi)))
                break;
            out.push_back(v);
        }
        return out;
    }

    int run_cli(int argc, const char *const *argv, std::ostream &out, std::ostream &err)
    {
        CLI::App app{"Closed-form interference alignment and cancellation designs for the K-user MIMO "
                     "interference channel"};
        app.set_version_flag("--version", IAC_TOOL_VERSION);
        app.require_subcommand(1);

        std::string config_path;
        auto *feas = app.add_subcommand("feasibility", "Check whether a DoF tuple admits a closed-form design");
        feas->add_option("config", config_path, "config JSON with K, M, d")->required();

        DesignArgs design;
        auto *des = app.add_subcommand("design", "Build, solve and verify a design; write a bundle");
        des->add_option("config", design.config_path, "config JSON with K, M, d")->required();
        des->add_option("--channel-seed", design.channel_seed, "seed for the channel draw");
        des->add_option("--graph-seed", design.graph_seed, "seed for the graph construction and tree roots");
        des->add_flag("--optimal", design.optimal, "use the round-robin layout for 2M-DoF tuples");
        des->add_option("--retry-budget", design.retry_budget, "reference-set restarts allowed per receiver")
            ->check(CLI::NonNegativeNumber);
        des->add_option("--out", design.out, "bundle output path");

        SimulateArgs sim;
        auto *simc = app.add_subcommand("simulate", "SNR sweep over a design bundle");
        simc->add_option("bundle", sim.bundle_path, "design bundle")->required();
        simc->add_option("--snr", sim.snr, "lo:step:hi in dB, or one value");
        simc->add_option("--trials", sim.trials, "trials per SNR point")->check(CLI::PositiveNumber);
        simc->add_option("--seed", sim.seed, "seed for symbols and noise");
        simc->add_option("--symbols", sim.symbols, "gaussian or qpsk")->check(CLI::IsMember({"gaussian", "qpsk"}));
        simc->add_option("--cancellation", sim.cancellation, "genie or detected")
            ->check(CLI::IsMember({"genie", "detected"}));
        simc->add_flag("--json", sim.json_output, "write JSON with per-stream detail instead of CSV");
        simc->add_option("--out", sim.out, "output path (stdout when omitted)");

        int enum_m = 0;
        int enum_k = 0;
        bool enum_lines = false;
        auto *en = app.add_subcommand("enumerate-optimal", "List DoF tuples reaching 2M with k_IAC = 2");
        en->add_option("--m", enum_m, "antennas per node")->required();
        en->add_option("--k", enum_k, "number of users")->required();
        en->add_flag("--lines", enum_lines, "one tuple per line instead of a JSON array");

        std::string graph_bundle;
        std::string graph_out;
        bool graph_dot = false;
        auto *ge = app.add_subcommand("graph-export", "Export the alignment graph of a bundle");
        ge->add_option("bundle", graph_bundle, "design bundle")->required();
        ge->add_flag("--dot", graph_dot, "Graphviz DOT instead of JSON");
        ge->add_option("--out", graph_out, "output path (stdout when omitted)");

        try
        {
            app.parse(argc, argv);
        }
        catch (const CLI::ParseError &e)
        {
            const int code = app.exit(e, out, err);
            return code == 0 ? kExitOk : kExitInput;
        }

        try
        {
            if (*feas)
                return cmd_feasibility(config_path, out);
            if (*des)
                return cmd_design(design, out, err);
            if (*simc)
                return cmd_simulate(sim, out, err);
            if (*en)
                return cmd_enumerate(enum_m, enum_k, enum_lines, out);
            if (*ge)
                return cmd_graph_export(graph_bundle, graph_dot, graph_out, out);
        }
        catch (const ConstructionExhausted &e)
        {
            err << "error: " << e.what() << "\n";
            return kExitConstruction;
        }
        catch (const Error &e)
        {
            err << "error: " << e.what() << "\n";
            return exit_code_for(e.code());
        }
        catch (const std::invalid_argument &e)
        {
            err << "error: " << e.what() << "\n";
            return kExitInput;
        }
        return kExitInput;
    }

    int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err)
    {
        std::vector<const char *> argv{"iac"};
        for (const std::string &a : args)
            argv.push_back(a.c_str());
        return run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    }

} // namespace iac::cli
