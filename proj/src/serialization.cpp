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

#include "iac/serialization.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace iac::io
{
    namespace
    {
        // Re-throws library type/range errors as Format errors naming what was being parsed.
        template <typename F>
        auto guarded(std::string_view what, F &&parse)
        {
            try
            {
                return parse();
            }
            catch (const json::exception &e)
            {
                throw Error(ErrorCode::Format, std::string(what) + ": " + e.what());
            }
        }

        int get_int(const json &doc, const char *key)
        {
            const json &v = doc.at(key);
            if (!v.is_number_integer())
                throw Error(ErrorCode::Format, std::string("'") + key + "' must be an integer");
            return v.get<int>();
        }

        json stream_to_json(StreamId id)
        {
            return {{"j", id.tx}, {"l", id.stream}};
        }

        StreamId stream_from_json(const json &doc)
        {
            return {get_int(doc, "j"), get_int(doc, "l")};
        }

        json matrices_to_json(const std::vector<CMatrix> &ms)
        {
            json out = json::array();
            for (const CMatrix &m : ms)
                out.push_back(matrix_to_json(m));
            return out;
        }

        std::vector<CMatrix> matrices_from_json(const json &doc)
        {
            std::vector<CMatrix> out;
            for (const json &m : doc)
                out.push_back(matrix_from_json(m));
            return out;
        }

        void check_shapes(const std::vector<CMatrix> &ms, const SystemConfig &config, const char *what)
        {
            if (static_cast<int>(ms.size()) != config.num_users())
                throw Error(ErrorCode::Format, std::string(what) + ": expected one matrix per user");
            for (int j = 1; j <= config.num_users(); ++j)
            {
                const CMatrix &m = ms[static_cast<std::size_t>(j - 1)];
                if (m.rows() != config.num_antennas() || m.cols() != config.dof(j))
                    throw Error(ErrorCode::Format,
                                std::string(what) + ": matrix " + std::to_string(j) + " has the wrong shape");
            }
        }

        json inequality_to_json(const InequalityCheck &c)
        {
            json out = {{"kind", to_string(c.kind)}, {"lhs", c.lhs}, {"rhs", c.rhs}, {"satisfied", c.satisfied()}};
            if (c.kind == InequalityKind::ReceiverPair)
                out["receiver"] = c.receiver;
            return out;
        }

        double get_real(const json &v)
        {
            // non-finite values are written as null
            if (v.is_null())
                return std::nan("");
            return v.get<double>();
        }
    } // namespace

    // ---------- config ----------

    json to_json(const SystemConfig &config)
    {
        return {{"K", config.num_users()}, {"M", config.num_antennas()}, {"d", config.dof()}};
    }

    SystemConfig config_from_json(const json &doc)
    {
        return guarded("config",
                       [&]
                       {
                           if (!doc.is_object())
                               throw Error(ErrorCode::Format, "config must be a JSON object");
                           const int m = get_int(doc, "M");
                           std::vector<int> d;
                           for (const json &v : doc.at("d"))
                           {
                               if (!v.is_number_integer())
                                   throw Error(ErrorCode::Format, "'d' must hold integers");
                               d.push_back(v.get<int>());
                           }
                           if (doc.contains("K") && get_int(doc, "K") != static_cast<int>(d.size()))
                               throw Error(ErrorCode::InvalidConfig, "'K' disagrees with the length of 'd'");
                           return SystemConfig(m, std::move(d));
                       });
    }

    SystemConfig load_config(const std::string &path)
    {
        return config_from_json(read_json_file(path));
    }

    // ---------- matrices and channels ----------

    json matrix_to_json(const CMatrix &m)
    {
        json data = json::array();
        for (Eigen::Index r = 0; r < m.rows(); ++r)
            for (Eigen::Index c = 0; c < m.cols(); ++c)
                data.push_back({m(r, c).real(), m(r, c).imag()});
        return {{"rows", m.rows()}, {"cols", m.cols()}, {"data", std::move(data)}};
    }

    CMatrix matrix_from_json(const json &doc)
    {
        return guarded("matrix",
                       [&]
                       {
                           const int rows = get_int(doc, "rows");
                           const int cols = get_int(doc, "cols");
                           const json &data = doc.at("data");
                           if (rows < 0 || cols < 0 || !data.is_array() ||
                               data.size() != static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols))
                               throw Error(ErrorCode::Format, "matrix data does not match its shape");
                           CMatrix m(rows, cols);
                           std::size_t i = 0;
                           for (Eigen::Index r = 0; r < rows; ++r)
                               for (Eigen::Index c = 0; c < cols; ++c, ++i)
                               {
                                   const json &pair = data[i];
                                   if (!pair.is_array() || pair.size() != 2 || !pair[0].is_number() ||
                                       !pair[1].is_number())
                                       throw Error(ErrorCode::Format, "matrix entries must be [re, im] pairs");
                                   m(r, c) = cx(pair[0].get<double>(), pair[1].get<double>());
                               }
                           return m;
                       });
    }

    json to_json(const ChannelSet &channels)
    {
        return {{"K", channels.num_users()},
                {"M", channels.num_antennas()},
                {"seed", channels.seed()},
                {"matrices", matrices_to_json(channels.matrices())}};
    }

    ChannelSet channels_from_json(const json &doc)
    {
        return guarded("channels",
                       [&]
                       {
                           return ChannelSet(get_int(doc, "K"), get_int(doc, "M"), doc.at("seed").get<std::uint64_t>(),
                                             matrices_from_json(doc.at("matrices")));
                       });
    }

    // ---------- graph ----------

    json to_json(const IacGraph &graph)
    {
        json vertices = json::array();
        for (StreamId v : graph.vertices())
            vertices.push_back(stream_to_json(v));
        json edges = json::array();
        for (const GraphEdge &e : graph.edges())
            edges.push_back({{"a", stream_to_json(e.reference)}, {"b", stream_to_json(e.aligned)}, {"label", e.label}});
        return {{"vertices", std::move(vertices)}, {"edges", std::move(edges)}};
    }

    IacGraph graph_from_json(const json &doc)
    {
        return guarded("graph",
                       [&]
                       {
                           std::vector<StreamId> vertices;
                           for (const json &v : doc.at("vertices"))
                               vertices.push_back(stream_from_json(v));
                           std::vector<GraphEdge> edges;
                           for (const json &e : doc.at("edges"))
                               edges.push_back(
                                   {stream_from_json(e.at("a")), stream_from_json(e.at("b")), get_int(e, "label")});
                           return IacGraph(std::move(vertices), std::move(edges));
                       });
    }

    json to_json(const AlignmentEquationSet &equations)
    {
        json out = json::array();
        for (const AlignmentEquation &eq : equations.equations())
            out.push_back({{"receiver", eq.receiver},
                           {"reference", stream_to_json(eq.reference)},
                           {"aligned", stream_to_json(eq.aligned)}});
        return out;
    }

    std::string to_dot(const IacGraph &graph)
    {
        std::ostringstream os;
        os << "graph iac {\n";
        for (StreamId v : graph.vertices())
            os << "  \"" << to_string(v) << "\";\n";
        for (const GraphEdge &e : graph.edges())
            os << "  \"" << to_string(e.reference) << "\" -- \"" << to_string(e.aligned) << "\" [label=\"rx "
               << e.label << "\"];\n";
        os << "}\n";
        return os.str();
    }

    // ---------- transceivers ----------

    json to_json(const PrecoderSet &precoders)
    {
        return matrices_to_json(precoders.v);
    }

    PrecoderSet precoders_from_json(const json &doc)
    {
        return guarded("precoders", [&] { return PrecoderSet{matrices_from_json(doc)}; });
    }

    json to_json(const ReceiverSet &receivers)
    {
        return matrices_to_json(receivers.u);
    }

    ReceiverSet receivers_from_json(const json &doc)
    {
        return guarded("receivers", [&] { return ReceiverSet{matrices_from_json(doc)}; });
    }

    // ---------- reports ----------

    json to_json(const FeasibilityVerdict &verdict, const SystemConfig &config)
    {
        json checks = json::array();
        json failed = json::array();
        for (const InequalityCheck &c : verdict.checks)
            checks.push_back(inequality_to_json(c));
        for (const InequalityCheck &c : verdict.failed_inequalities)
            failed.push_back(inequality_to_json(c));
        return {{"config", to_json(config)},
                {"feasible", verdict.feasible},
                {"k_iac", verdict.k_iac},
                {"overhead_packets", compute_overhead(config)},
                {"total_dof", config.total_dof()},
                {"checks", std::move(checks)},
                {"failed_inequalities", std::move(failed)}};
    }

    json to_json(const ConstructionTrace &trace)
    {
        json receivers = json::array();
        for (const ReceiverTrace &rt : trace.receivers)
        {
            json refs = json::array();
            for (StreamId r : rt.references)
                refs.push_back(stream_to_json(r));
            receivers.push_back({{"receiver", rt.receiver},
                                 {"references", std::move(refs)},
                                 {"restarts", rt.restarts},
                                 {"merges", rt.merges},
                                 {"loops_closed", rt.loops_closed},
                                 {"edges_after", rt.edges_after},
                                 {"subgraphs_after", rt.subgraphs_after}});
        }
        return {{"receivers", std::move(receivers)},
                {"retry_budget", trace.retry_budget},
                {"rollbacks", trace.rollbacks},
                {"optimal_layout", trace.optimal_layout},
                {"fell_back", trace.fell_back}};
    }

    json to_json(const Tolerances &t)
    {
        return {{"align", t.align}, {"zf", t.zf}, {"sigma_min", t.sigma_min}, {"rank", t.rank}};
    }

    Tolerances tolerances_from_json(const json &doc)
    {
        return guarded("tolerances",
                       [&]
                       {
                           return Tolerances{doc.at("align").get<double>(), doc.at("zf").get<double>(),
                                             doc.at("sigma_min").get<double>(), doc.at("rank").get<double>()};
                       });
    }

    json to_json(const DesignReport &report)
    {
        json equations = json::array();
        for (const EquationResidual &r : report.per_equation)
            equations.push_back({{"receiver", r.equation.receiver},
                                 {"reference", stream_to_json(r.equation.reference)},
                                 {"aligned", stream_to_json(r.equation.aligned)},
                                 {"sin_angle", r.sin_angle}});
        json receivers = json::array();
        for (const ReceiverCheck &rc : report.per_receiver)
            receivers.push_back({{"k", rc.receiver},
                                 {"max_zf_residual", rc.max_zf_residual},
                                 {"raw_interference_residual", rc.raw_interference_residual},
                                 {"sigma_min_effective", rc.sigma_min_effective},
                                 {"signal_rank", rc.signal_rank},
                                 {"interference_rank", rc.interference_rank},
                                 {"dimension_ok", rc.dimension_ok}});
        return {{"k_iac", report.k_iac},
                {"overhead_packets", report.overhead_packets},
                {"total_dof_claimed", report.total_dof_claimed},
                {"pass", report.pass},
                {"tolerances", to_json(report.tolerances)},
                {"per_equation_residuals", std::move(equations)},
                {"per_receiver", std::move(receivers)},
                {"failures", report.failures}};
    }

    DesignReport report_from_json(const json &doc)
    {
        return guarded("report",
                       [&]
                       {
                           DesignReport r;
                           r.k_iac = get_int(doc, "k_iac");
                           r.overhead_packets = get_int(doc, "overhead_packets");
                           r.total_dof_claimed = get_int(doc, "total_dof_claimed");
                           r.pass = doc.at("pass").get<bool>();
                           r.tolerances = tolerances_from_json(doc.at("tolerances"));
                           for (const json &e : doc.at("per_equation_residuals"))
                               r.per_equation.push_back({{get_int(e, "receiver"), stream_from_json(e.at("reference")),
                                                          stream_from_json(e.at("aligned"))},
                                                         get_real(e.at("sin_angle"))});
                           for (const json &c : doc.at("per_receiver"))
                           {
                               ReceiverCheck rc;
                               rc.receiver = get_int(c, "k");
                               rc.max_zf_residual = get_real(c.at("max_zf_residual"));
                               rc.raw_interference_residual = get_real(c.at("raw_interference_residual"));
                               rc.sigma_min_effective = get_real(c.at("sigma_min_effective"));
                               rc.signal_rank = get_int(c, "signal_rank");
                               rc.interference_rank = get_int(c, "interference_rank");
                               rc.dimension_ok = c.at("dimension_ok").get<bool>();
                               r.per_receiver.push_back(rc);
                           }
                           r.failures = doc.at("failures").get<std::vector<std::string>>();
                           return r;
                       });
    }

    // ---------- sweeps ----------

    json to_json(const SweepResult &sweep)
    {
        json rows = json::array();
        for (const SweepRow &row : sweep.rows)
            rows.push_back({{"snr_db", row.snr_db},
                            {"mean_sum_rate_bits", row.mean_sum_rate},
                            {"per_user_rate", row.per_user_rate},
                            {"per_stream_sinr_db", row.per_stream_sinr_db},
                            {"packets_shared", row.packets_shared}});
        return {{"total_dof", sweep.total_dof}, {"rows", std::move(rows)}};
    }

    std::string sweep_csv(const SweepResult &sweep)
    {
        std::string out = "snr_db,sum_rate_bits,slope_ref\n";
        char line[128];
        for (const SweepRow &row : sweep.rows)
        {
            const double ref = sweep.total_dof * row.snr_db / 10.0 * std::log2(10.0);
            std::snprintf(line, sizeof line, "%.6g,%.10g,%.10g\n", row.snr_db, row.mean_sum_rate, ref);
            out += line;
        }
        return out;
    }

    // ---------- bundles ----------

    json to_json(const RunManifest &manifest)
    {
        return {{"command", manifest.command},
                {"tool_version", manifest.tool_version},
                {"channel_seed", manifest.channel_seed},
                {"graph_seed", manifest.graph_seed},
                {"retry_budget", manifest.retry_budget},
                {"optimal", manifest.optimal},
                {"tolerances", to_json(manifest.tolerances)},
                {"timestamp", manifest.timestamp ? json(*manifest.timestamp) : json(nullptr)},
                {"sigma_min_effective", manifest.sigma_min_effective}};
    }

    RunManifest manifest_from_json(const json &doc)
    {
        return guarded("manifest",
                       [&]
                       {
                           RunManifest m;
                           m.command = doc.at("command").get<std::string>();
                           m.tool_version = doc.at("tool_version").get<std::string>();
                           m.channel_seed = doc.at("channel_seed").get<std::uint64_t>();
                           m.graph_seed = doc.at("graph_seed").get<std::uint64_t>();
                           m.retry_budget = get_int(doc, "retry_budget");
                           m.optimal = doc.at("optimal").get<bool>();
                           m.tolerances = tolerances_from_json(doc.at("tolerances"));
                           if (!doc.at("timestamp").is_null())
                               m.timestamp = doc.at("timestamp").get<std::int64_t>();
                           for (const json &v : doc.value("sigma_min_effective", json::array()))
                               m.sigma_min_effective.push_back(get_real(v));
                           return m;
                       });
    }

    json to_json(const DesignBundle &bundle)
    {
        json manifest = to_json(bundle.manifest);
        manifest["config"] = to_json(bundle.config);

        return {{"format", kBundleFormat},
                {"version", kBundleVersion},
                {"manifest", std::move(manifest)},
                {"config", to_json(bundle.config)},
                {"channels", to_json(bundle.channels)},
                {"graph", to_json(bundle.graph)},
                {"equations", to_json(bundle.equations)},
                {"precoders", to_json(bundle.precoders)},
                {"receivers", to_json(bundle.receivers)},
                {"report", to_json(bundle.report)}};
    }

    DesignBundle bundle_from_json(const json &doc)
    {
        return guarded("bundle",
                       [&]
                       {
                           if (!doc.is_object() || doc.value("format", "") != kBundleFormat)
                               throw Error(ErrorCode::Format, "not a design bundle");
                           if (get_int(doc, "version") != kBundleVersion)
                               throw Error(ErrorCode::Format, "unsupported bundle version");

                           SystemConfig config = config_from_json(doc.at("config"));
                           ChannelSet channels = channels_from_json(doc.at("channels"));
                           if (channels.num_users() != config.num_users() ||
                               channels.num_antennas() != config.num_antennas())
                               throw Error(ErrorCode::Format, "channels do not match the config");
                           PrecoderSet precoders = precoders_from_json(doc.at("precoders"));
                           ReceiverSet receivers = receivers_from_json(doc.at("receivers"));
                           check_shapes(precoders.v, config, "precoders");
                           check_shapes(receivers.u, config, "receivers");

                           IacGraph graph = graph_from_json(doc.at("graph"));
                           std::vector<AlignmentEquation> eqs;
                           for (const json &e : doc.at("equations"))
                               eqs.push_back({get_int(e, "receiver"), stream_from_json(e.at("reference")),
                                              stream_from_json(e.at("aligned"))});
                           for (const AlignmentEquation &eq : eqs)
                               for (StreamId s : {eq.reference, eq.aligned})
                                   if (eq.receiver < 1 || eq.receiver > config.num_users() || s.tx < 1 ||
                                       s.tx > config.num_users() || s.stream < 1 || s.stream > config.dof(s.tx))
                                       throw Error(ErrorCode::Format, "equation refers to an unknown stream");

                           return DesignBundle{manifest_from_json(doc.at("manifest")),
                                               std::move(config),
                                               std::move(channels),
                                               std::move(graph),
                                               AlignmentEquationSet(std::move(eqs)),
                                               std::move(precoders),
                                               std::move(receivers),
                                               report_from_json(doc.at("report"))};
                       });
    }

    DesignBundle load_bundle(const std::string &path)
    {
        return bundle_from_json(read_json_file(path));
    }

    // ---------- files ----------

    json read_json_file(const std::string &path)
    {
        std::ifstream in(path);
        if (!in)
            throw Error(ErrorCode::Format, "cannot open " + path);
        try
        {
            return json::parse(in);
        }
        catch (const json::exception &e)
        {
            throw Error(ErrorCode::Format, path + ": " + e.what());
        }
    }

    void write_text_file(const std::string &path, const std::string &text)
    {
        std::ofstream out(path, std::ios::binary);
        if (!(out << text))
            throw Error(ErrorCode::Format, "cannot write " + path);
    }

} // namespace iac::io
