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

#include "iac/cli.hpp"
#include "iac/serialization.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <regex>
#include <sstream>
#include <unistd.h>

using iac::io::json;
namespace cli = iac::cli;

namespace
{
    struct Run
    {
        int code = -1;
        std::string out;
        std::string err;
    };

    Run run(const std::vector<std::string> &args)
    {
        std::ostringstream out, err;
        Run r;
        r.code = cli::run_cli(args, out, err);
        r.out = out.str();
        r.err = err.str();
        return r;
    }

    std::filesystem::path scratch(const std::string &name)
    {
        const auto dir = std::filesystem::temp_directory_path() / ("iac_cli_" + std::to_string(::getpid()));
        std::filesystem::create_directories(dir);
        return dir / name;
    }

    std::string write_config(const std::string &name, const std::string &text)
    {
        const auto path = scratch(name);
        std::ofstream(path) << text;
        return path.string();
    }

    std::string slurp(const std::string &path)
    {
        std::ifstream in(path);
        std::stringstream ss;
        ss << in.rdbuf();
        return ss.str();
    }

    const std::string &twelve_bundle()
    {
        static const std::string path = []
        {
            const std::string cfg = write_config("twelve.json", R"({"K": 5, "M": 6, "d": [3, 3, 2, 2, 2]})");
            const std::string out = scratch("twelve_bundle.json").string();
            REQUIRE(run({"design", cfg, "--optimal", "--channel-seed", "3", "--graph-seed", "4", "--out", out}).code ==
                    0);
            return out;
        }();
        return path;
    }
}

TEST_CASE("feasibility subcommand")
{
    const Run ok = run({"feasibility", write_config("f1.json", R"({"K": 5, "M": 6, "d": [3, 3, 2, 2, 2]})")});
    CHECK(ok.code == cli::kExitOk);
    const json verdict = json::parse(ok.out);
    CHECK(verdict["feasible"] == true);
    CHECK(verdict["k_iac"] == 2);
    CHECK(verdict["overhead_packets"] == 21);

    const Run bad = run({"feasibility", write_config("f2.json", R"({"K": 3, "M": 2, "d": [2, 2, 2]})")});
    CHECK(bad.code == cli::kExitDomain);
    const json failed = json::parse(bad.out)["failed_inequalities"];
    REQUIRE(failed.size() >= 1);
    CHECK(failed[0]["kind"] == "receiver_pair");
    CHECK(failed[0]["receiver"] == 1);

    CHECK(run({"feasibility", "/nonexistent/cfg.json"}).code == cli::kExitInput);
    CHECK(run({"feasibility", write_config("f3.json", R"({"M": 2, "d": [3]})")}).code == cli::kExitInput);
}

TEST_CASE("design subcommand")
{
    const json bundle = json::parse(slurp(twelve_bundle()));
    CHECK(bundle["report"]["pass"] == true);
    CHECK(bundle["report"]["total_dof_claimed"] == 12);
    CHECK(bundle["manifest"]["optimal"] == true);
    CHECK(bundle["equations"].size() == 9);

    const std::string cfg = write_config("eleven.json", R"({"K": 5, "M": 6, "d": [3, 1, 3, 2, 2]})");
    const std::string out = scratch("eleven_bundle.json").string();
    const Run r = run({"design", cfg, "--graph-seed", "12", "--out", out});
    CHECK(r.code == cli::kExitOk);
    const json eleven = json::parse(slurp(out));
    CHECK(eleven["equations"].size() == 8);
    CHECK(eleven["graph"]["edges"].size() == 8);
    CHECK(json::parse(r.out)["report"]["k_iac"] == 3);

    const Run infeasible = run({"design", write_config("inf.json", R"({"M": 2, "d": [2, 2, 2]})")});
    CHECK(infeasible.code == cli::kExitDomain);
    CHECK(infeasible.err.find("receiver_pair") != std::string::npos);

    const Run note = run({"design", cfg, "--optimal"});
    CHECK(note.code == cli::kExitOk);
    CHECK(note.err.find("general construction") != std::string::npos);
}

TEST_CASE("design failures map to exit codes")
{
    const std::string cfg = write_config("eleven2.json", R"({"K": 5, "M": 6, "d": [3, 1, 3, 2, 2]})");
    ::setenv("IAC_SIGMA_MIN", "1e9", 1);
    CHECK(run({"design", cfg}).code == cli::kExitDomain);
    ::setenv("IAC_SIGMA_MIN", "not-a-number", 1);
    CHECK(run({"design", cfg}).code == cli::kExitInput);
    ::unsetenv("IAC_SIGMA_MIN");
    CHECK(run({"design", cfg, "--retry-budget", "-3"}).code == cli::kExitInput);
}

TEST_CASE("identical flags give identical bundles")
{
    const std::string cfg = write_config("det.json", R"({"K": 5, "M": 6, "d": [3, 1, 3, 2, 2]})");
    const std::string a = scratch("det_a.json").string();
    const std::string b = scratch("det_b.json").string();
    REQUIRE(run({"design", cfg, "--channel-seed", "8", "--graph-seed", "9", "--out", a}).code == 0);
    REQUIRE(run({"design", cfg, "--channel-seed", "8", "--graph-seed", "9", "--out", b}).code == 0);
    CHECK(slurp(a) == slurp(b));

    ::setenv("SOURCE_DATE_EPOCH", "1700000000", 1);
    REQUIRE(run({"design", cfg, "--out", a}).code == 0);
    ::unsetenv("SOURCE_DATE_EPOCH");
    CHECK(json::parse(slurp(a))["manifest"]["timestamp"] == 1700000000);
}

TEST_CASE("simulate subcommand")
{
    const std::string csv = scratch("sweep.csv").string();
    const Run r = run({"simulate", twelve_bundle(), "--snr", "40:10:60", "--trials", "50", "--seed", "2", "--out", csv});
    CHECK(r.code == cli::kExitOk);
    const std::string text = slurp(csv);
    CHECK(text.rfind("snr_db,sum_rate_bits,slope_ref\n", 0) == 0);
    CHECK(std::count(text.begin(), text.end(), '\n') == 4);

    std::smatch m;
    REQUIRE(std::regex_search(r.out, m, std::regex("dof slope 50 -> 60 dB: ([0-9.]+)")));
    CHECK(std::stod(m[1]) == doctest::Approx(12.0).epsilon(0.05));

    const Run one = run({"simulate", twelve_bundle(), "--snr", "30", "--trials", "2"});
    CHECK(one.code == cli::kExitOk);
    CHECK(one.err.find("needs at least two SNR points") != std::string::npos);
    CHECK(one.out.rfind("snr_db,sum_rate_bits,slope_ref\n30,", 0) == 0);

    const Run js = run({"simulate", twelve_bundle(), "--snr", "10:10:20", "--json", "--symbols", "qpsk",
                        "--cancellation", "detected"});
    CHECK(js.code == cli::kExitOk);
    const json sweep = json::parse(js.out);
    CHECK(sweep["rows"].size() == 2);
    CHECK(sweep["rows"][0]["per_stream_sinr_db"].size() == 12);
    CHECK(sweep["rows"][0]["packets_shared"] == 21);

    CHECK(run({"simulate", twelve_bundle(), "--cancellation", "detected"}).code == cli::kExitInput);
    CHECK(run({"simulate", twelve_bundle(), "--snr", "60:10:40"}).code == cli::kExitInput);
    CHECK(run({"simulate", twelve_bundle(), "--trials", "0"}).code == cli::kExitInput);
}

TEST_CASE("simulate rejects corrupted bundles")
{
    const std::string corrupt = scratch("corrupt.json").string();
    std::ofstream(corrupt) << slurp(twelve_bundle()).substr(0, 500);
    CHECK(run({"simulate", corrupt}).code == cli::kExitInput);

    // a stored design that no longer reproduces its recorded conditioning
    json doc = json::parse(slurp(twelve_bundle()));
    doc["manifest"]["sigma_min_effective"][0] = doc["manifest"]["sigma_min_effective"][0].get<double>() * 1.001;
    const std::string tampered = scratch("tampered.json").string();
    std::ofstream(tampered) << doc.dump();
    const Run r = run({"simulate", tampered});
    CHECK(r.code == cli::kExitInput);
    CHECK(r.err.find("sigma_min") != std::string::npos);

    CHECK(run({"simulate", "/nonexistent/bundle.json"}).code == cli::kExitInput);
}

TEST_CASE("enumerate-optimal subcommand")
{
    const Run r = run({"enumerate-optimal", "--m", "6", "--k", "5"});
    CHECK(r.code == cli::kExitOk);
    const json list = json::parse(r.out);
    CHECK(std::find(list.begin(), list.end(), json({3, 3, 2, 2, 2})) != list.end());

    const Run lines = run({"enumerate-optimal", "--m", "2", "--k", "4", "--lines"});
    CHECK(lines.out == "1 1 1 1\n");
    CHECK(run({"enumerate-optimal", "--m", "6"}).code == cli::kExitInput);
}

TEST_CASE("graph-export subcommand")
{
    const Run dot = run({"graph-export", twelve_bundle(), "--dot"});
    CHECK(dot.code == cli::kExitOk);
    CHECK(dot.out.find("[label=\"rx 2\"]") != std::string::npos);

    const Run js = run({"graph-export", twelve_bundle()});
    const json doc = json::parse(js.out);
    CHECK(doc["edges"].size() == 9);
    CHECK(doc["equations"].size() == 9);
}

TEST_CASE("argument errors")
{
    CHECK(run({}).code == cli::kExitInput);
    CHECK(run({"bogus"}).code == cli::kExitInput);
    CHECK(run({"design"}).code == cli::kExitInput);
    CHECK(run({"--help"}).code == cli::kExitOk);
    CHECK(run({"--version"}).code == cli::kExitOk);
}

TEST_CASE("SNR ranges")
{
    CHECK(cli::parse_snr_range("40:10:60") == std::vector<double>{40.0, 50.0, 60.0});
    CHECK(cli::parse_snr_range("0:2.5:5") == std::vector<double>{0.0, 2.5, 5.0});
    CHECK(cli::parse_snr_range("7") == std::vector<double>{7.0});
    CHECK_THROWS_AS(cli::parse_snr_range("1:2"), std::invalid_argument);
    CHECK_THROWS_AS(cli::parse_snr_range("0:0:5"), std::invalid_argument);
    CHECK_THROWS_AS(cli::parse_snr_range("a:1:2"), std::invalid_argument);
}
