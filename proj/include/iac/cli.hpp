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

#ifndef IAC_CLI_HPP
#define IAC_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace iac::cli
{
    // Exit codes shared by every subcommand.
    inline constexpr int kExitOk = 0;
    inline constexpr int kExitDomain = 1;       // infeasible tuple, failed verification
    inline constexpr int kExitInput = 2;        // unreadable or malformed input, bad flags
    inline constexpr int kExitConstruction = 3; // graph construction ran out of restarts
    inline constexpr int kExitNumeric = 4;      // singular channels, degenerate eigenproblems, rank loss

    int run_cli(int argc, const char *const *argv, std::ostream &out, std::ostream &err);

    // Convenience for tests: argv[0] is supplied.
    int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

    // "lo:step:hi" or a single value; throws std::invalid_argument.
    std::vector<double> parse_snr_range(const std::string &range);

} // namespace iac::cli

#endif
