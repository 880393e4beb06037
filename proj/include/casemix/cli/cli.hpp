// Copyright 2026 The Casemix Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef CASEMIX_CLI_CLI_HPP_
#define CASEMIX_CLI_CLI_HPP_

#include <ostream>

namespace casemix::cli {

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kInfeasible = 1;  // infeasible solve or zeroed caseload
inline constexpr int kUsage = 2;       // bad flags, unreadable or invalid input
inline constexpr int kInternal = 3;

// Runs `casemix <subcommand> ...`. JSON results go to `out` unless --out is
// given; diagnostics go to `err`.
int Run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace casemix::cli

#endif  // CASEMIX_CLI_CLI_HPP_
