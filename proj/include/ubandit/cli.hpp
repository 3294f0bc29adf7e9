// Copyright 2026 The ubandit Authors.
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

#ifndef UBANDIT_CLI_HPP_
#define UBANDIT_CLI_HPP_

#include <ostream>
#include <string>
#include <vector>

namespace ubandit {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;  // runtime error, failed check
inline constexpr int kExitUsage = 2;    // bad command line

/// Runs the command line `args` (args[0] is the program name):
///
///   simulate <config>         run, write results.csv, curves.csv, regret.svg
///   sweep <config>            delta sweep, write sweep.csv, sweep.svg
///   bound <config>            print the regret lower bound per delta
///   stationary <config>       print nu and the genie-biased nu per delta
///   verify-theorem1 <config>  print the per-target table and verdict
///
/// Flags: --seed <u64>, --out <dir>, --quiet, --workers <n>.
int cli_dispatch(const std::vector<std::string>& args, std::ostream& out,
                 std::ostream& err);

}  // namespace ubandit

#endif  // UBANDIT_CLI_HPP_
