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

// JSON experiment configs and CSV results.

#ifndef UBANDIT_IO_HPP_
#define UBANDIT_IO_HPP_

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ubandit/sim.hpp"

namespace ubandit {

/// Header of the per-trace results file.
inline constexpr std::string_view kResultsHeader =
    "policy,delta,rep,t,cum_realized,cum_pseudo";
inline constexpr std::string_view kCurvesHeader =
    "policy,delta,t,replications,mean_cum_realized,se_cum_realized,"
    "mean_cum_pseudo,se_cum_pseudo";
inline constexpr std::string_view kSweepHeader =
    "delta,policy,replications,mean_cum_realized,se_cum_realized,"
    "mean_cum_pseudo,se_cum_pseudo";

/// Parses a config document. Throws ParseError for malformed JSON and
/// ValidationError (naming the key, what was expected and what was found)
/// for anything else, including unknown keys.
ExperimentConfig parse_config(std::string_view text);
ExperimentConfig load_config(const std::string& path);

/// %.17g, which round-trips every double.
std::string format_exact(double v);

/// One row per (trace, t), t counted from 1, in the order given.
void write_results(std::span<const RegretTrace> traces, const std::string& path);
std::vector<RegretTrace> read_results(const std::string& path);

void write_curves(std::span<const AggregateCurve> curves, const std::string& path);
void write_sweep(std::span<const SweepRow> rows, const std::string& path);

/// Whole file as a string; IoError if it cannot be read.
std::string read_file(const std::string& path);

}  // namespace ubandit

#endif  // UBANDIT_IO_HPP_
