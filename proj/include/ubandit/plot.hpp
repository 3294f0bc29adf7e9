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

// Self-contained SVG line charts of regret curves and delta sweeps.

#ifndef UBANDIT_PLOT_HPP_
#define UBANDIT_PLOT_HPP_

#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ubandit/sim.hpp"

namespace ubandit {

struct Series {
  std::string label;
  std::vector<std::pair<double, double>> points;  // (x, y) in data units
};

struct ChartLabels {
  std::string title;
  std::string x_axis;
  std::string y_axis;
};

/// Polyline vertices are written in data coordinates (6 significant
/// digits) under a single transform, so they can be read back directly.
std::string render_svg(std::span<const Series> series, const ChartLabels& labels);

/// x = t, y = mean realized C_t, one polyline per curve. Long curves are
/// thinned to at most `max_points` vertices; the last tick is always kept.
std::vector<Series> regret_series(std::span<const AggregateCurve> curves,
                                  std::size_t max_points = 1000);
std::vector<Series> sweep_series(std::span<const SweepRow> rows);

void emit_plot(std::span<const AggregateCurve> curves, const std::string& path,
               std::size_t max_points = 1000);
void emit_sweep_plot(std::span<const SweepRow> rows, const std::string& path);

}  // namespace ubandit

#endif  // UBANDIT_PLOT_HPP_
