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

#include "ubandit/plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

namespace ubandit {

namespace {

constexpr double kWidth = 760, kHeight = 480;
constexpr double kLeft = 80, kRight = 200, kTop = 48, kBottom = 64;
constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e",
                                    "#9467bd", "#8c564b", "#e377c2", "#7f7f7f"};

std::string g6(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

struct Range {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();

  void add(double v) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  void finish() {
    if (!std::isfinite(lo)) lo = 0, hi = 1;
    if (hi <= lo) hi = lo + 1;
  }
};

}  // namespace

std::string render_svg(std::span<const Series> series, const ChartLabels& labels) {
  Range xr, yr;
  yr.add(0.0);  // regret charts start at zero
  for (const auto& s : series) {
    for (const auto& [x, y] : s.points) {
      xr.add(x);
      yr.add(y);
    }
  }
  xr.finish();
  yr.finish();

  const double pw = kWidth - kLeft - kRight;
  const double ph = kHeight - kTop - kBottom;
  const double sx = pw / (xr.hi - xr.lo);
  const double sy = ph / (yr.hi - yr.lo);
  const double x0 = kLeft, y0 = kTop + ph;  // pixel position of (lo, lo)
  auto px = [&](double x) { return x0 + (x - xr.lo) * sx; };
  auto py = [&](double y) { return y0 - (y - yr.lo) * sy; };

  std::ostringstream o;
  o << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
    << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\""
    << kWidth << "\" height=\"" << kHeight << "\" viewBox=\"0 0 " << kWidth
    << ' ' << kHeight << "\" font-family=\"sans-serif\" font-size=\"12\">\n"
    << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
    << "<text x=\"" << kLeft + pw / 2 << "\" y=\"28\" text-anchor=\"middle\" "
    << "font-size=\"15\">" << escape(labels.title) << "</text>\n";

  // Axes and ticks.
  o << "<g stroke=\"black\" stroke-width=\"1\">\n"
    << "<line x1=\"" << x0 << "\" y1=\"" << y0 << "\" x2=\"" << x0 + pw
    << "\" y2=\"" << y0 << "\"/>\n"
    << "<line x1=\"" << x0 << "\" y1=\"" << y0 << "\" x2=\"" << x0
    << "\" y2=\"" << kTop << "\"/>\n</g>\n";
  constexpr int kTicks = 5;
  o << "<g fill=\"black\">\n";
  for (int i = 0; i <= kTicks; ++i) {
    const double xv = xr.lo + (xr.hi - xr.lo) * i / kTicks;
    const double yv = yr.lo + (yr.hi - yr.lo) * i / kTicks;
    o << "<line x1=\"" << g6(px(xv)) << "\" y1=\"" << y0 << "\" x2=\""
      << g6(px(xv)) << "\" y2=\"" << y0 + 5 << "\" stroke=\"black\"/>"
      << "<text x=\"" << g6(px(xv)) << "\" y=\"" << y0 + 18
      << "\" text-anchor=\"middle\">" << g6(xv) << "</text>\n"
      << "<line x1=\"" << x0 - 5 << "\" y1=\"" << g6(py(yv)) << "\" x2=\""
      << x0 << "\" y2=\"" << g6(py(yv)) << "\" stroke=\"black\"/>"
      << "<text x=\"" << x0 - 8 << "\" y=\"" << g6(py(yv) + 4)
      << "\" text-anchor=\"end\">" << g6(yv) << "</text>\n";
  }
  o << "</g>\n"
    << "<text x=\"" << kLeft + pw / 2 << "\" y=\"" << kHeight - 18
    << "\" text-anchor=\"middle\">" << escape(labels.x_axis) << "</text>\n"
    << "<text x=\"18\" y=\"" << kTop + ph / 2
    << "\" text-anchor=\"middle\" transform=\"rotate(-90 18 " << kTop + ph / 2
    << ")\">" << escape(labels.y_axis) << "</text>\n";

  // Data, in data coordinates.
  o << "<g transform=\"matrix(" << g6(sx) << " 0 0 " << g6(-sy) << ' '
    << g6(x0 - xr.lo * sx) << ' ' << g6(y0 + yr.lo * sy) << ")\" fill=\"none\""
    << " stroke-width=\"2\">\n";
  for (std::size_t i = 0; i < series.size(); ++i) {
    o << "<polyline vector-effect=\"non-scaling-stroke\" stroke=\""
      << kPalette[i % std::size(kPalette)] << "\" points=\"";
    bool first = true;
    for (const auto& [x, y] : series[i].points) {
      if (!first) o << ' ';
      o << g6(x) << ',' << g6(y);
      first = false;
    }
    o << "\"><title>" << escape(series[i].label) << "</title></polyline>\n";
  }
  o << "</g>\n";

  // Legend.
  o << "<g>\n";
  for (std::size_t i = 0; i < series.size(); ++i) {
    const double ly = kTop + 10 + 20.0 * static_cast<double>(i);
    o << "<rect x=\"" << x0 + pw + 16 << "\" y=\"" << ly - 9
      << "\" width=\"14\" height=\"4\" fill=\"" << kPalette[i % std::size(kPalette)]
      << "\"/><text x=\"" << x0 + pw + 36 << "\" y=\"" << ly << "\">"
      << escape(series[i].label) << "</text>\n";
  }
  o << "</g>\n</svg>\n";
  return o.str();
}

std::vector<Series> regret_series(std::span<const AggregateCurve> curves,
                                  std::size_t max_points) {
  std::set<double> deltas;
  for (const auto& c : curves) deltas.insert(c.delta);
  std::vector<Series> out;
  for (const auto& c : curves) {
    Series s;
    s.label = c.policy_name;
    if (deltas.size() > 1) s.label += " (delta=" + g6(c.delta) + ")";
    const auto n = static_cast<std::size_t>(c.mean_realized.size());
    const std::size_t stride =
        std::max<std::size_t>(1, (n + std::max<std::size_t>(max_points, 2) - 2) /
                                     (std::max<std::size_t>(max_points, 2) - 1));
    for (std::size_t t = 0; t < n; t += stride) {
      s.points.emplace_back(static_cast<double>(t + 1),
                            c.mean_realized[static_cast<Index>(t)]);
    }
    if (n > 0 && (n - 1) % stride != 0) {
      s.points.emplace_back(static_cast<double>(n),
                            c.mean_realized[static_cast<Index>(n - 1)]);
    }
    out.push_back(std::move(s));
  }
  return out;
}

std::vector<Series> sweep_series(std::span<const SweepRow> rows) {
  std::vector<Series> out;
  for (const auto& r : rows) {
    auto it = std::find_if(out.begin(), out.end(),
                           [&](const Series& s) { return s.label == r.policy_name; });
    if (it == out.end()) {
      out.push_back({r.policy_name, {}});
      it = out.end() - 1;
    }
    it->points.emplace_back(r.delta, r.mean_realized);
  }
  return out;
}

namespace {

void write_text(const std::string& text, const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path + " for writing");
  out << text;
  out.flush();
  if (!out) throw IoError("error writing " + path);
}

}  // namespace

void emit_plot(std::span<const AggregateCurve> curves, const std::string& path,
               std::size_t max_points) {
  if (curves.empty()) throw ValidationError("emit_plot: no curves");
  const auto series = regret_series(curves, max_points);
  write_text(render_svg(series, {"Cumulative regret", "t", "mean C_t"}), path);
}

void emit_sweep_plot(std::span<const SweepRow> rows, const std::string& path) {
  if (rows.empty()) throw ValidationError("emit_sweep_plot: no rows");
  const auto series = sweep_series(rows);
  write_text(render_svg(series, {"Final cumulative regret vs delta", "delta",
                                 "mean C_T"}),
             path);
}

}  // namespace ubandit
