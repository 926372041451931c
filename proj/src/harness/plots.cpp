// Copyright 2026 The BLDS Authors.
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


#include <algorithm>
#include <cstdio>
#include <sstream>
#include <string>

#include "blds/errors.hpp"
#include "blds/harness.hpp"

namespace blds {

namespace {

constexpr double kWidth = 640.0;
constexpr double kHeight = 400.0;
constexpr double kMargin = 50.0;

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

std::string svg_open(const std::string& title, const std::string& x_label, const std::string& y_label) {
  std::ostringstream os;
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
     << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << kWidth << "\" height=\""
     << kHeight << "\">\n"
     << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
     << "<text x=\"" << kWidth / 2 << "\" y=\"20\" text-anchor=\"middle\" font-size=\"14\">" << title
     << "</text>\n"
     << "<line x1=\"" << kMargin << "\" y1=\"" << kHeight - kMargin << "\" x2=\"" << kWidth - kMargin
     << "\" y2=\"" << kHeight - kMargin << "\" stroke=\"black\"/>\n"
     << "<line x1=\"" << kMargin << "\" y1=\"" << kMargin << "\" x2=\"" << kMargin << "\" y2=\""
     << kHeight - kMargin << "\" stroke=\"black\"/>\n"
     << "<text x=\"" << kWidth / 2 << "\" y=\"" << kHeight - 10 << "\" text-anchor=\"middle\" font-size=\"12\">"
     << x_label << "</text>\n"
     << "<text x=\"15\" y=\"" << kHeight / 2 << "\" text-anchor=\"middle\" font-size=\"12\" transform=\"rotate(-90 15 "
     << kHeight / 2 << ")\">" << y_label << "</text>\n";
  return os.str();
}

std::string tick(double x, double y, const std::string& label, const char* anchor) {
  std::ostringstream os;
  os << "<text x=\"" << num(x) << "\" y=\"" << num(y) << "\" text-anchor=\"" << anchor
     << "\" font-size=\"10\">" << label << "</text>\n";
  return os.str();
}

}  // namespace

Histogram emit_histogram(const BenchReport& report, int r, RatioKind kind, int bins) {
  if (bins < 1) throw Error(ErrorCode::kBadConfig, "histogram needs at least one bin");
  const auto rows = report.rows_for(r);
  if (rows.empty()) throw Error(ErrorCode::kMissingR, "report has no rows for R=" + std::to_string(r));
  std::vector<double> ratios;
  for (const BenchRow* row : rows) ratios.push_back(kind == RatioKind::kGreedy ? row->ratio_g : row->ratio_f);
  const double low = std::min(1.0, *std::min_element(ratios.begin(), ratios.end()));
  const double high = *std::max_element(ratios.begin(), ratios.end());
  const double width = high > low ? (high - low) / bins : 1.0 / bins;

  Histogram h;
  for (int b = 0; b < bins; ++b) h.bins.push_back(HistogramBin{low + b * width, low + (b + 1) * width, 0});
  for (double v : ratios) {
    int b = static_cast<int>((v - low) / width);
    h.bins[std::clamp(b, 0, bins - 1)].count++;
  }

  std::ostringstream csv;
  csv << "bin_low,bin_high,count\n";
  for (const HistogramBin& b : h.bins) csv << num(b.low) << ',' << num(b.high) << ',' << b.count << '\n';
  h.csv = csv.str();

  const std::string name = kind == RatioKind::kGreedy ? "h(I_g)/h(I*)" : "h(I_f)/h(I*)";
  std::ostringstream svg;
  svg << svg_open(name + ", R=" + std::to_string(r), "ratio", "instances");
  int peak = 1;
  for (const HistogramBin& b : h.bins) peak = std::max(peak, b.count);
  const double plot_w = kWidth - 2 * kMargin;
  const double plot_h = kHeight - 2 * kMargin;
  const double bar_w = plot_w / bins;
  for (int b = 0; b < bins; ++b) {
    const double bh = plot_h * h.bins[b].count / peak;
    svg << "<rect x=\"" << num(kMargin + b * bar_w) << "\" y=\"" << num(kHeight - kMargin - bh) << "\" width=\""
        << num(bar_w * 0.9) << "\" height=\"" << num(bh) << "\" fill=\"steelblue\"/>\n";
  }
  svg << tick(kMargin, kHeight - kMargin + 15, num(low), "middle")
      << tick(kWidth - kMargin, kHeight - kMargin + 15, num(low + bins * width), "middle")
      << tick(kMargin - 5, kMargin + 4, std::to_string(peak), "end") << "</svg>\n";
  h.svg = svg.str();
  return h;
}

BoundCurve emit_bound_curve(const BenchReport& report) {
  BoundCurve c;
  for (const BenchAggregate& a : aggregate(report.rows)) {
    c.points.push_back(BoundCurvePoint{a.r, a.mean_bound_d_log, a.mean_fast_b});
  }
  std::ostringstream csv;
  csv << "R,mean_greedy_bound,mean_fast_bound\n";
  for (const BoundCurvePoint& p : c.points) csv << p.r << ',' << num(p.greedy) << ',' << num(p.fast) << '\n';
  c.csv = csv.str();

  std::ostringstream svg;
  svg << svg_open("mean performance bound", "R", "bound");
  if (!c.points.empty()) {
    double y_max = 1.0;
    for (const BoundCurvePoint& p : c.points) y_max = std::max({y_max, p.greedy, p.fast});
    const int r_lo = c.points.front().r;
    const int r_hi = c.points.back().r;
    const double span = r_hi > r_lo ? r_hi - r_lo : 1;
    const auto x_of = [&](int r) { return kMargin + (kWidth - 2 * kMargin) * (r - r_lo) / span; };
    const auto y_of = [&](double v) { return kHeight - kMargin - (kHeight - 2 * kMargin) * v / y_max; };
    const auto line = [&](bool fast, const char* color) {
      svg << "<polyline fill=\"none\" stroke=\"" << color << "\" points=\"";
      for (const BoundCurvePoint& p : c.points) svg << num(x_of(p.r)) << ',' << num(y_of(fast ? p.fast : p.greedy)) << ' ';
      svg << "\"/>\n";
      for (const BoundCurvePoint& p : c.points) {
        svg << "<circle cx=\"" << num(x_of(p.r)) << "\" cy=\"" << num(y_of(fast ? p.fast : p.greedy))
            << "\" r=\"3\" fill=\"" << color << "\"/>\n";
      }
    };
    line(false, "steelblue");
    line(true, "darkorange");
    for (const BoundCurvePoint& p : c.points) svg << tick(x_of(p.r), kHeight - kMargin + 15, std::to_string(p.r), "middle");
    svg << tick(kMargin - 5, kMargin + 4, num(y_max), "end")
        << tick(kWidth - kMargin, kMargin, "greedy: 1 + ln M'", "end")
        << tick(kWidth - kMargin, kMargin + 14, "fast: (1 + ln z'([n]))/(1 - eps)", "end");
  }
  svg << "</svg>\n";
  c.svg = svg.str();
  return c;
}

}  // namespace blds
