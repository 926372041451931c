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


#include "blds/bounds.hpp"

#include <algorithm>
#include <cmath>

#include "blds/errors.hpp"

namespace blds {

namespace {

double one_plus_log(const Rational& ratio) { return 1.0 + std::log(to_double(ratio)); }

double cost_ratio(const ValidatedInstance& inst) {
  const auto [lo, hi] = std::minmax_element(inst.costs().begin(), inst.costs().end());
  return lo == inst.costs().end() ? 1.0 : to_double(*hi / *lo);
}

}  // namespace

std::optional<double> bound_ratio_a(const SolveTrace& trace, const CoverageFunction& z) {
  const int t_total = trace.num_picks();
  if (t_total < 2) return std::nullopt;
  const int n = z.num_sources();
  std::vector<std::int64_t> singles(n);
  for (int i = 0; i < n; ++i) singles[i] = z.scaled(SourceSet::single(i));
  std::optional<Rational> best;
  for (int zeta = 1; zeta <= t_total - 1; ++zeta) {
    const SourceSet prefix = trace.prefix(zeta);
    const std::int64_t base = z.scaled(prefix);
    for (int i = 0; i < n; ++i) {
      const std::int64_t gain = z.scaled(prefix.with(i)) - base;
      if (gain <= 0) continue;
      const Rational ratio(singles[i], gain);
      if (!best || ratio > *best) best = ratio;
    }
  }
  if (!best) return std::nullopt;
  return one_plus_log(*best);
}

std::optional<double> bound_ratio_b(const SolveTrace& trace, const CoverageFunction& z) {
  const int t_total = trace.num_picks();
  if (t_total < 1) return std::nullopt;
  const Pick& first = trace.picks.front();
  const Pick& last = trace.picks.back();
  const Rational first_gain = z.value(SourceSet::single(first.source));
  const SourceSet before_last = trace.prefix(t_total - 1);
  const Rational last_gain = z.value(before_last.with(last.source)) - z.value(before_last);
  if (first_gain <= 0 || last_gain <= 0) return std::nullopt;
  const ValidatedInstance& inst = z.instance();
  return one_plus_log(inst.cost(last.source) * first_gain / (inst.cost(first.source) * last_gain));
}

std::optional<double> bound_ratio_c(const SolveTrace& trace, const CoverageFunction& z) {
  const int t_total = trace.num_picks();
  if (t_total < 1) return std::nullopt;
  const std::int64_t full = z.scaled_full();
  const std::int64_t gap = full - z.scaled(trace.prefix(t_total - 1));
  if (gap <= 0) return std::nullopt;
  return one_plus_log(Rational(full, gap));
}

HarmonicBound bound_ratio_d(const CoverageFunction& z) {
  HarmonicBound out;
  for (int j = 0; j < z.num_sources(); ++j) {
    out.m_value = std::max(out.m_value, z.scaled(SourceSet::single(j)));
  }
  if (out.m_value == 0) return out;
  double sum = 0.0;
  // Smallest terms first.
  for (std::int64_t i = out.m_value; i >= 1; --i) sum += 1.0 / static_cast<double>(i);
  out.harmonic = sum;
  out.log_form = 1.0 + std::log(static_cast<double>(out.m_value));
  return out;
}

std::optional<double> fast_bound_a(const SolveTrace& trace, const CoverageFunction& z,
                                   const Rational& epsilon) {
  const int t_total = trace.num_picks();
  if (t_total < 1) return std::nullopt;
  const std::int64_t full = z.scaled_full();
  const std::int64_t gap = full - z.scaled(trace.prefix(t_total - 1));
  if (gap <= 0) return std::nullopt;
  return one_plus_log(Rational(full, gap)) / to_double(1 - epsilon);
}

double fast_bound_b(const CoverageFunction& z, const Rational& epsilon) {
  const std::int64_t full = z.scaled_full();
  const double log_term = full > 0 ? std::log(static_cast<double>(full)) : 0.0;
  return (1.0 + log_term) / to_double(1 - epsilon);
}

std::int64_t kmax(int n, double epsilon, double h_max, double h_min) {
  if (!(epsilon > 0.0 && epsilon < 1.0) || h_min <= 0.0 || h_max < h_min || n < 1) {
    throw Error(ErrorCode::kBadConfig, "kmax needs eps in (0,1), n >= 1 and h_max >= h_min > 0");
  }
  const double levels = (std::log(n / epsilon) + std::log(h_max / h_min)) / -std::log1p(-epsilon);
  return std::max<std::int64_t>(1, static_cast<std::int64_t>(std::ceil(levels)));
}

double closed_form_greedy(int m, int r) {
  return 1.0 + 2.0 * std::log(static_cast<double>(m)) + std::log(static_cast<double>(m - r));
}

double closed_form_fast(int m, int r, double epsilon) { return closed_form_greedy(m, r) / (1.0 - epsilon); }

BoundsReport greedy_bounds(const SolveTrace& trace, const CoverageFunction& z) {
  BoundsReport report;
  report.bound_a = bound_ratio_a(trace, z);
  report.bound_b = bound_ratio_b(trace, z);
  report.bound_c = bound_ratio_c(trace, z);
  const HarmonicBound d = bound_ratio_d(z);
  report.bound_d = d.harmonic;
  report.bound_d_log = d.log_form;
  report.m_value = d.m_value;
  report.scale = z.scale();
  report.cost_ratio = cost_ratio(z.instance());
  return report;
}

BoundsReport fast_bounds(const SolveTrace& trace, const CoverageFunction& z, const Rational& epsilon) {
  BoundsReport report;
  report.fast_a = fast_bound_a(trace, z, epsilon);
  report.fast_b = fast_bound_b(z, epsilon);
  const HarmonicBound d = bound_ratio_d(z);
  report.m_value = d.m_value;
  report.scale = z.scale();
  report.cost_ratio = cost_ratio(z.instance());
  return report;
}

}  // namespace blds
