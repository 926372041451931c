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


#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "blds/model.hpp"
#include "blds/rational.hpp"

namespace blds {

enum class GenMode { kRaw, kRealizable };

inline constexpr std::uint64_t kDefaultSeed = 42;

// Seed from BLDS_SEED when set and parseable, else `fallback`.
std::uint64_t seed_from_env(std::uint64_t fallback = kDefaultSeed);

struct GenConfig {
  int n = 10;
  int m = 15;
  int r = 5;  // budgets are r/m
  int cost_max = 10;
  int count = 500;
  std::uint64_t seed = kDefaultSeed;
  GenMode mode = GenMode::kRaw;
  Rational include_prob{1, 2};
  // Realizable mode: states get block labels in [0, max_blocks). 0 means m.
  int max_blocks = 0;
};

// Throws Error(kBadConfig) unless 1 <= n <= 64, 2 <= m <= 64,
// 0 <= r < m-1, cost_max >= 1, count >= 1, include_prob in [0,1] and
// 0 <= max_blocks <= m.
void validate_gen_config(const GenConfig& cfg);

// Raw-mode instances carry only distinguishability sets; realizable ones
// also carry likelihood tables.
struct GeneratedInstance {
  GenMode mode = GenMode::kRaw;
  StateSpace states;
  std::vector<Rational> prior;
  std::vector<Rational> budgets;
  std::vector<StructuralSource> structure;
  std::optional<BldsInstance> likelihoods;
  int redraws = 0;

  ValidatedInstance validated() const;
};

// Mixes (seed, keys...) into an independent 64-bit stream seed.
std::uint64_t substream_seed(std::uint64_t seed, std::initializer_list<std::uint64_t> keys);

// Source costs for a seed: uniform on {1..cost_max}, shared by every
// instance generated with that seed.
std::vector<Rational> draw_costs(const GenConfig& cfg);

// Deterministic in (cfg, index). Draws that no selection can make feasible
// are replaced by the next substream; `redraws` counts them.
GeneratedInstance gen_instance(const GenConfig& cfg, int index);

struct BenchConfig {
  GenConfig gen;
  std::vector<int> r_values{0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13};
  Rational epsilon{1, 10};
  int threads = 0;  // 0 picks the hardware concurrency
};

struct BenchRow {
  int r = 0;
  int idx = 0;
  int redraws = 0;
  Rational h_opt;
  Rational h_greedy;
  Rational h_fast;
  double ratio_g = 1.0;
  double ratio_f = 1.0;
  bool full_cover_f = false;
  bool feasible_g = false;
  std::int64_t oracle_g = 0;
  std::int64_t oracle_f = 0;
  int picks_g = 0;
  int levels_f = 0;
  std::int64_t kmax = 0;
  std::int64_t z_full = 0;  // scaled objective values
  std::int64_t z_fast = 0;
  std::int64_t scale = 1;
  std::int64_t m_value = 0;
  std::optional<double> bound_a;
  std::optional<double> bound_b;
  std::optional<double> bound_c;
  std::optional<double> bound_d;
  std::optional<double> bound_d_log;
  std::optional<double> fast_a;
  std::optional<double> fast_b;
};

struct BenchAggregate {
  int r = 0;
  int count = 0;
  int redraws = 0;
  double mean_ratio_g = 0.0;
  double mean_ratio_f = 0.0;
  double mean_bound_d = 0.0;      // mean H_M'
  double mean_bound_d_log = 0.0;  // mean 1 + ln M'
  double mean_fast_b = 0.0;
  double full_cover_fraction = 0.0;
};

struct BenchReport {
  Rational epsilon{1, 10};
  std::vector<BenchRow> rows;  // ordered by (r, idx)
  std::vector<BenchAggregate> aggregates;

  std::vector<const BenchRow*> rows_for(int r) const;
};

// Ratio h / h_opt with 0/0 read as 1.
double solution_ratio(const Rational& h, const Rational& h_opt);

// Solves one generated instance with every algorithm and bound.
BenchRow evaluate_instance(const ValidatedInstance& inst, const Rational& epsilon);

// Throws Error(kTooLarge) when n > 20.
BenchReport run_benchmark(const BenchConfig& cfg);

std::vector<BenchAggregate> aggregate(const std::vector<BenchRow>& rows);

std::string report_csv(const BenchReport& report);
std::string aggregate_csv(const BenchReport& report);

enum class RatioKind { kGreedy, kFast };

struct HistogramBin {
  double low = 0.0;
  double high = 0.0;
  int count = 0;
};

struct Histogram {
  std::vector<HistogramBin> bins;
  std::string csv;
  std::string svg;
};

// Bins run from min(1, smallest ratio) to the largest ratio. Throws
// Error(kMissingR) when the report has no rows for r.
Histogram emit_histogram(const BenchReport& report, int r, RatioKind kind, int bins);

struct BoundCurvePoint {
  int r = 0;
  double greedy = 0.0;  // mean 1 + ln M'
  double fast = 0.0;    // mean fast_b
};

struct BoundCurve {
  std::vector<BoundCurvePoint> points;
  std::string csv;
  std::string svg;
};

BoundCurve emit_bound_curve(const BenchReport& report);

}  // namespace blds
