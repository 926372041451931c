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
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <limits>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

#include "blds/bounds.hpp"
#include "blds/errors.hpp"
#include "blds/harness.hpp"
#include "blds/objective.hpp"
#include "blds/solvers.hpp"

namespace blds {

namespace {

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

std::string format_optional(const std::optional<double>& v) { return v ? format_double(*v) : ""; }

}  // namespace

double solution_ratio(const Rational& h, const Rational& h_opt) {
  if (h_opt == 0) return h == 0 ? 1.0 : std::numeric_limits<double>::infinity();
  return to_double(Rational(h / h_opt));
}

std::vector<const BenchRow*> BenchReport::rows_for(int r) const {
  std::vector<const BenchRow*> out;
  for (const BenchRow& row : rows) {
    if (row.r == r) out.push_back(&row);
  }
  return out;
}

BenchRow evaluate_instance(const ValidatedInstance& inst, const Rational& epsilon) {
  const CoverageFunction z(inst);
  const Solution opt = exact_solve(z);
  const SolveResult g = greedy_solve(z);
  const SolveResult f = fast_greedy_solve(z, FastGreedyConfig{epsilon});
  const BoundsReport gb = greedy_bounds(g.trace, z);
  const BoundsReport fb = fast_bounds(f.trace, z, epsilon);

  BenchRow row;
  row.h_opt = opt.cost;
  row.h_greedy = g.solution.cost;
  row.h_fast = f.solution.cost;
  row.ratio_g = solution_ratio(row.h_greedy, row.h_opt);
  row.ratio_f = solution_ratio(row.h_fast, row.h_opt);
  row.full_cover_f = f.solution.feasible;
  row.feasible_g = g.solution.feasible;
  row.oracle_g = g.trace.oracle_calls;
  row.oracle_f = f.trace.oracle_calls;
  row.picks_g = g.trace.num_picks();
  row.levels_f = f.trace.threshold_levels;
  const auto [h_min, h_max] = std::minmax_element(inst.costs().begin(), inst.costs().end());
  row.kmax = kmax(inst.num_sources(), to_double(epsilon), to_double(*h_max), to_double(*h_min));
  row.z_full = z.scaled_full();
  row.z_fast = z.scaled(f.solution.selected);
  row.scale = z.scale();
  row.m_value = gb.m_value;
  row.bound_a = gb.bound_a;
  row.bound_b = gb.bound_b;
  row.bound_c = gb.bound_c;
  row.bound_d = gb.bound_d;
  row.bound_d_log = gb.bound_d_log;
  row.fast_a = fb.fast_a;
  row.fast_b = fb.fast_b;
  return row;
}

BenchReport run_benchmark(const BenchConfig& cfg) {
  if (cfg.gen.n > kMaxExactSources) {
    throw Error(ErrorCode::kTooLarge, "benchmark needs n <= 20 for the exact solver");
  }
  for (int r : cfg.r_values) {
    GenConfig g = cfg.gen;
    g.r = r;
    validate_gen_config(g);
  }
  if (cfg.epsilon <= 0 || cfg.epsilon >= 1) throw Error(ErrorCode::kBadConfig, "epsilon must lie in (0, 1)");

  const std::size_t count = static_cast<std::size_t>(cfg.gen.count);
  const std::size_t total = cfg.r_values.size() * count;
  BenchReport report;
  report.epsilon = cfg.epsilon;
  report.rows.resize(total);

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mu;
  const auto work = [&] {
    for (std::size_t k = next++; k < total; k = next++) {
      try {
        GenConfig g = cfg.gen;
        g.r = cfg.r_values[k / count];
        const int idx = static_cast<int>(k % count);
        const GeneratedInstance inst = gen_instance(g, idx);
        BenchRow row = evaluate_instance(inst.validated(), cfg.epsilon);
        row.r = g.r;
        row.idx = idx;
        row.redraws = inst.redraws;
        report.rows[k] = std::move(row);
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mu);
        if (!failure) failure = std::current_exception();
        next = total;
      }
    }
  };
  unsigned threads = cfg.threads > 0 ? static_cast<unsigned>(cfg.threads) : std::thread::hardware_concurrency();
  threads = std::clamp<unsigned>(threads, 1, static_cast<unsigned>(std::max<std::size_t>(total, 1)));
  if (threads == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work);
    for (std::thread& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);
  report.aggregates = aggregate(report.rows);
  return report;
}

std::vector<BenchAggregate> aggregate(const std::vector<BenchRow>& rows) {
  std::map<int, BenchAggregate> by_r;
  for (const BenchRow& row : rows) {
    BenchAggregate& a = by_r[row.r];
    a.r = row.r;
    ++a.count;
    a.redraws += row.redraws;
    a.mean_ratio_g += row.ratio_g;
    a.mean_ratio_f += row.ratio_f;
    a.mean_bound_d += row.bound_d.value_or(1.0);
    a.mean_bound_d_log += row.bound_d_log.value_or(1.0);
    a.mean_fast_b += row.fast_b.value_or(1.0);
    a.full_cover_fraction += row.full_cover_f ? 1.0 : 0.0;
  }
  std::vector<BenchAggregate> out;
  for (auto& [r, a] : by_r) {
    const double c = a.count;
    a.mean_ratio_g /= c;
    a.mean_ratio_f /= c;
    a.mean_bound_d /= c;
    a.mean_bound_d_log /= c;
    a.mean_fast_b /= c;
    a.full_cover_fraction /= c;
    out.push_back(a);
  }
  return out;
}

std::string report_csv(const BenchReport& report) {
  std::ostringstream os;
  os << "R,idx,h_opt,h_greedy,h_fast,ratio_g,ratio_f,full_cover_f,oracle_g,oracle_f,"
        "bound_a,bound_b,bound_c,bound_d,fast_a,fast_b\n";
  for (const BenchRow& row : report.rows) {
    os << row.r << ',' << row.idx << ',' << to_string(row.h_opt) << ',' << to_string(row.h_greedy) << ','
       << to_string(row.h_fast) << ',' << format_double(row.ratio_g) << ',' << format_double(row.ratio_f)
       << ',' << (row.full_cover_f ? 1 : 0) << ',' << row.oracle_g << ',' << row.oracle_f << ','
       << format_optional(row.bound_a) << ',' << format_optional(row.bound_b) << ','
       << format_optional(row.bound_c) << ',' << format_optional(row.bound_d) << ','
       << format_optional(row.fast_a) << ',' << format_optional(row.fast_b) << '\n';
  }
  return os.str();
}

std::string aggregate_csv(const BenchReport& report) {
  std::ostringstream os;
  os << "R,count,redraws,mean_ratio_g,mean_ratio_f,mean_bound_d,mean_bound_d_log,mean_fast_b,"
        "full_cover_fraction\n";
  for (const BenchAggregate& a : report.aggregates) {
    os << a.r << ',' << a.count << ',' << a.redraws << ',' << format_double(a.mean_ratio_g) << ','
       << format_double(a.mean_ratio_f) << ',' << format_double(a.mean_bound_d) << ','
       << format_double(a.mean_bound_d_log) << ',' << format_double(a.mean_fast_b) << ','
       << format_double(a.full_cover_fraction) << '\n';
  }
  return os.str();
}

}  // namespace blds
