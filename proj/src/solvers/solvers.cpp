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


#include "blds/solvers.hpp"

#include <limits>
#include <string>

#include "blds/errors.hpp"

namespace blds {

SourceSet SolveTrace::prefix(int t) const {
  SourceSet out;
  for (int k = 0; k < t; ++k) out.insert(picks[k].source);
  return out;
}

namespace {

Solution make_solution(const CoverageFunction& z, SourceSet selected, std::int64_t scaled_value) {
  Solution s;
  s.selected = selected;
  s.cost = z.instance().cost_of(selected);
  s.achieved_z = z.to_rational(scaled_value);
  s.feasible = scaled_value == z.scaled_full();
  return s;
}

void record_pick(SolveTrace& trace, const CoverageFunction& z, int source, std::int64_t gain,
                 std::int64_t after) {
  trace.picks.push_back(Pick{trace.num_picks() + 1, source, z.to_rational(gain), z.to_rational(after)});
}

}  // namespace

SolveResult greedy_solve(const ValidatedInstance& inst) {
  check_solvable(inst);
  return greedy_solve(CoverageFunction(inst));
}

SolveResult greedy_solve(const CoverageFunction& z) {
  const ValidatedInstance& inst = z.instance();
  const int n = inst.num_sources();
  CountingOracle oracle(z);
  SolveResult result;
  const std::int64_t full = oracle(inst.all_sources());
  SourceSet selected;
  std::int64_t current = 0;
  while (current < full) {
    int best = -1;
    std::int64_t best_gain = 0;
    Rational best_ratio;
    for (int i = 0; i < n; ++i) {
      if (selected.contains(i)) continue;
      const std::int64_t gain = oracle(selected.with(i)) - current;
      const Rational ratio = Rational(gain) / inst.cost(i);
      if (best < 0 || ratio > best_ratio) {
        best = i;
        best_gain = gain;
        best_ratio = ratio;
      }
    }
    selected.insert(best);
    current += best_gain;
    record_pick(result.trace, z, best, best_gain, current);
  }
  result.trace.oracle_calls = oracle.calls();
  result.solution = make_solution(z, selected, current);
  return result;
}

SolveResult fast_greedy_solve(const ValidatedInstance& inst, const FastGreedyConfig& cfg) {
  check_solvable(inst);
  return fast_greedy_solve(CoverageFunction(inst), cfg);
}

SolveResult fast_greedy_solve(const CoverageFunction& z, const FastGreedyConfig& cfg) {
  if (cfg.epsilon <= 0 || cfg.epsilon >= 1) {
    throw Error(ErrorCode::kBadConfig, "epsilon must lie in (0, 1), got " + to_string(cfg.epsilon));
  }
  const ValidatedInstance& inst = z.instance();
  const int n = inst.num_sources();
  CountingOracle oracle(z);
  SolveResult result;
  const std::int64_t full = oracle(inst.all_sources());
  SourceSet selected;
  std::int64_t current = 0;

  if (current < full) {
    Rational d = 0;
    Rational h_min = inst.cost(0);
    Rational h_max = inst.cost(0);
    for (int i = 0; i < n; ++i) {
      const Rational ratio = Rational(oracle(SourceSet::single(i))) / inst.cost(i);
      if (ratio > d) d = ratio;
      if (inst.cost(i) < h_min) h_min = inst.cost(i);
      if (inst.cost(i) > h_max) h_max = inst.cost(i);
    }
    const Rational floor = cfg.epsilon * h_min / (n * h_max) * d;
    const Rational decay = 1 - cfg.epsilon;
    // d > 0 here, so tau > 0 and selected sources (marginal 0) never qualify.
    for (Rational tau = d; tau >= floor && current < full; tau *= decay) {
      ++result.trace.threshold_levels;
      for (int j = 0; j < n && current < full; ++j) {
        if (selected.contains(j)) continue;
        const std::int64_t gain = oracle(selected.with(j)) - current;
        if (Rational(gain) / inst.cost(j) >= tau) {
          selected.insert(j);
          current += gain;
          record_pick(result.trace, z, j, gain, current);
        }
      }
    }
  }
  result.trace.oracle_calls = oracle.calls();
  result.solution = make_solution(z, selected, current);
  return result;
}

Solution exact_solve(const ValidatedInstance& inst) {
  if (inst.num_sources() > kMaxExactSources) {
    throw Error(ErrorCode::kTooLarge,
                "exact solver supports at most 20 sources, got " + std::to_string(inst.num_sources()));
  }
  check_solvable(inst);
  return exact_solve(CoverageFunction(inst));
}

Solution exact_solve(const CoverageFunction& z) {
  const ValidatedInstance& inst = z.instance();
  const int n = inst.num_sources();
  if (n > kMaxExactSources) {
    throw Error(ErrorCode::kTooLarge,
                "exact solver supports at most 20 sources, got " + std::to_string(n));
  }
  // Integer costs over a common denominator.
  BigInt denominator = 1;
  for (const Rational& h : inst.costs()) denominator = lcm(denominator, boost::multiprecision::denominator(h));
  std::vector<std::int64_t> unit(n);
  BigInt total = 0;
  for (int i = 0; i < n; ++i) {
    const BigInt scaled = boost::multiprecision::numerator(Rational(inst.cost(i) * denominator));
    unit[i] = to_int64(scaled);
    total += scaled;
  }
  to_int64(total);

  const std::uint64_t count = std::uint64_t{1} << n;
  std::vector<std::int64_t> cost(count, 0);
  for (std::uint64_t mask = 1; mask < count; ++mask) {
    cost[mask] = cost[mask & (mask - 1)] + unit[std::countr_zero(mask)];
  }
  const std::int64_t full = z.scaled_full();
  std::uint64_t best = count - 1;
  std::int64_t best_cost = std::numeric_limits<std::int64_t>::max();
  for (std::uint64_t mask = 0; mask < count; ++mask) {
    if (cost[mask] >= best_cost) continue;
    if (z.scaled(SourceSet(mask)) == full) {
      best = mask;
      best_cost = cost[mask];
    }
  }
  return make_solution(z, SourceSet(best), z.scaled(SourceSet(best)));
}

BldsInstance reduce_set_cover(const SetCoverInstance& sc) {
  const int d = sc.universe_size;
  if (d < 0 || d + 1 > kMaxIndex) {
    throw Error(ErrorCode::kTooLarge, "universe size must be in [0, 63]");
  }
  if (sc.subsets.empty() || static_cast<int>(sc.subsets.size()) > kMaxIndex) {
    throw Error(ErrorCode::kBadStructure, "set cover needs between 1 and 64 subsets");
  }
  const ElementSet universe = ElementSet::first(d);
  const int m = d + 1;
  BldsInstance out;
  out.states = StateSpace::numbered(m);
  out.prior.assign(m, Rational(1, m));
  out.budgets.assign(m, Rational(1));
  out.budgets[0] = 0;
  const Rational half(1, 2);
  for (std::size_t i = 0; i < sc.subsets.size(); ++i) {
    const ElementSet subset = sc.subsets[i];
    if (!subset.subset_of(universe)) {
      throw Error(ErrorCode::kBadStructure, "subset names an element outside the universe",
                  static_cast<int>(i));
    }
    Source source;
    source.signal_count = 2;
    source.cost = 1;
    source.likelihood.assign(m, {half, half});
    for (int q : subset.members()) source.likelihood[q + 1] = {Rational(1, 3), Rational(2, 3)};
    out.sources.push_back(std::move(source));
  }
  return out;
}

}  // namespace blds
