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
#include <vector>

#include "blds/index_set.hpp"
#include "blds/model.hpp"
#include "blds/objective.hpp"
#include "blds/rational.hpp"

namespace blds {

// One greedy selection. iteration t = 1..T; the pick at iteration t turns
// I^{t-1} into I^t.
struct Pick {
  int iteration = 0;
  int source = -1;
  Rational gain;
  Rational z_after;
};

struct SolveTrace {
  std::vector<Pick> picks;
  std::int64_t oracle_calls = 0;
  // Threshold levels entered by the fast greedy; zero for the standard one.
  int threshold_levels = 0;

  int num_picks() const { return static_cast<int>(picks.size()); }
  // The first `t` picks, i.e. I^t.
  SourceSet prefix(int t) const;
};

struct Solution {
  SourceSet selected;
  Rational cost;
  Rational achieved_z;
  bool feasible = false;
};

struct SolveResult {
  Solution solution;
  SolveTrace trace;
};

struct FastGreedyConfig {
  Rational epsilon{1, 10};
};

// Wraps a coverage function and counts every evaluation.
class CountingOracle {
 public:
  explicit CountingOracle(const CoverageFunction& z) : z_(&z) {}

  std::int64_t operator()(SourceSet selection) {
    ++calls_;
    return z_->scaled(selection);
  }
  std::int64_t calls() const { return calls_; }
  const CoverageFunction& function() const { return *z_; }

 private:
  const CoverageFunction* z_;
  std::int64_t calls_ = 0;
};

// Standard greedy: repeatedly add the source with the largest marginal gain
// per unit cost until z reaches z([n]). Ties go to the smallest index.
// Throws InfeasibleError if the instance is not solvable.
SolveResult greedy_solve(const ValidatedInstance& inst);
SolveResult greedy_solve(const CoverageFunction& z);

// Threshold greedy with a geometrically decreasing threshold. The schedule
// is exact: tau = d (1 - eps)^k in rationals.
SolveResult fast_greedy_solve(const ValidatedInstance& inst, const FastGreedyConfig& cfg);
SolveResult fast_greedy_solve(const CoverageFunction& z, const FastGreedyConfig& cfg);

inline constexpr int kMaxExactSources = 20;

// Minimum-cost feasible selection by enumeration of every subset. Among
// optimal selections the one with the smallest bitset value wins.
// Throws Error(kTooLarge) when n > 20.
Solution exact_solve(const ValidatedInstance& inst);
Solution exact_solve(const CoverageFunction& z);

struct ElementTag;
using ElementSet = IndexSet<ElementTag>;

struct SetCoverInstance {
  int universe_size = 0;
  std::vector<ElementSet> subsets;
};

// Instance with d+1 states and one binary source per subset. State 0 is
// the reference; state q+1 is separated from it exactly by the sources whose
// subset contains element q. Unit costs, uniform prior, budget 0 for state 0
// and 1 elsewhere.
BldsInstance reduce_set_cover(const SetCoverInstance& sc);

}  // namespace blds
