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


#include "blds/verify.hpp"

#include "blds/bounds.hpp"
#include "blds/errors.hpp"
#include "blds/objective.hpp"
#include "blds/solvers.hpp"

namespace blds {

namespace {

constexpr double kBoundSlack = 1e-9;

// Table g[mask] over all subsets; adds violations of monotonicity and of both
// submodularity forms to the report.
template <class T>
void check_set_function(const std::vector<T>& g, int n, PropertyReport& report) {
  const std::uint64_t full = (std::uint64_t{1} << n) - 1;
  for (std::uint64_t b = 0; b <= full; ++b) {
    // Every A subset of B.
    for (std::uint64_t a = b;; a = (a - 1) & b) {
      if (g[a] > g[b]) ++report.monotonicity;
      for (int i = 0; i < n; ++i) {
        const std::uint64_t bit = std::uint64_t{1} << i;
        if (b & bit) continue;
        if (g[a | bit] - g[a] < g[b | bit] - g[b]) ++report.diminishing_returns;
      }
      if (a == 0) break;
    }
    for (std::uint64_t a = 0; a <= full; ++a) {
      if (g[a] + g[b] < g[a | b] + g[a & b]) ++report.lattice;
    }
  }
}

}  // namespace

bool PropertyReport::ok() const {
  return oracle_mismatches == 0 && monotonicity == 0 && diminishing_returns == 0 && lattice == 0 &&
         feasibility_disagreements == 0 && solver_violations == 0;
}

PropertyReport verify_instance(const ValidatedInstance& inst, const Rational& epsilon) {
  const int n = inst.num_sources();
  if (n > kMaxVerifySources) {
    throw Error(ErrorCode::kTooLarge, "verify supports at most 10 sources, got " + std::to_string(n));
  }
  PropertyReport report;
  report.num_sources = n;
  report.subsets = std::int64_t{1} << n;
  const CoverageFunction z(inst);
  const ActiveStateSet active = active_states(inst);

  std::vector<std::int64_t> scaled(report.subsets);
  std::vector<std::vector<Rational>> f(inst.num_states());
  for (std::uint64_t mask = 0; mask < static_cast<std::uint64_t>(report.subsets); ++mask) {
    const SourceSet s(mask);
    scaled[mask] = z.scaled(s);
    if (z.to_rational(scaled[mask]) != z_value(inst, s)) ++report.oracle_mismatches;
    if ((scaled[mask] == z.scaled_full()) != meets_budgets(inst, s)) ++report.feasibility_disagreements;
    for (int p : active.states.members()) f[p].push_back(f_truncated(inst, p, s));
  }
  check_set_function(scaled, n, report);
  for (int p : active.states.members()) check_set_function(f[p], n, report);
  if (report.oracle_mismatches) report.notes.push_back("oracle disagrees with exact evaluation");
  if (report.feasibility_disagreements) report.notes.push_back("z-feasibility disagrees with budgets");

  bool solvable = true;
  try {
    check_solvable(inst);
  } catch (const InfeasibleError&) {
    solvable = false;
    report.notes.push_back("instance is not solvable; solver checks skipped");
  }
  if (!solvable) return report;

  const Solution opt = exact_solve(z);
  const SolveResult g = greedy_solve(z);
  const SolveResult fg = fast_greedy_solve(z, FastGreedyConfig{epsilon});
  const auto violation = [&](bool bad, const char* what) {
    if (!bad) return;
    ++report.solver_violations;
    report.notes.push_back(what);
  };
  violation(!opt.feasible, "exact solution is not feasible");
  violation(!g.solution.feasible, "greedy solution is not feasible");
  violation(g.solution.cost < opt.cost, "greedy beats the optimum");
  violation(Rational(z.scaled(fg.solution.selected)) < (1 - epsilon) * z.scaled_full(),
            "fast greedy misses the (1-eps) coverage guarantee");
  violation(fg.solution.feasible && fg.solution.cost < opt.cost, "fully covering fast greedy beats the optimum");
  violation(g.trace.oracle_calls > std::int64_t{n} * (g.trace.num_picks() + 1) + 1, "greedy oracle calls");

  const BoundsReport gb = greedy_bounds(g.trace, z);
  const BoundsReport fb = fast_bounds(fg.trace, z, epsilon);
  const double ratio = opt.cost == 0 ? 1.0 : to_double(Rational(g.solution.cost / opt.cost));
  const double ratio_f = opt.cost == 0 ? 1.0 : to_double(Rational(fg.solution.cost / opt.cost));
  for (const auto& b : {gb.bound_a, gb.bound_b, gb.bound_c, gb.bound_d}) {
    violation(b && ratio > *b + kBoundSlack, "greedy ratio exceeds a bound");
  }
  for (const auto& b : {fb.fast_a, fb.fast_b}) {
    violation(b && ratio_f > *b + kBoundSlack, "fast greedy ratio exceeds a bound");
  }
  return report;
}

}  // namespace blds
