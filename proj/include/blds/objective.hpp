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
#include "blds/rational.hpp"

namespace blds {

// States whose budget constraint is not vacuous, i.e. R < 1 - mu0, together
// with the mass r = 1 - mu0/(1 - R) each must distinguish. requirement has
// one entry per state and is zero outside `states`.
struct ActiveStateSet {
  StateSet states;
  std::vector<Rational> requirement;
};

ActiveStateSet active_states(const ValidatedInstance& inst);

// 1 - mu0(p) / sum of mu0 over the states indistinguishable from p.
Rational steady_state_error(const ValidatedInstance& inst, SourceSet selection, int state);

// Prior mass of the states `selection` distinguishes from `state`.
Rational f_value(const ValidatedInstance& inst, int state, SourceSet selection);

// f_value capped at the state's requirement; zero for a state outside the active set.
Rational f_truncated(const ValidatedInstance& inst, int state, SourceSet selection);

// Sum of f_truncated over the active states, evaluated directly in exact
// rationals. CoverageFunction computes the same quantity much faster.
Rational z_value(const ValidatedInstance& inst, SourceSet selection);

// Direct budget check e(p) <= R(p) for every state.
bool meets_budgets(const ValidatedInstance& inst, SourceSet selection);

// The integer multiplier applied to z. For the uniform family (prior 1/m,
// every budget R/m with integer 0 <= R < m-1) it is m(m-R); otherwise the
// least common multiple of the prior and requirement denominators.
BigInt scale_factor(const ValidatedInstance& inst);

// The coverage function z over an instance, precomputed into integer
// weights so that each evaluation is a handful of mask ORs and a capped
// weighted sum. Immutable and safe to share across threads.
class CoverageFunction {
 public:
  explicit CoverageFunction(const ValidatedInstance& inst);

  const ValidatedInstance& instance() const { return *inst_; }
  int num_sources() const { return inst_->num_sources(); }

  // z(selection) * scale().
  std::int64_t scaled(SourceSet selection) const;
  Rational value(SourceSet selection) const { return Rational(scaled(selection)) / scale_; }
  Rational to_rational(std::int64_t scaled_value) const { return Rational(scaled_value) / scale_; }

  std::int64_t scale() const { return scale_; }
  std::int64_t scaled_full() const { return full_; }
  const ActiveStateSet& active() const { return active_; }

 private:
  const ValidatedInstance* inst_;
  ActiveStateSet active_;
  std::vector<int> active_list_;
  std::int64_t scale_ = 1;
  std::int64_t full_ = 0;
  std::vector<std::int64_t> weights_;       // mu0(q) * scale, per state
  std::vector<std::int64_t> caps_;          // r_p * scale, per active state
  std::vector<std::uint64_t> distinguish_;  // [source][active state] F^c masks
};

std::int64_t z_integer_scaled(const ValidatedInstance& inst, SourceSet selection);

// True iff z(selection) == z(all sources), exactly.
bool is_feasible(const ValidatedInstance& inst, SourceSet selection);

// Throws InfeasibleError naming every active state whose requirement the
// full source set cannot meet.
void check_solvable(const ValidatedInstance& inst);

}  // namespace blds
