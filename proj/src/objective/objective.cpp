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


#include "blds/objective.hpp"

#include <array>
#include <bit>
#include <limits>
#include <optional>

#include "blds/errors.hpp"
#include "blds/kernels.hpp"

namespace blds {

namespace {

Rational prior_mass(const ValidatedInstance& inst, StateSet states) {
  Rational total = 0;
  for (int q : states.members()) total += inst.prior()[q];
  return total;
}

// Integer R with every budget equal to R/m and a uniform prior, if any.
std::optional<long> uniform_budget_numerator(const ValidatedInstance& inst) {
  const int m = inst.num_states();
  const Rational uniform(1, m);
  for (int p = 0; p < m; ++p) {
    if (inst.prior()[p] != uniform || inst.budgets()[p] != inst.budgets()[0]) return std::nullopt;
  }
  const Rational r_times_m = inst.budgets()[0] * m;
  if (boost::multiprecision::denominator(r_times_m) != 1) return std::nullopt;
  const long r = boost::multiprecision::numerator(r_times_m).convert_to<long>();
  if (r < 0 || r >= m - 1) return std::nullopt;
  return r;
}

}  // namespace

ActiveStateSet active_states(const ValidatedInstance& inst) {
  const int m = inst.num_states();
  ActiveStateSet out;
  out.requirement.assign(m, Rational(0));
  for (int p = 0; p < m; ++p) {
    const Rational& mu = inst.prior()[p];
    const Rational& budget = inst.budgets()[p];
    if (budget < 1 - mu) {
      out.states.insert(p);
      out.requirement[p] = 1 - mu / (1 - budget);
    }
  }
  return out;
}

Rational steady_state_error(const ValidatedInstance& inst, SourceSet selection, int state) {
  const StateSet indist = indist_intersection(inst.map(), selection, state);
  return 1 - inst.prior()[state] / prior_mass(inst, indist);
}

Rational f_value(const ValidatedInstance& inst, int state, SourceSet selection) {
  const StateSet indist = indist_intersection(inst.map(), selection, state);
  return prior_mass(inst, indist.complement(inst.num_states()));
}

Rational f_truncated(const ValidatedInstance& inst, int state, SourceSet selection) {
  const Rational& mu = inst.prior()[state];
  if (inst.budgets()[state] >= 1 - mu) return 0;
  const Rational cap = 1 - mu / (1 - inst.budgets()[state]);
  const Rational f = f_value(inst, state, selection);
  return f < cap ? f : cap;
}

Rational z_value(const ValidatedInstance& inst, SourceSet selection) {
  const ActiveStateSet active = active_states(inst);
  Rational total = 0;
  for (int p : active.states.members()) total += f_truncated(inst, p, selection);
  return total;
}

bool meets_budgets(const ValidatedInstance& inst, SourceSet selection) {
  for (int p = 0; p < inst.num_states(); ++p) {
    if (steady_state_error(inst, selection, p) > inst.budgets()[p]) return false;
  }
  return true;
}

BigInt scale_factor(const ValidatedInstance& inst) {
  const int m = inst.num_states();
  if (const auto r = uniform_budget_numerator(inst)) return BigInt(m) * (m - *r);
  BigInt factor = 1;
  for (const Rational& mu : inst.prior()) factor = lcm(factor, boost::multiprecision::denominator(mu));
  const ActiveStateSet active = active_states(inst);
  for (int p : active.states.members()) {
    factor = lcm(factor, boost::multiprecision::denominator(active.requirement[p]));
  }
  return factor;
}

CoverageFunction::CoverageFunction(const ValidatedInstance& inst)
    : inst_(&inst), active_(active_states(inst)), active_list_(active_.states.members()) {
  const int m = inst.num_states();
  const BigInt factor = scale_factor(inst);
  // The largest value is at most m * factor; keep it clear of overflow.
  if (factor * m > BigInt(std::numeric_limits<std::int64_t>::max() / 4)) {
    throw Error(ErrorCode::kTooLarge, "scale factor " + factor.str() + " overflows 64-bit coverage");
  }
  scale_ = to_int64(factor);
  for (int q = 0; q < m; ++q) {
    const Rational w = inst.prior()[q] * scale_;
    weights_.push_back(to_int64(boost::multiprecision::numerator(w)));
  }
  for (int p : active_list_) {
    const Rational c = active_.requirement[p] * scale_;
    caps_.push_back(to_int64(boost::multiprecision::numerator(c)));
  }
  const int n = inst.num_sources();
  const std::size_t width = active_list_.size();
  distinguish_.resize(static_cast<std::size_t>(n) * width);
  for (int i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < width; ++k) {
      distinguish_[i * width + k] = inst.map().distinguishable(i, active_list_[k]).bits();
    }
  }
  full_ = scaled(inst.all_sources());
}

std::int64_t CoverageFunction::scaled(SourceSet selection) const {
  const std::size_t width = active_list_.size();
  if (width == 0) return 0;
  const kernels::KernelTable& k = kernels::active();
  std::array<std::uint64_t, kMaxIndex> buffer{};
  const std::span<std::uint64_t> acc(buffer.data(), width);
  const std::span<const std::uint64_t> rows(distinguish_);
  for (std::uint64_t b = selection.bits(); b != 0; b &= b - 1) {
    const auto i = static_cast<std::size_t>(std::countr_zero(b));
    k.or_into(acc, rows.subspan(i * width, width));
  }
  return k.capped_weighted_sum(acc, weights_, caps_);
}

std::int64_t z_integer_scaled(const ValidatedInstance& inst, SourceSet selection) {
  return CoverageFunction(inst).scaled(selection);
}

bool is_feasible(const ValidatedInstance& inst, SourceSet selection) {
  const CoverageFunction z(inst);
  return z.scaled(selection) == z.scaled_full();
}

void check_solvable(const ValidatedInstance& inst) {
  const ActiveStateSet active = active_states(inst);
  std::vector<int> violated;
  for (int p : active.states.members()) {
    if (f_value(inst, p, inst.all_sources()) < active.requirement[p]) violated.push_back(p);
  }
  if (!violated.empty()) throw InfeasibleError(std::move(violated));
}

}  // namespace blds
