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


#include "blds/model.hpp"

#include <cmath>
#include <set>
#include <utility>

#include "blds/errors.hpp"

namespace blds {

StateSpace StateSpace::numbered(int m) {
  StateSpace space;
  space.labels.reserve(m);
  for (int p = 0; p < m; ++p) space.labels.push_back("theta" + std::to_string(p + 1));
  return space;
}

DistinguishabilityMap::DistinguishabilityMap(int num_sources, int num_states)
    : num_sources_(num_sources),
      num_states_(num_states),
      sets_(static_cast<std::size_t>(num_sources) * num_states) {}

const Source& ValidatedInstance::source(int i) const { return sources().at(i); }

const std::vector<Source>& ValidatedInstance::sources() const {
  if (!sources_) {
    throw Error(ErrorCode::kBadStructure, "instance was built from F^c sets and has no likelihoods");
  }
  return *sources_;
}

BldsInstance ValidatedInstance::raw() const {
  return BldsInstance{states_, sources(), prior_, budgets_};
}

Rational ValidatedInstance::cost_of(SourceSet selection) const {
  Rational total = 0;
  for (int i : selection.members()) total += costs_[i];
  return total;
}

namespace {

void check_state_space(StateSpace& states, std::size_t prior_size) {
  if (states.labels.empty()) states = StateSpace::numbered(static_cast<int>(prior_size));
  const int m = states.size();
  if (m < 1 || m > kMaxIndex) {
    throw Error(ErrorCode::kTooLarge, "state count must be in [1, 64], got " + std::to_string(m));
  }
  std::set<std::string> seen;
  for (int p = 0; p < m; ++p) {
    if (!seen.insert(states.labels[p]).second) {
      throw Error(ErrorCode::kDimensionMismatch, "duplicate state label '" + states.labels[p] + "'", p);
    }
  }
}

void check_prior_and_budgets(int m, const std::vector<Rational>& prior,
                             const std::vector<Rational>& budgets) {
  if (static_cast<int>(prior.size()) != m) {
    throw Error(ErrorCode::kBadPrior, "prior has " + std::to_string(prior.size()) +
                                          " entries, expected " + std::to_string(m));
  }
  Rational total = 0;
  for (int p = 0; p < m; ++p) {
    if (prior[p] <= 0) throw Error(ErrorCode::kBadPrior, "prior entry must be positive", p);
    total += prior[p];
  }
  if (total != 1) throw Error(ErrorCode::kBadPrior, "prior sums to " + to_string(total) + ", not 1");
  if (static_cast<int>(budgets.size()) != m) {
    throw Error(ErrorCode::kBadBudget, "budget vector has " + std::to_string(budgets.size()) +
                                           " entries, expected " + std::to_string(m));
  }
  for (int p = 0; p < m; ++p) {
    if (budgets[p] < 0 || budgets[p] > 1) {
      throw Error(ErrorCode::kBadBudget, "budget " + to_string(budgets[p]) + " outside [0, 1]", p);
    }
  }
}

void check_cost(const Rational& cost, int i) {
  if (cost <= 0) throw Error(ErrorCode::kNonpositiveCost, "cost " + to_string(cost) + " of source", i);
}

void check_source(const Source& source, int i, int m) {
  check_cost(source.cost, i);
  if (source.signal_count < 1) {
    throw Error(ErrorCode::kDimensionMismatch, "source needs at least one signal", i);
  }
  if (static_cast<int>(source.likelihood.size()) != m) {
    throw Error(ErrorCode::kDimensionMismatch, "likelihood table needs one row per state", i);
  }
  for (int p = 0; p < m; ++p) {
    const auto& row = source.likelihood[p];
    if (static_cast<int>(row.size()) != source.signal_count) {
      throw Error(ErrorCode::kDimensionMismatch,
                  "row " + std::to_string(p) + " length differs from signal count", i);
    }
    Rational total = 0;
    for (const Rational& v : row) {
      if (v <= 0) {
        throw Error(ErrorCode::kZeroLikelihood,
                    "non-positive likelihood in row " + std::to_string(p) + " of source", i);
      }
      total += v;
    }
    if (total != 1) {
      throw Error(ErrorCode::kRowNotNormalized,
                  "row " + std::to_string(p) + " sums to " + to_string(total) + " in source", i);
    }
  }
}

}  // namespace

ValidatedInstance validate_instance(BldsInstance raw) {
  check_state_space(raw.states, raw.prior.size());
  const int m = raw.states.size();
  const int n = static_cast<int>(raw.sources.size());
  if (n > kMaxIndex) throw Error(ErrorCode::kTooLarge, "at most 64 sources are supported");
  check_prior_and_budgets(m, raw.prior, raw.budgets);
  for (int i = 0; i < n; ++i) check_source(raw.sources[i], i, m);

  ValidatedInstance out;
  out.map_ = DistinguishabilityMap(n, m);
  for (int i = 0; i < n; ++i) {
    for (int p = 0; p < m; ++p) out.map_.set_indist(i, p, indist_set(raw.sources[i], p));
    out.costs_.push_back(raw.sources[i].cost);
  }
  out.states_ = std::move(raw.states);
  out.prior_ = std::move(raw.prior);
  out.budgets_ = std::move(raw.budgets);
  out.sources_ = std::move(raw.sources);
  return out;
}

ValidatedInstance validate_structure(StateSpace states, std::vector<Rational> prior,
                                     std::vector<Rational> budgets,
                                     std::vector<StructuralSource> sources) {
  check_state_space(states, prior.size());
  const int m = states.size();
  const int n = static_cast<int>(sources.size());
  if (n > kMaxIndex) throw Error(ErrorCode::kTooLarge, "at most 64 sources are supported");
  check_prior_and_budgets(m, prior, budgets);

  ValidatedInstance out;
  out.map_ = DistinguishabilityMap(n, m);
  const StateSet all = StateSet::first(m);
  for (int i = 0; i < n; ++i) {
    check_cost(sources[i].cost, i);
    if (static_cast<int>(sources[i].distinguishable.size()) != m) {
      throw Error(ErrorCode::kDimensionMismatch, "F^c table needs one set per state", i);
    }
    for (int p = 0; p < m; ++p) {
      const StateSet fc = sources[i].distinguishable[p];
      if (!fc.subset_of(all) || fc.contains(p)) {
        throw Error(ErrorCode::kBadStructure,
                    "F^c set of state " + std::to_string(p) + " must exclude the state itself", i);
      }
      out.map_.set_indist(i, p, fc.complement(m));
    }
    out.costs_.push_back(sources[i].cost);
  }
  out.states_ = std::move(states);
  out.prior_ = std::move(prior);
  out.budgets_ = std::move(budgets);
  return out;
}

StateSet indist_set(const Source& source, int state) {
  StateSet out;
  const auto& row = source.likelihood[state];
  for (int q = 0; q < static_cast<int>(source.likelihood.size()); ++q) {
    if (source.likelihood[q] == row) out.insert(q);
  }
  return out;
}

StateSet indist_intersection(const DistinguishabilityMap& map, SourceSet selection, int state) {
  StateSet out = StateSet::first(map.num_states());
  for (int i : selection.members()) out &= map.indist(i, state);
  return out;
}

double kl_divergence(std::span<const Rational> p, std::span<const Rational> q) {
  if (p.size() != q.size()) {
    throw Error(ErrorCode::kDimensionMismatch, "KL divergence of vectors with different lengths");
  }
  double total = 0.0;
  for (std::size_t s = 0; s < p.size(); ++s) {
    const double ps = to_double(p[s]);
    total += ps * std::log(ps / to_double(q[s]));
  }
  return total;
}

std::vector<StateSet> equivalence_partition(const Source& source) {
  const int m = static_cast<int>(source.likelihood.size());
  std::vector<StateSet> blocks;
  StateSet assigned;
  for (int p = 0; p < m; ++p) {
    if (assigned.contains(p)) continue;
    const StateSet block = indist_set(source, p);
    assigned |= block;
    blocks.push_back(block);
  }
  return blocks;
}

std::vector<Source> realize_likelihoods(std::span<const std::vector<StateSet>> partitions,
                                        int num_states) {
  const StateSet all = StateSet::first(num_states);
  std::vector<Source> out;
  out.reserve(partitions.size());
  for (std::size_t i = 0; i < partitions.size(); ++i) {
    Source source;
    source.signal_count = 2;
    source.likelihood.resize(num_states);
    StateSet covered;
    for (std::size_t j = 0; j < partitions[i].size(); ++j) {
      const StateSet block = partitions[i][j];
      if (block.empty() || !block.subset_of(all) || !(block & covered).empty()) {
        throw Error(ErrorCode::kBadStructure, "blocks must be nonempty and disjoint",
                    static_cast<int>(i));
      }
      covered |= block;
      const Rational low(1, static_cast<long>(j) + 2);
      for (int p : block.members()) source.likelihood[p] = {low, 1 - low};
    }
    if (covered != all) {
      throw Error(ErrorCode::kBadStructure, "blocks must cover every state", static_cast<int>(i));
    }
    out.push_back(std::move(source));
  }
  return out;
}

}  // namespace blds
