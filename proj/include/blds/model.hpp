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

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "blds/index_set.hpp"
#include "blds/rational.hpp"

namespace blds {

struct StateSpace {
  std::vector<std::string> labels;

  int size() const { return static_cast<int>(labels.size()); }
  // Labels "theta1".."thetam".
  static StateSpace numbered(int m);
};

// A data source with a finite signal alphabet {0, ..., signal_count-1}.
// likelihood[state][signal] holds l_i(signal | state).
struct Source {
  int signal_count = 0;
  std::vector<std::vector<Rational>> likelihood;
  Rational cost{1};
};

// Problem input as parsed, before any invariant is checked.
struct BldsInstance {
  StateSpace states;
  std::vector<Source> sources;
  std::vector<Rational> prior;
  std::vector<Rational> budgets;
};

// A source given only by its distinguishability structure: distinguishable[p]
// is the set of states that the source separates from state p. Used for
// instances built directly from F^c sets, which carry no likelihoods.
struct StructuralSource {
  Rational cost{1};
  std::vector<StateSet> distinguishable;
};

// indist(i, p) is the set of states source i cannot tell apart from p.
class DistinguishabilityMap {
 public:
  DistinguishabilityMap() = default;
  DistinguishabilityMap(int num_sources, int num_states);

  int num_sources() const { return num_sources_; }
  int num_states() const { return num_states_; }

  StateSet indist(int source, int state) const { return sets_[source * num_states_ + state]; }
  StateSet distinguishable(int source, int state) const {
    return indist(source, state).complement(num_states_);
  }
  void set_indist(int source, int state, StateSet s) { sets_[source * num_states_ + state] = s; }

  friend bool operator==(const DistinguishabilityMap&, const DistinguishabilityMap&) = default;

 private:
  int num_sources_ = 0;
  int num_states_ = 0;
  std::vector<StateSet> sets_;
};

// An instance whose invariants have been checked. Immutable once built.
class ValidatedInstance {
 public:
  int num_states() const { return states_.size(); }
  int num_sources() const { return static_cast<int>(costs_.size()); }
  const StateSpace& states() const { return states_; }
  const std::vector<Rational>& prior() const { return prior_; }
  const std::vector<Rational>& budgets() const { return budgets_; }
  const std::vector<Rational>& costs() const { return costs_; }
  const Rational& cost(int source) const { return costs_[source]; }
  const DistinguishabilityMap& map() const { return map_; }
  SourceSet all_sources() const { return SourceSet::first(num_sources()); }
  StateSet all_states() const { return StateSet::first(num_states()); }

  // Likelihood tables exist unless the instance was built from F^c sets.
  bool has_likelihoods() const { return sources_.has_value(); }
  const Source& source(int i) const;
  const std::vector<Source>& sources() const;

  // Back to raw form; requires likelihoods.
  BldsInstance raw() const;

  Rational cost_of(SourceSet selection) const;

 private:
  friend ValidatedInstance validate_instance(BldsInstance raw);
  friend ValidatedInstance validate_structure(StateSpace states, std::vector<Rational> prior,
                                              std::vector<Rational> budgets,
                                              std::vector<StructuralSource> sources);

  StateSpace states_;
  std::vector<Rational> prior_;
  std::vector<Rational> budgets_;
  std::vector<Rational> costs_;
  DistinguishabilityMap map_;
  std::optional<std::vector<Source>> sources_;
};

// Checks positivity and normalization of every likelihood row, the prior,
// the budgets and the costs, then derives the distinguishability map.
ValidatedInstance validate_instance(BldsInstance raw);

// Same checks for an instance given by F^c sets. Every distinguishable[p]
// must exclude p; sets need not be symmetric.
ValidatedInstance validate_structure(StateSpace states, std::vector<Rational> prior,
                                     std::vector<Rational> budgets,
                                     std::vector<StructuralSource> sources);

// States whose likelihood row equals the row of `state` exactly.
StateSet indist_set(const Source& source, int state);

// Intersection of indist sets over `selection`; the full state space when
// the selection is empty.
StateSet indist_intersection(const DistinguishabilityMap& map, SourceSet selection, int state);

// Sum_s p_s ln(p_s / q_s). Throws Error(kDimensionMismatch) on unequal lengths.
double kl_divergence(std::span<const Rational> p, std::span<const Rational> q);

// Row-equality classes, ordered by smallest member.
std::vector<StateSet> equivalence_partition(const Source& source);

// Builds binary-signal sources whose equivalence classes are exactly the
// given partitions. Block j (in the given order) receives the row
// (1/(j+2), (j+1)/(j+2)). Costs are 1.
std::vector<Source> realize_likelihoods(std::span<const std::vector<StateSet>> partitions,
                                        int num_states);

}  // namespace blds
