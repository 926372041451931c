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
#include <random>
#include <span>
#include <vector>

#include "blds/index_set.hpp"
#include "blds/model.hpp"
#include "blds/rational.hpp"

namespace blds {

using Belief = std::vector<double>;
using BeliefMatrix = std::vector<Belief>;  // one row per agent

// Seedable generator used for every sampled observation.
using Rng = std::mt19937_64;

struct BeliefTrajectory {
  std::vector<Belief> beliefs;  // steps + 1 entries, beliefs[0] is the prior
  int true_state = 0;
  SourceSet selected;
  std::uint64_t seed = 0;
};

// Normalization tolerance for every belief vector produced here.
inline constexpr double kBeliefSumTolerance = 1e-12;

// One Bayes update. `observation` holds one signal per source of the
// instance; only the entries of `selected` are read.
Belief bayes_step(std::span<const double> belief, const ValidatedInstance& inst,
                  SourceSet selected, std::span<const int> observation);

// Draws one signal per selected source from the true state's rows by
// inverse CDF; unselected entries are left at 0.
std::vector<int> sample_observation(const std::vector<Source>& sources, SourceSet selected,
                                    int true_state, Rng& rng);

BeliefTrajectory run_bayes(const ValidatedInstance& inst, SourceSet selected, int true_state,
                           int steps, std::uint64_t seed);

// Almost-sure limit of the Bayes recursion: prior mass renormalized over
// the states indistinguishable from the truth, zero elsewhere.
std::vector<Rational> limit_belief(const ValidatedInstance& inst, SourceSet selected, int true_state);

// Total variation distance between the final belief and the truth indicator.
double empirical_error(const BeliefTrajectory& trajectory, int true_state);
double total_variation_to_truth(std::span<const double> belief, int true_state);

// Agents on a weighted digraph, each owning one data source.
struct AgentNetwork {
  std::vector<std::vector<Rational>> weights;  // A, row-stochastic
  std::vector<Source> sources;                 // one per agent
  std::vector<std::vector<Rational>> priors;   // one per agent

  int num_agents() const { return static_cast<int>(weights.size()); }
  int num_states() const { return priors.empty() ? 0 : static_cast<int>(priors.front().size()); }
};

// Rows of A sum to 1, a_ii > 0, and the positive-entry graph is strongly
// connected; sources and priors are valid and share one state space.
// Throws Error(kBadMatrix) or the model's validation errors.
void validate_network(const AgentNetwork& net);

struct StationaryDistribution {
  std::vector<double> pi;
  double residual = 0.0;  // || pi' A - pi' ||_1
};

// Left Perron vector of A by power iteration. Throws Error(kBadMatrix) for
// a matrix that is not stochastic, lacks self-loops or is reducible, and
// Error(kNotConverged) if the residual stays above 1e-12.
StationaryDistribution stationary_distribution(const std::vector<std::vector<Rational>>& weights);

// Geometric pooling of neighbour beliefs followed by a local Bayes update.
// Agents outside `selected` use a flat likelihood. observations[i] is agent
// i's signal.
BeliefMatrix nonbayes_step(const AgentNetwork& net, SourceSet selected, const BeliefMatrix& beliefs,
                           std::span<const int> observations);

struct DistributedTrajectory {
  std::vector<BeliefMatrix> beliefs;
  int true_state = 0;
  SourceSet selected;
  std::uint64_t seed = 0;
};

DistributedTrajectory run_nonbayes(const AgentNetwork& net, SourceSet selected, int true_state,
                                   int steps, std::uint64_t seed);

// States agent sources in `selected` cannot separate from `state`.
StateSet network_indist(const AgentNetwork& net, SourceSet selected, int state);

// Pooled prior prod_j mu_{j,0}(theta)^{pi_j}, not normalized.
std::vector<double> pooled_prior(const AgentNetwork& net, std::span<const double> pi);

// Common limit of every agent's belief.
std::vector<double> nonbayes_limit(const AgentNetwork& net, SourceSet selected, int true_state);

// Sum over agents of the steady-state errors when `state` is the truth.
double nonbayes_error(const AgentNetwork& net, SourceSet selected, int state);

// Single-designer instance with the agents' sources and the normalized
// pooled prior as an exact rational vector (the last entry absorbs the
// rounding so the prior sums to 1).
BldsInstance nonbayes_surrogate(const AgentNetwork& net, std::vector<Rational> budgets);

}  // namespace blds
