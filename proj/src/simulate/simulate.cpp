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


#include "blds/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "blds/errors.hpp"
#include "blds/kernels.hpp"

namespace blds {

namespace {

constexpr double kUnderflowGuard = 1e-300;
constexpr double kStationaryTarget = 1e-14;
constexpr double kStationaryTolerance = 1e-12;
constexpr int kMaxPowerIterations = 1'000'000;

// Double-precision copy of the likelihood tables: value[i][q][s] and the
// cumulative rows used for sampling.
struct LikelihoodCache {
  std::vector<std::vector<std::vector<double>>> value;
  std::vector<std::vector<std::vector<double>>> cdf;

  explicit LikelihoodCache(const std::vector<Source>& sources) {
    value.resize(sources.size());
    cdf.resize(sources.size());
    for (std::size_t i = 0; i < sources.size(); ++i) {
      for (const auto& row : sources[i].likelihood) {
        std::vector<double> v;
        std::vector<double> c;
        Rational running = 0;
        for (const Rational& x : row) {
          v.push_back(to_double(x));
          running += x;
          c.push_back(to_double(running));
        }
        value[i].push_back(std::move(v));
        cdf[i].push_back(std::move(c));
      }
    }
  }
};

int draw_signal(const std::vector<double>& cdf, Rng& rng) {
  const double u = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
  for (std::size_t s = 0; s + 1 < cdf.size(); ++s) {
    if (u < cdf[s]) return static_cast<int>(s);
  }
  return static_cast<int>(cdf.size()) - 1;
}

std::vector<int> draw_observation(const LikelihoodCache& cache, SourceSet selected, int true_state,
                                  std::size_t width, Rng& rng) {
  std::vector<int> obs(width, 0);
  for (int i : selected.members()) obs[i] = draw_signal(cache.cdf[i][true_state], rng);
  return obs;
}

// Renormalizes exp(logs) in place into `out`.
void normalize_from_logs(std::span<const double> logs, std::span<double> out) {
  const double top = *std::max_element(logs.begin(), logs.end());
  for (std::size_t q = 0; q < logs.size(); ++q) {
    out[q] = std::isinf(logs[q]) && logs[q] < 0 ? 0.0 : std::exp(logs[q] - top);
  }
  double sum = 0.0;
  for (double v : out) sum += v;
  kernels::active().scale(out, 1.0 / sum);
}

Belief bayes_update(std::span<const double> belief, const LikelihoodCache& cache, SourceSet selected,
                    std::span<const int> observation) {
  const std::size_t m = belief.size();
  std::vector<double> joint(m, 1.0);
  for (int i : selected.members()) {
    for (std::size_t q = 0; q < m; ++q) joint[q] *= cache.value[i][q][observation[i]];
  }
  Belief out(belief.begin(), belief.end());
  const double sum = kernels::active().mul_sum(out, joint);
  bool underflow = !(sum > kUnderflowGuard);
  for (double v : out) underflow = underflow || (v > 0.0 && v < kUnderflowGuard);
  if (!underflow) {
    kernels::active().scale(out, 1.0 / sum);
    return out;
  }
  std::vector<double> logs(m);
  for (std::size_t q = 0; q < m; ++q) {
    logs[q] = belief[q] > 0.0 ? std::log(belief[q]) : -std::numeric_limits<double>::infinity();
    for (int i : selected.members()) logs[q] += std::log(cache.value[i][q][observation[i]]);
  }
  normalize_from_logs(logs, out);
  return out;
}

std::vector<std::vector<double>> to_doubles(const std::vector<std::vector<Rational>>& rows) {
  std::vector<std::vector<double>> out;
  out.reserve(rows.size());
  for (const auto& row : rows) {
    std::vector<double> r;
    r.reserve(row.size());
    for (const Rational& v : row) r.push_back(to_double(v));
    out.push_back(std::move(r));
  }
  return out;
}

BeliefMatrix pool_and_update(const std::vector<std::vector<double>>& weights, const LikelihoodCache& cache,
                             SourceSet selected, const BeliefMatrix& beliefs,
                             std::span<const int> observations) {
  const std::size_t n = beliefs.size();
  const std::size_t m = beliefs.front().size();
  std::vector<std::vector<double>> logs(n, std::vector<double>(m));
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t q = 0; q < m; ++q) {
      logs[j][q] = beliefs[j][q] > 0.0 ? std::log(beliefs[j][q]) : -std::numeric_limits<double>::infinity();
    }
  }
  const kernels::KernelTable& k = kernels::active();
  BeliefMatrix out(n, Belief(m));
  std::vector<double> acc(m);
  for (std::size_t i = 0; i < n; ++i) {
    std::fill(acc.begin(), acc.end(), 0.0);
    for (std::size_t j = 0; j < n; ++j) {
      if (weights[i][j] != 0.0) k.axpy(acc, weights[i][j], logs[j]);
    }
    if (selected.contains(static_cast<int>(i))) {
      for (std::size_t q = 0; q < m; ++q) acc[q] += std::log(cache.value[i][q][observations[i]]);
    }
    normalize_from_logs(acc, out[i]);
  }
  return out;
}

}  // namespace

Belief bayes_step(std::span<const double> belief, const ValidatedInstance& inst, SourceSet selected,
                  std::span<const int> observation) {
  if (static_cast<int>(belief.size()) != inst.num_states()) {
    throw Error(ErrorCode::kDimensionMismatch, "belief length differs from the state count");
  }
  if (selected.empty()) return Belief(belief.begin(), belief.end());
  return bayes_update(belief, LikelihoodCache(inst.sources()), selected, observation);
}

std::vector<int> sample_observation(const std::vector<Source>& sources, SourceSet selected,
                                    int true_state, Rng& rng) {
  return draw_observation(LikelihoodCache(sources), selected, true_state, sources.size(), rng);
}

BeliefTrajectory run_bayes(const ValidatedInstance& inst, SourceSet selected, int true_state,
                           int steps, std::uint64_t seed) {
  BeliefTrajectory traj;
  traj.true_state = true_state;
  traj.selected = selected;
  traj.seed = seed;
  traj.beliefs.reserve(static_cast<std::size_t>(steps) + 1);
  Belief current;
  for (const Rational& mu : inst.prior()) current.push_back(to_double(mu));
  traj.beliefs.push_back(current);
  const LikelihoodCache cache(inst.sources());
  Rng rng(seed);
  for (int k = 0; k < steps; ++k) {
    if (!selected.empty()) {
      const auto obs = draw_observation(cache, selected, true_state, inst.sources().size(), rng);
      current = bayes_update(current, cache, selected, obs);
    }
    traj.beliefs.push_back(current);
  }
  return traj;
}

std::vector<Rational> limit_belief(const ValidatedInstance& inst, SourceSet selected, int true_state) {
  const StateSet indist = indist_intersection(inst.map(), selected, true_state);
  Rational mass = 0;
  for (int q : indist.members()) mass += inst.prior()[q];
  std::vector<Rational> out(inst.num_states(), Rational(0));
  for (int q : indist.members()) out[q] = inst.prior()[q] / mass;
  return out;
}

double total_variation_to_truth(std::span<const double> belief, int true_state) {
  double l1 = 0.0;
  for (std::size_t q = 0; q < belief.size(); ++q) {
    l1 += std::abs(belief[q] - (static_cast<int>(q) == true_state ? 1.0 : 0.0));
  }
  return 0.5 * l1;
}

double empirical_error(const BeliefTrajectory& trajectory, int true_state) {
  return total_variation_to_truth(trajectory.beliefs.back(), true_state);
}

void validate_network(const AgentNetwork& net) {
  const int n = net.num_agents();
  if (n < 1 || n > kMaxIndex) throw Error(ErrorCode::kBadMatrix, "network needs between 1 and 64 agents");
  if (static_cast<int>(net.sources.size()) != n || static_cast<int>(net.priors.size()) != n) {
    throw Error(ErrorCode::kDimensionMismatch, "one source and one prior per agent are required");
  }
  const int m = net.num_states();
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(net.priors[i].size()) != m) {
      throw Error(ErrorCode::kDimensionMismatch, "agent priors disagree on the state count", i);
    }
    try {
      validate_instance(BldsInstance{StateSpace::numbered(m), {net.sources[i]}, net.priors[i],
                                     std::vector<Rational>(m, Rational(1))});
    } catch (const Error& e) {
      throw Error(e.code(), std::string("agent ") + std::to_string(i) + ": " + e.what(), i);
    }
  }
  stationary_distribution(net.weights);
}

StationaryDistribution stationary_distribution(const std::vector<std::vector<Rational>>& weights) {
  const std::size_t n = weights.size();
  if (n == 0) throw Error(ErrorCode::kBadMatrix, "empty weight matrix");
  for (std::size_t i = 0; i < n; ++i) {
    const int agent = static_cast<int>(i);
    if (weights[i].size() != n) throw Error(ErrorCode::kBadMatrix, "weight matrix is not square", agent);
    Rational total = 0;
    for (const Rational& a : weights[i]) {
      if (a < 0) throw Error(ErrorCode::kBadMatrix, "negative weight", agent);
      total += a;
    }
    if (total != 1) throw Error(ErrorCode::kBadMatrix, "row does not sum to 1", agent);
    if (weights[i][i] <= 0) throw Error(ErrorCode::kBadMatrix, "missing self weight", agent);
  }
  // Strong connectivity: every agent reaches and is reached from agent 0.
  for (const bool forward : {true, false}) {
    std::vector<bool> seen(n, false);
    std::vector<std::size_t> stack{0};
    seen[0] = true;
    while (!stack.empty()) {
      const std::size_t u = stack.back();
      stack.pop_back();
      for (std::size_t v = 0; v < n; ++v) {
        const Rational& a = forward ? weights[u][v] : weights[v][u];
        if (a > 0 && !seen[v]) {
          seen[v] = true;
          stack.push_back(v);
        }
      }
    }
    if (std::find(seen.begin(), seen.end(), false) != seen.end()) {
      throw Error(ErrorCode::kBadMatrix, "interaction graph is not strongly connected");
    }
  }

  const auto a = to_doubles(weights);
  const auto residual_of = [&](const std::vector<double>& pi) {
    double r = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      double v = 0.0;
      for (std::size_t i = 0; i < n; ++i) v += pi[i] * a[i][j];
      r += std::abs(v - pi[j]);
    }
    return r;
  };
  std::vector<double> pi(n, 1.0 / static_cast<double>(n));
  std::vector<double> next(n);
  double residual = residual_of(pi);
  for (int it = 0; it < kMaxPowerIterations && residual > kStationaryTarget; ++it) {
    std::fill(next.begin(), next.end(), 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) next[j] += pi[i] * a[i][j];
    }
    double sum = 0.0;
    for (double v : next) sum += v;
    for (std::size_t j = 0; j < n; ++j) pi[j] = next[j] / sum;
    residual = residual_of(pi);
  }
  if (residual > kStationaryTolerance) {
    throw Error(ErrorCode::kNotConverged, "power iteration residual " + std::to_string(residual));
  }
  return StationaryDistribution{pi, residual};
}

BeliefMatrix nonbayes_step(const AgentNetwork& net, SourceSet selected, const BeliefMatrix& beliefs,
                           std::span<const int> observations) {
  if (static_cast<int>(beliefs.size()) != net.num_agents()) {
    throw Error(ErrorCode::kDimensionMismatch, "one belief row per agent is required");
  }
  return pool_and_update(to_doubles(net.weights), LikelihoodCache(net.sources), selected, beliefs,
                         observations);
}

DistributedTrajectory run_nonbayes(const AgentNetwork& net, SourceSet selected, int true_state,
                                   int steps, std::uint64_t seed) {
  validate_network(net);
  DistributedTrajectory traj;
  traj.true_state = true_state;
  traj.selected = selected;
  traj.seed = seed;
  const auto weights = to_doubles(net.weights);
  const LikelihoodCache cache(net.sources);
  BeliefMatrix current = to_doubles(net.priors);
  traj.beliefs.reserve(static_cast<std::size_t>(steps) + 1);
  traj.beliefs.push_back(current);
  Rng rng(seed);
  for (int k = 0; k < steps; ++k) {
    const auto obs = draw_observation(cache, selected, true_state, net.sources.size(), rng);
    current = pool_and_update(weights, cache, selected, current, obs);
    traj.beliefs.push_back(current);
  }
  return traj;
}

StateSet network_indist(const AgentNetwork& net, SourceSet selected, int state) {
  StateSet out = StateSet::first(net.num_states());
  for (int i : selected.members()) out &= indist_set(net.sources[i], state);
  return out;
}

std::vector<double> pooled_prior(const AgentNetwork& net, std::span<const double> pi) {
  const int m = net.num_states();
  std::vector<double> out(m, 0.0);
  for (int q = 0; q < m; ++q) {
    double log_mass = 0.0;
    for (int j = 0; j < net.num_agents(); ++j) log_mass += pi[j] * std::log(to_double(net.priors[j][q]));
    out[q] = std::exp(log_mass);
  }
  return out;
}

std::vector<double> nonbayes_limit(const AgentNetwork& net, SourceSet selected, int true_state) {
  const StationaryDistribution st = stationary_distribution(net.weights);
  const std::vector<double> pooled = pooled_prior(net, st.pi);
  const StateSet indist = network_indist(net, selected, true_state);
  double mass = 0.0;
  for (int q : indist.members()) mass += pooled[q];
  std::vector<double> out(net.num_states(), 0.0);
  for (int q : indist.members()) out[q] = pooled[q] / mass;
  return out;
}

double nonbayes_error(const AgentNetwork& net, SourceSet selected, int state) {
  const StationaryDistribution st = stationary_distribution(net.weights);
  const std::vector<double> pooled = pooled_prior(net, st.pi);
  const StateSet indist = network_indist(net, selected, state);
  double mass = 0.0;
  for (int q : indist.members()) mass += pooled[q];
  return net.num_agents() * (1.0 - pooled[state] / mass);
}

BldsInstance nonbayes_surrogate(const AgentNetwork& net, std::vector<Rational> budgets) {
  const StationaryDistribution st = stationary_distribution(net.weights);
  const std::vector<double> pooled = pooled_prior(net, st.pi);
  double total = 0.0;
  for (double v : pooled) total += v;
  std::vector<Rational> prior;
  Rational used = 0;
  for (std::size_t q = 0; q + 1 < pooled.size(); ++q) {
    prior.emplace_back(pooled[q] / total);
    used += prior.back();
  }
  prior.push_back(1 - used);
  return BldsInstance{StateSpace::numbered(net.num_states()), net.sources, std::move(prior), std::move(budgets)};
}

}  // namespace blds
