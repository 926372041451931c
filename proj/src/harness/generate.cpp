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


#include <cstdlib>
#include <random>
#include <string>

#include "blds/errors.hpp"
#include "blds/harness.hpp"
#include "blds/objective.hpp"

namespace blds {

namespace {

constexpr int kMaxRedraws = 1000;
constexpr std::uint64_t kCostStream = 0xC057C057C057C057ULL;

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

bool draw_bernoulli(const Rational& p, std::mt19937_64& rng) {
  const std::int64_t num = to_int64(boost::multiprecision::numerator(p));
  const std::int64_t den = to_int64(boost::multiprecision::denominator(p));
  return std::uniform_int_distribution<std::int64_t>(0, den - 1)(rng) < num;
}

std::vector<StateSet> draw_raw_source(const GenConfig& cfg, std::mt19937_64& rng) {
  std::vector<StateSet> fc(cfg.m);
  for (int p = 0; p < cfg.m; ++p) {
    for (int q = 0; q < cfg.m; ++q) {
      if (q == p || !draw_bernoulli(cfg.include_prob, rng)) continue;
      fc[p].insert(q);
      fc[q].insert(p);
    }
  }
  return fc;
}

std::vector<StateSet> draw_partition(const GenConfig& cfg, std::mt19937_64& rng) {
  const int blocks = cfg.max_blocks == 0 ? cfg.m : cfg.max_blocks;
  std::uniform_int_distribution<int> label(0, blocks - 1);
  std::vector<StateSet> by_label(blocks);
  for (int q = 0; q < cfg.m; ++q) by_label[label(rng)].insert(q);
  std::vector<StateSet> partition;
  // Order blocks by smallest member.
  for (int q = 0; q < cfg.m; ++q) {
    for (const StateSet& b : by_label) {
      if (!b.empty() && b.members().front() == q) partition.push_back(b);
    }
  }
  return partition;
}

GeneratedInstance draw_once(const GenConfig& cfg, const std::vector<Rational>& costs,
                            std::uint64_t stream) {
  std::mt19937_64 rng(stream);
  GeneratedInstance g;
  g.mode = cfg.mode;
  g.states = StateSpace::numbered(cfg.m);
  g.prior.assign(cfg.m, Rational(1, cfg.m));
  g.budgets.assign(cfg.m, Rational(cfg.r, cfg.m));
  if (cfg.mode == GenMode::kRaw) {
    for (int i = 0; i < cfg.n; ++i) g.structure.push_back(StructuralSource{costs[i], draw_raw_source(cfg, rng)});
    return g;
  }
  std::vector<std::vector<StateSet>> partitions;
  for (int i = 0; i < cfg.n; ++i) partitions.push_back(draw_partition(cfg, rng));
  std::vector<Source> sources = realize_likelihoods(partitions, cfg.m);
  for (int i = 0; i < cfg.n; ++i) {
    sources[i].cost = costs[i];
    std::vector<StateSet> fc(cfg.m);
    for (const StateSet& block : partitions[i]) {
      for (int q : block.members()) fc[q] = block.complement(cfg.m);
    }
    g.structure.push_back(StructuralSource{costs[i], std::move(fc)});
  }
  g.likelihoods = BldsInstance{g.states, std::move(sources), g.prior, g.budgets};
  return g;
}

}  // namespace

std::uint64_t seed_from_env(std::uint64_t fallback) {
  const char* text = std::getenv("BLDS_SEED");
  if (text == nullptr || *text == '\0') return fallback;
  char* end = nullptr;
  const unsigned long long v = std::strtoull(text, &end, 0);
  return *end == '\0' ? static_cast<std::uint64_t>(v) : fallback;
}

void validate_gen_config(const GenConfig& cfg) {
  const auto fail = [](const std::string& msg) { throw Error(ErrorCode::kBadConfig, msg); };
  if (cfg.n < 1 || cfg.n > kMaxIndex) fail("n must lie in [1, 64]");
  if (cfg.m < 2 || cfg.m > kMaxIndex) fail("m must lie in [2, 64]");
  if (cfg.r < 0 || cfg.r >= cfg.m - 1) fail("R must satisfy 0 <= R < m-1");
  if (cfg.cost_max < 1) fail("cost_max must be at least 1");
  if (cfg.count < 1) fail("count must be at least 1");
  if (cfg.include_prob < 0 || cfg.include_prob > 1) fail("include_prob must lie in [0, 1]");
  if (cfg.max_blocks < 0 || cfg.max_blocks > cfg.m) fail("max_blocks must lie in [0, m]");
}

ValidatedInstance GeneratedInstance::validated() const {
  if (likelihoods) return validate_instance(*likelihoods);
  return validate_structure(states, prior, budgets, structure);
}

std::uint64_t substream_seed(std::uint64_t seed, std::initializer_list<std::uint64_t> keys) {
  std::uint64_t x = splitmix64(seed);
  for (std::uint64_t k : keys) x = splitmix64(x ^ splitmix64(k));
  return x;
}

std::vector<Rational> draw_costs(const GenConfig& cfg) {
  std::mt19937_64 rng(substream_seed(cfg.seed, {kCostStream}));
  std::uniform_int_distribution<int> cost(1, cfg.cost_max);
  std::vector<Rational> out;
  for (int i = 0; i < cfg.n; ++i) out.emplace_back(cost(rng));
  return out;
}

GeneratedInstance gen_instance(const GenConfig& cfg, int index) {
  validate_gen_config(cfg);
  const std::vector<Rational> costs = draw_costs(cfg);
  for (int redraw = 0; redraw <= kMaxRedraws; ++redraw) {
    const std::uint64_t stream = substream_seed(
        cfg.seed, {static_cast<std::uint64_t>(cfg.r), static_cast<std::uint64_t>(index),
                   static_cast<std::uint64_t>(redraw)});
    GeneratedInstance g = draw_once(cfg, costs, stream);
    try {
      check_solvable(g.validated());
    } catch (const InfeasibleError&) {
      continue;
    }
    g.redraws = redraw;
    return g;
  }
  throw Error(ErrorCode::kBadConfig,
              "no solvable instance after " + std::to_string(kMaxRedraws) + " redraws");
}

}  // namespace blds
