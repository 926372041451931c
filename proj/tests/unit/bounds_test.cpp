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


#include "blds/bounds.hpp"

#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "blds/errors.hpp"
#include "support/random_instances.hpp"
#include "support/reference.hpp"

namespace blds {
namespace {

using testing::tiny_instance;

const ValidatedInstance& tiny() {
  static const ValidatedInstance v = validate_instance(tiny_instance());
  return v;
}

double ln(const Rational& r) { return std::log(to_double(r)); }

TEST(BoundsTest, TinyGreedy) {
  const CoverageFunction z(tiny());
  const SolveResult g = greedy_solve(z);
  const BoundsReport b = greedy_bounds(g.trace, z);
  ASSERT_TRUE(b.bound_a && b.bound_b && b.bound_c && b.bound_d);
  EXPECT_DOUBLE_EQ(*b.bound_a, 1.0);
  EXPECT_NEAR(*b.bound_b, 1 + std::log(2.0), 1e-12);
  EXPECT_NEAR(*b.bound_b, 1.6931, 1e-4);
  EXPECT_NEAR(*b.bound_c, 1 + std::log(2.0), 1e-12);
  EXPECT_DOUBLE_EQ(*b.bound_d, 1.0);
  EXPECT_DOUBLE_EQ(*b.bound_d_log, 1.0);
  EXPECT_EQ(b.m_value, 1);
  EXPECT_EQ(b.scale, 3);
  EXPECT_FALSE(b.fast_a);
}

TEST(BoundsTest, TinyFast) {
  const CoverageFunction z(tiny());
  const Rational eps(1, 10);
  const SolveResult f = fast_greedy_solve(z, FastGreedyConfig{eps});
  const BoundsReport b = fast_bounds(f.trace, z, eps);
  const double expected = (10.0 / 9.0) * (1 + std::log(2.0));
  ASSERT_TRUE(b.fast_a && b.fast_b);
  EXPECT_NEAR(*b.fast_a, expected, 1e-12);
  EXPECT_NEAR(*b.fast_b, expected, 1e-12);
  EXPECT_NEAR(expected, 1.8812, 1e-4);
  EXPECT_FALSE(b.bound_a);
}

TEST(BoundsTest, SinglePickTraces) {
  BldsInstance raw = tiny_instance();
  raw.sources[0].likelihood[2] = {Rational(1, 5), Rational(4, 5)};
  // Source 0 now separates state 0 from both others on its own.
  const ValidatedInstance v = validate_instance(raw);
  const CoverageFunction z(v);
  const SolveResult g = greedy_solve(z);
  ASSERT_EQ(g.trace.num_picks(), 1);
  EXPECT_FALSE(bound_ratio_a(g.trace, z));
  EXPECT_DOUBLE_EQ(*bound_ratio_b(g.trace, z), 1.0);
  EXPECT_DOUBLE_EQ(*bound_ratio_c(g.trace, z), 1.0);
  const SolveResult f = fast_greedy_solve(z, {});
  ASSERT_EQ(f.trace.num_picks(), 1);
  EXPECT_NEAR(*fast_bound_a(f.trace, z, Rational(1, 10)), 10.0 / 9.0, 1e-12);
}

TEST(BoundsTest, Kmax) {
  EXPECT_EQ(kmax(10, 0.1, 10, 1), 66);
  EXPECT_EQ(kmax(2, 0.1, 1, 1), 29);
  EXPECT_EQ(kmax(1, 0.9, 1, 1), 1);
  EXPECT_THROW(kmax(2, 1.5, 1, 1), Error);
  EXPECT_THROW(kmax(2, 0.1, 1, 2), Error);
}

TEST(BoundsTest, ClosedForms) {
  EXPECT_NEAR(closed_form_greedy(15, 10), 1 + 2 * std::log(15.0) + std::log(5.0), 1e-12);
  EXPECT_NEAR(closed_form_greedy(15, 10), 8.0255, 1e-4);
  EXPECT_NEAR(1 + std::log(1125.0), closed_form_greedy(15, 10), 1e-12);
  EXPECT_NEAR(closed_form_fast(15, 10, 0.1), 8.917, 1e-3);
}

// Uniform-family instance with fixed random structure; only R varies.
ValidatedInstance uniform_instance(const std::vector<StructuralSource>& s, int m, int r) {
  return validate_structure(StateSpace{}, std::vector<Rational>(m, Rational(1, m)),
                            std::vector<Rational>(m, Rational(r, m)), s);
}

TEST(BoundsTest, UniformFamilyDominanceAndMonotonicity) {
  std::mt19937_64 rng(37);
  const int m = 15;
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<StructuralSource> s;
    for (int i = 0; i < 6; ++i) {
      StructuralSource src{Rational(1 + static_cast<int>(rng() % 10)), std::vector<StateSet>(m)};
      for (int p = 0; p < m; ++p) {
        for (int q = 0; q < m; ++q) {
          if (q != p && rng() % 2) src.distinguishable[p].insert(q);
        }
      }
      s.push_back(src);
    }
    double previous_d = 1e300;
    double previous_fast = 1e300;
    for (int r = 0; r < m - 1; ++r) {
      const ValidatedInstance v = uniform_instance(s, m, r);
      const CoverageFunction z(v);
      EXPECT_EQ(z.scale(), m * (m - r));
      const HarmonicBound d = bound_ratio_d(z);
      EXPECT_LE(d.harmonic, d.log_form + 1e-12);
      EXPECT_LE(d.log_form, closed_form_greedy(m, r) + 1e-9);
      EXPECT_LE(d.m_value, m * m * (m - r));
      const double fb = fast_bound_b(z, Rational(1, 10));
      EXPECT_LE(fb, closed_form_fast(m, r, 0.1) + 1e-9);
      EXPECT_LE(d.harmonic, previous_d + 1e-12);
      EXPECT_LE(fb, previous_fast + 1e-12);
      previous_d = d.harmonic;
      previous_fast = fb;
    }
  }
}

TEST(BoundsTest, HarmonicOnAFullSource) {
  // m = 3, R = 0: scale 9, each state contributes min(3 * 2, 6) = 6, so M = 18.
  StructuralSource s{Rational(1), {StateSet::of({1, 2}), StateSet::of({0, 2}), StateSet::of({0, 1})}};
  const ValidatedInstance v = uniform_instance({s}, 3, 0);
  const HarmonicBound d = bound_ratio_d(CoverageFunction(v));
  EXPECT_EQ(d.m_value, 18);
  double h = 0;
  for (int i = 1; i <= 18; ++i) h += 1.0 / i;
  EXPECT_NEAR(d.harmonic, h, 1e-12);
  EXPECT_NEAR(d.log_form, 1 + std::log(18.0), 1e-12);
}

// Bound values recomputed from the trace with reference z, and soundness
// against the brute-force optimum.
TEST(BoundsPropertyTest, MatchReferenceAndAreSound) {
  std::mt19937_64 rng(41);
  int checked = 0;
  for (int trial = 0; trial < 220; ++trial) {
    const int n = 1 + trial % 8;
    const int m = 2 + trial % 7;
    const testing::RandomStructure rs = testing::random_structure(n, m, rng);
    const testing::RefInstance ref = testing::ref_from_structure(rs.prior, rs.budgets, rs.sources);
    const std::uint64_t all = (std::uint64_t{1} << n) - 1;
    if (!testing::ref_meets_budgets(ref, all)) continue;
    ++checked;
    const ValidatedInstance v = rs.validated();
    const CoverageFunction z(v);
    const SolveResult g = greedy_solve(z);
    const BoundsReport b = greedy_bounds(g.trace, z);
    const Rational opt = testing::ref_optimal_cost(ref);
    const Rational full = testing::ref_z(ref, all);
    const int t = g.trace.num_picks();
    const double ratio = opt == 0 ? 1.0 : to_double(Rational(g.solution.cost / opt));
    if (t == 0) continue;

    const std::uint64_t before_last = g.trace.prefix(t - 1).bits();
    const Rational gap = full - testing::ref_z(ref, before_last);
    ASSERT_TRUE(b.bound_c);
    EXPECT_NEAR(*b.bound_c, 1 + ln(full / gap), 1e-12);
    const int j1 = g.trace.picks.front().source;
    const int jt = g.trace.picks.back().source;
    const Rational last_gain = testing::ref_z(ref, before_last | (std::uint64_t{1} << jt)) -
                               testing::ref_z(ref, before_last);
    ASSERT_TRUE(b.bound_b);
    EXPECT_NEAR(*b.bound_b,
                1 + ln(ref.costs[jt] * testing::ref_z(ref, std::uint64_t{1} << j1) / (ref.costs[j1] * last_gain)),
                1e-12);
    if (t >= 2) {
      Rational worst = 0;
      for (int zeta = 1; zeta <= t - 1; ++zeta) {
        const std::uint64_t prefix = g.trace.prefix(zeta).bits();
        for (int i = 0; i < n; ++i) {
          const Rational gain = testing::ref_z(ref, prefix | (std::uint64_t{1} << i)) - testing::ref_z(ref, prefix);
          if (gain > 0) worst = std::max(worst, Rational(testing::ref_z(ref, std::uint64_t{1} << i) / gain));
        }
      }
      if (worst > 0) {
        ASSERT_TRUE(b.bound_a);
        EXPECT_NEAR(*b.bound_a, 1 + ln(worst), 1e-12);
      }
    }
    for (const auto& bound : {b.bound_a, b.bound_b, b.bound_c, b.bound_d, b.bound_d_log}) {
      if (bound) {
        EXPECT_GE(*bound, 1.0);
        EXPECT_LE(ratio, *bound + 1e-9);
      }
    }

    const Rational eps(1, 10);
    const SolveResult f = fast_greedy_solve(z, FastGreedyConfig{eps});
    const BoundsReport fb = fast_bounds(f.trace, z, eps);
    EXPECT_GE(*fb.fast_b, 10.0 / 9.0 - 1e-12);
    if (f.solution.feasible && opt > 0) {
      const double fratio = to_double(Rational(f.solution.cost / opt));
      if (fb.fast_a) EXPECT_LE(fratio, *fb.fast_a + 1e-9);
      EXPECT_LE(fratio, *fb.fast_b + 1e-9);
    }
  }
  EXPECT_GT(checked, 50);
}

}  // namespace
}  // namespace blds
