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
#include <random>

#include <gtest/gtest.h>

#include "blds/errors.hpp"
#include "support/reference.hpp"

namespace blds {
namespace {

using testing::tiny_instance;

ErrorCode code_of(const BldsInstance& raw) {
  try {
    validate_instance(raw);
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "instance was accepted";
  return ErrorCode::kParse;
}

int index_of(const BldsInstance& raw) {
  try {
    validate_instance(raw);
  } catch (const Error& e) {
    return e.index();
  }
  return -2;
}

TEST(RationalTest, ParsesAndPrints) {
  EXPECT_EQ(parse_rational("2/6"), Rational(1, 3));
  EXPECT_EQ(parse_rational(" -3 "), Rational(-3));
  EXPECT_EQ(to_string(Rational(2, 4)), "1/2");
  EXPECT_EQ(to_string(Rational(5)), "5");
  EXPECT_THROW(parse_rational("1/0"), Error);
  EXPECT_THROW(parse_rational("abc"), Error);
  EXPECT_THROW(parse_rational("1/2/3"), Error);
}

TEST(ValidateTest, AcceptsTiny) {
  const ValidatedInstance v = validate_instance(tiny_instance());
  EXPECT_EQ(v.num_states(), 3);
  EXPECT_EQ(v.num_sources(), 2);
  EXPECT_EQ(v.cost(0), 2);
  EXPECT_EQ(v.cost_of(v.all_sources()), 3);
  EXPECT_TRUE(v.has_likelihoods());
  EXPECT_EQ(v.states().labels[2], "theta3");
}

TEST(ValidateTest, RejectsZeroLikelihood) {
  BldsInstance raw = tiny_instance();
  raw.sources[0].likelihood[1] = {Rational(0), Rational(1)};
  EXPECT_EQ(code_of(raw), ErrorCode::kZeroLikelihood);
  EXPECT_EQ(index_of(raw), 0);
}

TEST(ValidateTest, RejectsBadPrior) {
  BldsInstance raw = tiny_instance();
  raw.prior = {Rational(1, 2), Rational(1, 2), Rational(1, 2)};
  EXPECT_EQ(code_of(raw), ErrorCode::kBadPrior);
  raw.prior = {Rational(1, 2), Rational(1, 2), Rational(0)};
  EXPECT_EQ(code_of(raw), ErrorCode::kBadPrior);
}

TEST(ValidateTest, RejectsRowsBudgetsCostsAndShapes) {
  BldsInstance raw = tiny_instance();
  raw.sources[1].likelihood[2] = {Rational(1, 4), Rational(1, 4)};
  EXPECT_EQ(code_of(raw), ErrorCode::kRowNotNormalized);
  EXPECT_EQ(index_of(raw), 1);

  raw = tiny_instance();
  raw.budgets[1] = Rational(3, 2);
  EXPECT_EQ(code_of(raw), ErrorCode::kBadBudget);

  raw = tiny_instance();
  raw.sources[1].cost = 0;
  EXPECT_EQ(code_of(raw), ErrorCode::kNonpositiveCost);

  raw = tiny_instance();
  raw.sources[0].likelihood.pop_back();
  EXPECT_EQ(code_of(raw), ErrorCode::kDimensionMismatch);
}

TEST(IndistTest, TinyRows) {
  const BldsInstance raw = tiny_instance();
  EXPECT_EQ(indist_set(raw.sources[0], 0), StateSet::of({0, 2}));
  EXPECT_EQ(indist_set(raw.sources[1], 2), StateSet::of({2}));
  Source flat{2, std::vector<std::vector<Rational>>(3, {Rational(1, 2), Rational(1, 2)}), 1};
  for (int p = 0; p < 3; ++p) EXPECT_EQ(indist_set(flat, p), StateSet::first(3));
}

TEST(IndistTest, Intersection) {
  const ValidatedInstance v = validate_instance(tiny_instance());
  EXPECT_EQ(indist_intersection(v.map(), SourceSet::of({0, 1}), 0), StateSet::of({0}));
  EXPECT_EQ(indist_intersection(v.map(), SourceSet(), 1), StateSet::first(3));
  EXPECT_EQ(indist_intersection(v.map(), SourceSet::of({1}), 0), StateSet::of({0, 1}));
}

TEST(KlTest, Values) {
  const std::vector<Rational> half{Rational(1, 2), Rational(1, 2)};
  const std::vector<Rational> third{Rational(1, 3), Rational(2, 3)};
  EXPECT_EQ(kl_divergence(half, half), 0.0);
  EXPECT_NEAR(kl_divergence(half, third), 0.5 * std::log(9.0 / 8.0), 1e-15);
  EXPECT_NEAR(kl_divergence(half, third), 0.058891518, 1e-9);
  const double reverse = (1.0 / 3) * std::log((1.0 / 3) / 0.5) + (2.0 / 3) * std::log((2.0 / 3) / 0.5);
  EXPECT_NEAR(kl_divergence(third, half), reverse, 1e-15);
  EXPECT_GT(kl_divergence(third, half), 0.0);
  EXPECT_THROW(kl_divergence(half, std::vector<Rational>{Rational(1)}), Error);
}

TEST(PartitionTest, Tiny) {
  const BldsInstance raw = tiny_instance();
  EXPECT_EQ(equivalence_partition(raw.sources[0]), (std::vector<StateSet>{StateSet::of({0, 2}), StateSet::of({1})}));
  EXPECT_EQ(equivalence_partition(raw.sources[1]), (std::vector<StateSet>{StateSet::of({0, 1}), StateSet::of({2})}));
}

TEST(RealizeTest, RowsFollowBlockOrder) {
  const std::vector<std::vector<StateSet>> parts{{StateSet::of({0, 2}), StateSet::of({1})}, {StateSet::first(3)}};
  const std::vector<Source> s = realize_likelihoods(parts, 3);
  ASSERT_EQ(s.size(), 2U);
  EXPECT_EQ(s[0].likelihood[0], (std::vector<Rational>{Rational(1, 2), Rational(1, 2)}));
  EXPECT_EQ(s[0].likelihood[2], (std::vector<Rational>{Rational(1, 2), Rational(1, 2)}));
  EXPECT_EQ(s[0].likelihood[1], (std::vector<Rational>{Rational(1, 3), Rational(2, 3)}));
  for (int q = 0; q < 3; ++q) EXPECT_EQ(s[1].likelihood[q], (std::vector<Rational>{Rational(1, 2), Rational(1, 2)}));
}

TEST(RealizeTest, TinyRoundTrip) {
  const BldsInstance raw = tiny_instance();
  const std::vector<std::vector<StateSet>> parts{equivalence_partition(raw.sources[0]),
                                                 equivalence_partition(raw.sources[1])};
  BldsInstance rebuilt = raw;
  rebuilt.sources = realize_likelihoods(parts, 3);
  EXPECT_EQ(validate_instance(rebuilt).map(), validate_instance(raw).map());
}

TEST(RealizeTest, RejectsOverlapAndGaps) {
  const std::vector<std::vector<StateSet>> overlap{{StateSet::of({0, 1}), StateSet::of({1, 2})}};
  EXPECT_THROW(realize_likelihoods(overlap, 3), Error);
  const std::vector<std::vector<StateSet>> gap{{StateSet::of({0})}};
  EXPECT_THROW(realize_likelihoods(gap, 3), Error);
}

std::vector<StateSet> random_partition(int m, std::mt19937_64& rng) {
  std::vector<StateSet> by_label(m);
  std::uniform_int_distribution<int> label(0, m - 1);
  for (int q = 0; q < m; ++q) by_label[label(rng)].insert(q);
  std::vector<StateSet> out;
  for (int q = 0; q < m; ++q) {
    for (StateSet b : by_label) {
      if (!b.empty() && b.members().front() == q) out.push_back(b);
    }
  }
  return out;
}

TEST(RealizeTest, RandomRoundTripsAndPartitionProperty) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    const int m = 1 + trial % 9;
    const std::vector<std::vector<StateSet>> parts{random_partition(m, rng)};
    const std::vector<Source> s = realize_likelihoods(parts, m);
    EXPECT_EQ(equivalence_partition(s[0]), parts[0]);
    StateSet seen;
    for (int p = 0; p < m; ++p) {
      const StateSet block = indist_set(s[0], p);
      EXPECT_TRUE(block.contains(p));
      for (int q : block.members()) EXPECT_EQ(indist_set(s[0], q), block);
      seen |= block;
    }
    EXPECT_EQ(seen, StateSet::first(m));
  }
}

// Row equality agrees with a vanishing KL divergence.
TEST(KlTest, AgreesWithRowEquality) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    const int m = 2 + trial % 4;
    const std::vector<Source> s = realize_likelihoods(std::vector<std::vector<StateSet>>{random_partition(m, rng)}, m);
    for (int p = 0; p < m; ++p) {
      for (int q = 0; q < m; ++q) {
        const bool same = indist_set(s[0], p).contains(q);
        EXPECT_EQ(same, kl_divergence(s[0].likelihood[q], s[0].likelihood[p]) < 1e-12);
      }
    }
  }
}

// Joint likelihood vectors over the product signal space separate exactly
// the states the per-source intersection separates.
TEST(IndistTest, IntersectionMatchesJointLikelihood) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 40; ++trial) {
    const int m = 2 + trial % 4;
    const int n = 3;
    BldsInstance raw;
    raw.states = StateSpace::numbered(m);
    raw.prior.assign(m, Rational(1, m));
    raw.budgets.assign(m, Rational(0));
    for (int i = 0; i < n; ++i) {
      const int signals = 2 + static_cast<int>(rng() % 2);
      Source s{signals, {}, 1};
      // Draw each state's row from a palette of two rows so collisions occur.
      std::vector<std::vector<Rational>> palette;
      for (int k = 0; k < 2; ++k) {
        std::vector<Rational> row;
        Rational left = 1;
        for (int x = 0; x + 1 < signals; ++x) {
          const Rational v(1 + static_cast<int>(rng() % 3), 2 * signals + 3);
          row.push_back(v);
          left -= v;
        }
        row.push_back(left);
        palette.push_back(row);
      }
      for (int q = 0; q < m; ++q) s.likelihood.push_back(palette[rng() % 2]);
      raw.sources.push_back(s);
    }
    const ValidatedInstance v = validate_instance(raw);
    for (std::uint64_t mask = 0; mask < 8; ++mask) {
      const SourceSet sel(mask);
      for (int p = 0; p < m; ++p) {
        // Joint vector of state q over every signal profile of the selection.
        const auto joint = [&](int q) {
          std::vector<Rational> out{Rational(1)};
          for (int i : sel.members()) {
            std::vector<Rational> next;
            for (const Rational& a : out) {
              for (const Rational& b : raw.sources[i].likelihood[q]) next.push_back(a * b);
            }
            out = next;
          }
          return out;
        };
        StateSet expected;
        for (int q = 0; q < m; ++q) {
          if (joint(q) == joint(p)) expected.insert(q);
        }
        EXPECT_EQ(indist_intersection(v.map(), sel, p), expected);
      }
    }
  }
}

TEST(StructureTest, AcceptsArbitrarySetsAndRejectsSelf) {
  const std::vector<Rational> prior(3, Rational(1, 3));
  const std::vector<Rational> budgets(3, Rational(0));
  std::vector<StructuralSource> s{{Rational(1), {StateSet::of({1}), StateSet(), StateSet()}}};
  const ValidatedInstance v = validate_structure(StateSpace{}, prior, budgets, s);
  EXPECT_FALSE(v.has_likelihoods());
  EXPECT_EQ(v.map().distinguishable(0, 0), StateSet::of({1}));
  EXPECT_THROW(v.sources(), Error);
  s[0].distinguishable[2] = StateSet::of({2});
  EXPECT_THROW(validate_structure(StateSpace{}, prior, budgets, s), Error);
}

}  // namespace
}  // namespace blds
