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
#include <optional>

#include "blds/objective.hpp"
#include "blds/rational.hpp"
#include "blds/solvers.hpp"

namespace blds {

// A-posteriori multipliers of the optimal cost. Every bound that is
// present is at least 1. A bound is absent when its formula is undefined
// for the given trace (too few picks or a zero denominator).
struct BoundsReport {
  std::optional<double> bound_a;
  std::optional<double> bound_b;
  std::optional<double> bound_c;
  // Harmonic number H_M on the integer-scaled objective, and 1 + ln M.
  std::optional<double> bound_d;
  std::optional<double> bound_d_log;
  std::optional<double> fast_a;
  std::optional<double> fast_b;
  // M = max_j z'(j) on the integer-scaled objective.
  std::int64_t m_value = 0;
  std::int64_t scale = 1;
  // h_max / h_min, reported because the fast-greedy guarantee assumes it
  // grows at most polynomially in n.
  double cost_ratio = 1.0;
};

// 1 + ln max over sources i and iterations 1 <= zeta <= T-1 of
// z(i) / (z(I^zeta + i) - z(I^zeta)), restricted to positive denominators.
// Needs T >= 2.
std::optional<double> bound_ratio_a(const SolveTrace& trace, const CoverageFunction& z);

// 1 + ln [h_{j_T} z(j_1)] / [h_{j_1} (z(I^{T-1} + j_T) - z(I^{T-1}))].
std::optional<double> bound_ratio_b(const SolveTrace& trace, const CoverageFunction& z);

// 1 + ln (z([n]) - z(empty)) / (z([n]) - z(I^{T-1})).
std::optional<double> bound_ratio_c(const SolveTrace& trace, const CoverageFunction& z);

struct HarmonicBound {
  double harmonic = 1.0;   // sum_{i=1}^{M} 1/i
  double log_form = 1.0;   // 1 + ln M
  std::int64_t m_value = 0;
};

// Integer-objective bound. When every z'(j) is zero the greedy picks
// nothing and both forms are reported as 1.
HarmonicBound bound_ratio_d(const CoverageFunction& z);

// (1/(1-eps)) (1 + ln z([n]) / (z([n]) - z(I_f^{T-1}))). Needs T >= 1.
std::optional<double> fast_bound_a(const SolveTrace& trace, const CoverageFunction& z,
                                   const Rational& epsilon);

// (1/(1-eps)) (1 + ln z'([n])) on the integer-scaled objective.
double fast_bound_b(const CoverageFunction& z, const Rational& epsilon);

// Ceiling on the number of threshold levels of the fast greedy:
// ceil((ln(n/eps) + ln(h_max/h_min)) / -ln(1-eps)).
std::int64_t kmax(int n, double epsilon, double h_max, double h_min);

// Closed forms for the uniform family: 1 + 2 ln m + ln(m - R), and the same
// divided by 1 - eps.
double closed_form_greedy(int m, int r);
double closed_form_fast(int m, int r, double epsilon);

BoundsReport greedy_bounds(const SolveTrace& trace, const CoverageFunction& z);
BoundsReport fast_bounds(const SolveTrace& trace, const CoverageFunction& z, const Rational& epsilon);

}  // namespace blds
