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
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace blds {

// Exact arbitrary-precision rational; always kept in lowest terms with a
// positive denominator.
using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

// Parses "p", "p/q" or "-p/q". Throws Error(kParse) on malformed input or a
// zero denominator.
Rational parse_rational(std::string_view text);

// "p" for integers, "p/q" otherwise.
std::string to_string(const Rational& value);

double to_double(const Rational& value);

// Narrowing for values known to fit; throws Error(kTooLarge) otherwise.
std::int64_t to_int64(const BigInt& value);

BigInt lcm(const BigInt& a, const BigInt& b);

}  // namespace blds
