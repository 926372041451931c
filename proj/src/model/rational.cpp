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


#include "blds/rational.hpp"

#include <cctype>
#include <limits>

#include "blds/errors.hpp"

namespace blds {

namespace {

BigInt parse_integer(std::string_view text, std::string_view whole) {
  std::size_t pos = 0;
  bool negative = false;
  if (pos < text.size() && (text[pos] == '-' || text[pos] == '+')) {
    negative = text[pos] == '-';
    ++pos;
  }
  if (pos == text.size()) {
    throw Error(ErrorCode::kParse, "malformed rational '" + std::string(whole) + "'");
  }
  BigInt value = 0;
  for (; pos < text.size(); ++pos) {
    if (!std::isdigit(static_cast<unsigned char>(text[pos]))) {
      throw Error(ErrorCode::kParse, "malformed rational '" + std::string(whole) + "'");
    }
    value = value * 10 + (text[pos] - '0');
  }
  return negative ? BigInt(-value) : value;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const std::string_view whole = trim(text);
  const auto slash = whole.find('/');
  if (slash == std::string_view::npos) return Rational(parse_integer(whole, whole));
  const BigInt num = parse_integer(trim(whole.substr(0, slash)), whole);
  const BigInt den = parse_integer(trim(whole.substr(slash + 1)), whole);
  if (den == 0) throw Error(ErrorCode::kParse, "zero denominator in '" + std::string(whole) + "'");
  return Rational(num, den);
}

std::string to_string(const Rational& value) {
  const BigInt& num = boost::multiprecision::numerator(value);
  const BigInt& den = boost::multiprecision::denominator(value);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

double to_double(const Rational& value) { return value.convert_to<double>(); }

std::int64_t to_int64(const BigInt& value) {
  if (value > std::numeric_limits<std::int64_t>::max() ||
      value < std::numeric_limits<std::int64_t>::min()) {
    throw Error(ErrorCode::kTooLarge, "integer " + value.str() + " exceeds 64 bits");
  }
  return value.convert_to<std::int64_t>();
}

BigInt lcm(const BigInt& a, const BigInt& b) {
  if (a == 0 || b == 0) return 0;
  return boost::multiprecision::abs(a / boost::multiprecision::gcd(a, b) * b);
}

}  // namespace blds
