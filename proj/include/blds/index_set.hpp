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

#include <bit>
#include <cassert>
#include <cstdint>
#include <vector>

namespace blds {

// States and sources are dense indices; every set over them is a 64-bit
// mask, which caps both m and n at 64.
inline constexpr int kMaxIndex = 64;

template <class Tag>
class IndexSet {
 public:
  constexpr IndexSet() = default;
  constexpr explicit IndexSet(std::uint64_t bits) : bits_(bits) {}

  static constexpr IndexSet single(int i) {
    assert(i >= 0 && i < kMaxIndex);
    return IndexSet(std::uint64_t{1} << i);
  }
  // {0, ..., count-1}
  static constexpr IndexSet first(int count) {
    assert(count >= 0 && count <= kMaxIndex);
    return IndexSet(count == kMaxIndex ? ~std::uint64_t{0}
                                       : (std::uint64_t{1} << count) - 1);
  }
  static IndexSet of(const std::vector<int>& members) {
    IndexSet s;
    for (int i : members) s.insert(i);
    return s;
  }

  constexpr std::uint64_t bits() const { return bits_; }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr int size() const { return std::popcount(bits_); }
  constexpr bool contains(int i) const { return (bits_ >> i) & 1U; }
  constexpr void insert(int i) { bits_ |= std::uint64_t{1} << i; }
  constexpr void erase(int i) { bits_ &= ~(std::uint64_t{1} << i); }
  constexpr IndexSet with(int i) const { return IndexSet(bits_ | (std::uint64_t{1} << i)); }
  constexpr bool subset_of(IndexSet other) const { return (bits_ & ~other.bits_) == 0; }
  // Complement relative to {0, ..., count-1}.
  constexpr IndexSet complement(int count) const { return IndexSet(~bits_ & first(count).bits_); }

  std::vector<int> members() const {
    std::vector<int> out;
    out.reserve(size());
    for (std::uint64_t b = bits_; b != 0; b &= b - 1) out.push_back(std::countr_zero(b));
    return out;
  }

  friend constexpr IndexSet operator|(IndexSet a, IndexSet b) { return IndexSet(a.bits_ | b.bits_); }
  friend constexpr IndexSet operator&(IndexSet a, IndexSet b) { return IndexSet(a.bits_ & b.bits_); }
  constexpr IndexSet& operator|=(IndexSet o) { bits_ |= o.bits_; return *this; }
  constexpr IndexSet& operator&=(IndexSet o) { bits_ &= o.bits_; return *this; }
  friend constexpr bool operator==(IndexSet, IndexSet) = default;
  friend constexpr auto operator<=>(IndexSet, IndexSet) = default;

 private:
  std::uint64_t bits_ = 0;
};

struct StateTag;
struct SourceTag;
using StateSet = IndexSet<StateTag>;
using SourceSet = IndexSet<SourceTag>;

}  // namespace blds
