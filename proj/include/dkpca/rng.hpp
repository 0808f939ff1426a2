// Copyright 2026 The dkpca authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//   http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>
#include <utility>
#include <vector>

namespace dkpca {

// SplitMix64 (Steele, Lea & Flood 2014; constants from Vigna's public-domain
// reference implementation). Every random choice in this project flows
// through this generator so that train/test splits reproduce bit-for-bit
// across machines and across reimplementations in other languages:
//
//   state += 0x9e3779b97f4a7c15
//   z = state
//   z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9
//   z = (z ^ (z >> 27)) * 0x94d049bb133111eb
//   return z ^ (z >> 31)
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // next() reduced modulo bound. The modulo bias is irrelevant here; what
  // matters is that the reduction is trivial to reproduce elsewhere.
  std::uint64_t next_below(std::uint64_t bound) { return next() % bound; }

 private:
  std::uint64_t state_;
};

// Sub-seed for repeat r of a run seeded with `seed`: the (r+1)-th output of
// SplitMix64(seed). Repeats are therefore independent streams that any
// implementation of the algorithm above can recreate.
inline std::uint64_t derive_subseed(std::uint64_t seed, std::uint64_t repeat) {
  SplitMix64 g(seed);
  std::uint64_t s = g.next();
  for (std::uint64_t i = 0; i < repeat; ++i) s = g.next();
  return s;
}

// In-place Fisher-Yates shuffle: for i = n-1 down to 1, swap v[i] with
// v[g.next_below(i+1)].
template <typename T>
void shuffle(std::vector<T>& v, SplitMix64& g) {
  for (std::size_t i = v.size(); i > 1; --i) {
    std::size_t j = static_cast<std::size_t>(g.next_below(i));
    std::swap(v[i - 1], v[j]);
  }
}

// FNV-1a 64-bit hash; used for config fingerprints embedded in reports.
inline std::uint64_t fnv1a64(std::string_view text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace dkpca
