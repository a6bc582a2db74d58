// Copyright 2026 The fairum Authors
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

// SplitMix64, fixed bit-for-bit so generated instances are reproducible in
// any language:
//
//   state += 0x9e3779b97f4a7c15
//   z = state
//   z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9
//   z = (z ^ (z >> 27)) * 0x94d049bb133111eb
//   return z ^ (z >> 31)
//
// All arithmetic is modulo 2^64. Derived draws:
//   uniform01():        (next() >> 11) * 2^-53
//   uniform_int(lo,hi): r = hi - lo + 1; reject next() values below
//                       (2^64 - r) mod r; return lo + value mod r.

#ifndef FAIRUM_RNG_HPP_
#define FAIRUM_RNG_HPP_

#include <cstdint>

namespace fairum {

class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  // Inclusive range; lo <= hi.
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {
    const std::uint64_t range =
        static_cast<std::uint64_t>(hi) - static_cast<std::uint64_t>(lo) + 1;
    if (range == 0) return static_cast<std::int64_t>(next());  // full 64-bit span
    const std::uint64_t threshold = (0 - range) % range;
    std::uint64_t r = next();
    while (r < threshold) r = next();
    return static_cast<std::int64_t>(static_cast<std::uint64_t>(lo) + r % range);
  }

 private:
  std::uint64_t state_;
};

// Order-sensitive combination of a base seed with extra coordinates, using
// the SplitMix64 output function.
inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t coordinate) {
  return SplitMix64(base ^ (coordinate * 0xd1b54a32d192ed03ULL)).next();
}

}  // namespace fairum

#endif  // FAIRUM_RNG_HPP_
