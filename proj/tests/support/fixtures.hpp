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

// Shared instances and random generators for the test binaries.

#ifndef FAIRUM_TESTS_FIXTURES_HPP_
#define FAIRUM_TESTS_FIXTURES_HPP_

#include <cstdint>
#include <vector>

#include "fairum/generators.hpp"
#include "fairum/instance.hpp"
#include "fairum/rng.hpp"

namespace fairum::testing {

using Matrix = std::vector<std::vector<Value>>;

// Two identical agents, one item worth 4 and six worth 1.
inline Instance heavy_item_instance() {
  const std::vector<Value> row = {4, 1, 1, 1, 1, 1, 1};
  return Instance({row, row}, "heavy-item");
}

// Alice holds the 4-item, Bob the six 1-items.
inline Allocation heavy_item_allocation() { return Allocation({0, 1, 1, 1, 1, 1, 1}); }

inline Instance two_by_four() { return Instance({{5, 2, 3, 3}, {3, 4, 3, 3}}); }

inline Instance alice_heavy() { return Instance({{5, 5}, {1, 1}}); }

// Uniform values in [0, vmax] or Mallows-Borda, chosen by the stream.
inline Instance random_instance(SplitMix64& rng, int n, int m, Value vmax = 10) {
  if (rng.uniform_int(0, 1) == 0) {
    return gen_uniform(n, m, vmax, rng.next());
  }
  return gen_mallows_borda({n, m, rng.uniform01(), rng.next()});
}

inline Allocation random_allocation(SplitMix64& rng, int n, int m) {
  std::vector<int> owner(static_cast<std::size_t>(m));
  for (auto& o : owner) o = static_cast<int>(rng.uniform_int(0, n - 1));
  return Allocation(std::move(owner));
}

// Calls f(alloc) for all n^m owner vectors, item 0 least significant.
template <typename F>
void for_each_allocation(int n, int m, F&& f) {
  std::vector<int> owner(static_cast<std::size_t>(m), 0);
  while (true) {
    f(Allocation(owner));
    int j = 0;
    while (j < m && ++owner[static_cast<std::size_t>(j)] == n) owner[static_cast<std::size_t>(j++)] = 0;
    if (j == m) return;
  }
}

}  // namespace fairum::testing

#endif  // FAIRUM_TESTS_FIXTURES_HPP_
