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

#ifndef FAIRUM_GENERATORS_HPP_
#define FAIRUM_GENERATORS_HPP_

#include <cstdint>
#include <string_view>
#include <vector>

#include "fairum/instance.hpp"
#include "fairum/rng.hpp"

namespace fairum {

struct MallowsConfig {
  int n = 1;
  int m = 0;
  double phi = 1.0;  // dispersion in [0, 1]
  std::uint64_t seed = 0;
};

// Ranking of items 0..m-1 (best first) drawn from the Mallows model around
// the identity ranking with repeated insertion: item i is inserted so that
// it lands above d of the i items already placed with probability
// proportional to phi^d.
std::vector<int> sample_mallows_ranking(int m, double phi, SplitMix64& rng);

// One independent Mallows ranking per agent, converted to Borda utilities
// m-1, m-2, ..., 0 along the ranking. A single generator stream seeded with
// cfg.seed is consumed agent by agent.
Instance gen_mallows_borda(const MallowsConfig& cfg);

// I.i.d. valuations uniform on [0, vmax], row-major draws.
Instance gen_uniform(int n, int m, Value vmax, std::uint64_t seed);

// Hardness-reduction constructions, usable as adversarial fixtures.
enum class ReductionKind {
  kPartitionEF1ThreeAgents,    // m+4 items, Alice/Bob/Chana
  kPartitionProp1ThreeAgents,  // m+6 items
  kPartitionEFxTwoAgents,      // m+2 items
  kThreePartitionEF1,          // m+1 agents, 3m+2 items
  kThreePartitionProp1,        // m+1 agents, 4m+2 items
  kKnapsackProp1TwoAgents,     // m+2 or m+3 items depending on T vs W/2
};

std::string_view to_string(ReductionKind kind);
ReductionKind parse_reduction_kind(std::string_view text);

struct KnapsackItem {
  Value value = 0;
  Value weight = 0;
};

struct ReductionSpec {
  ReductionKind kind = ReductionKind::kPartitionEF1ThreeAgents;
  std::vector<Value> numbers;          // Partition / 3-Partition multiset
  Value target = 0;                    // 3-Partition T, Knapsack capacity T
  std::vector<KnapsackItem> knapsack;  // Knapsack elements
};

// Throws InputError naming the violated payload bound. 3-Partition tables
// with fractional entries are scaled by the smallest integer that clears
// the denominators.
Instance gen_reduction(const ReductionSpec& spec);

}  // namespace fairum

#endif  // FAIRUM_GENERATORS_HPP_
