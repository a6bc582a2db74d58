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

#include "fairum/generators.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numeric>
#include <string>

#include "fairum/errors.hpp"

namespace fairum {

namespace {

std::string format_double(double x) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

Value sum_of(const std::vector<Value>& xs) {
  Value s = 0;
  for (Value x : xs) {
    if (__builtin_add_overflow(s, x, &s)) throw InputError("payload sum overflows");
  }
  return s;
}

void require_non_negative(const std::vector<Value>& xs, const char* what) {
  for (Value x : xs) {
    if (x < 0) throw InputError(std::string(what) + " must be non-negative");
  }
}

Value partition_half(const std::vector<Value>& numbers) {
  if (numbers.empty()) throw InputError("Partition payload must not be empty");
  require_non_negative(numbers, "Partition numbers");
  const Value total = sum_of(numbers);
  if (total % 2 != 0) {
    throw InputError("Partition payload must sum to an even 2W, got " + std::to_string(total));
  }
  return total / 2;
}

using Rows = std::vector<std::vector<Value>>;

Instance partition_ef1(const std::vector<Value>& a) {
  const Value w = partition_half(a);
  Rows rows(3);
  for (std::size_t i = 0; i < a.size(); ++i) {
    rows[0].push_back(0);
    rows[1].push_back(a[i]);
    rows[2].push_back(a[i]);
  }
  for (Value x : {w, 2 * w, 6 * w, 7 * w}) rows[0].push_back(x);
  for (int agent = 1; agent <= 2; ++agent) {
    for (Value x : {3 * w, 3 * w, 4 * w, 4 * w}) rows[agent].push_back(x);
  }
  return Instance(rows, "partition-ef1-3agents");
}

Instance partition_prop1(const std::vector<Value>& a) {
  const Value w = partition_half(a);
  Rows rows(3);
  for (std::size_t i = 0; i < a.size(); ++i) {
    rows[0].push_back(0);
    rows[1].push_back(a[i]);
    rows[2].push_back(a[i]);
  }
  for (Value x : {2 * w, 2 * w, 5 * w, 5 * w, 5 * w, 5 * w}) rows[0].push_back(x);
  for (int agent = 1; agent <= 2; ++agent) {
    for (Value x : {3 * w, 3 * w, 4 * w, 4 * w, 4 * w, 4 * w}) rows[agent].push_back(x);
  }
  return Instance(rows, "partition-prop1-3agents");
}

Instance partition_efx(const std::vector<Value>& a) {
  partition_half(a);
  Rows rows(2);
  for (Value x : a) {
    rows[0].push_back(10 * x);
    rows[1].push_back(10 * x);
  }
  rows[0].insert(rows[0].end(), {2, 1});
  rows[1].insert(rows[1].end(), {1, 2});
  return Instance(rows, "partition-efx-2agents");
}

// Returns the number of triplets after checking T/4 < a_j < T/2 and
// sum = (number of triplets) * T.
Value check_three_partition(const std::vector<Value>& a, Value target) {
  if (a.empty() || a.size() % 3 != 0) {
    throw InputError("3-Partition payload size must be a positive multiple of 3, got " +
                     std::to_string(a.size()));
  }
  if (target <= 0) throw InputError("3-Partition target T must be positive");
  for (Value x : a) {
    if (!(4 * x > target)) {
      throw InputError("3-Partition bound T/4 < a_j violated by a_j=" + std::to_string(x) +
                       " with T=" + std::to_string(target));
    }
    if (!(2 * x < target)) {
      throw InputError("3-Partition bound a_j < T/2 violated by a_j=" + std::to_string(x) +
                       " with T=" + std::to_string(target));
    }
  }
  const auto triplets = static_cast<Value>(a.size() / 3);
  if (sum_of(a) != triplets * target) {
    throw InputError("3-Partition payload must sum to m*T = " +
                     std::to_string(triplets * target));
  }
  return triplets;
}

Instance three_partition_ef1(const std::vector<Value>& a, Value target) {
  const Value m = check_three_partition(a, target);
  // Last agent's big items are worth (m/2 + 1) T = (m+2) T / 2.
  const Value scale = ((m + 2) * target) % 2 == 0 ? 1 : 2;
  const Value big = (m + 2) * target * scale / 2;
  Rows rows(static_cast<std::size_t>(m) + 1);
  for (Value agent = 0; agent < m; ++agent) {
    auto& row = rows[static_cast<std::size_t>(agent)];
    for (Value x : a) row.push_back(x * scale);
    row.insert(row.end(), {target * scale, target * scale});
  }
  auto& last = rows.back();
  last.assign(a.size(), 0);
  last.insert(last.end(), {big, big});
  return Instance(rows, "3partition-ef1");
}

Instance three_partition_prop1(const std::vector<Value>& a, Value target) {
  const Value m = check_three_partition(a, target);
  // Last agent's extra items are worth (1 + m/(m+2)) T = (2m+2) T / (m+2).
  const Value numerator = (2 * m + 2) * target;
  const Value scale = (m + 2) / std::gcd(numerator, m + 2);
  const Value big = numerator * scale / (m + 2);
  const Value extras = m + 2;
  Rows rows(static_cast<std::size_t>(m) + 1);
  for (Value agent = 0; agent < m; ++agent) {
    auto& row = rows[static_cast<std::size_t>(agent)];
    for (Value x : a) row.push_back(x * scale);
    row.insert(row.end(), static_cast<std::size_t>(extras), target * scale);
  }
  auto& last = rows.back();
  last.assign(a.size(), 0);
  last.insert(last.end(), static_cast<std::size_t>(extras), big);
  return Instance(rows, "3partition-prop1");
}

Instance knapsack_prop1(const std::vector<KnapsackItem>& items, Value target) {
  if (items.empty()) throw InputError("Knapsack payload must not be empty");
  if (target < 0) throw InputError("Knapsack capacity T must be non-negative");
  Value total_weight = 0;
  Value total_value = 0;
  Value max_weight = 0;
  for (const auto& it : items) {
    if (it.value < 0 || it.weight < 0) {
      throw InputError("Knapsack values and weights must be non-negative");
    }
    total_weight += it.weight;
    total_value += it.value;
    max_weight = std::max(max_weight, it.weight);
  }
  const Value W = total_weight;
  const Value V = total_value;
  const Value T = target;
  const Value ws = max_weight;
  Rows rows(2);
  for (const auto& it : items) {
    rows[0].push_back(it.weight);
    rows[1].push_back(it.weight + it.value);
  }
  if (2 * T >= W) {
    rows[0].insert(rows[0].end(), {2 * T - W + ws, ws});
    rows[1].insert(rows[1].end(), {2 * T + V + ws, W + V + ws});
  } else {
    const Value base = W - 2 * T;
    rows[0].insert(rows[0].end(), {base + 2 * ws, base + ws, base + ws});
    rows[1].insert(rows[1].end(), {base + 2 * ws + V, base + ws + V, base + ws + V});
  }
  return Instance(rows, "knapsack-prop1-2agents");
}

}  // namespace

std::vector<int> sample_mallows_ranking(int m, double phi, SplitMix64& rng) {
  std::vector<int> ranking;
  ranking.reserve(static_cast<std::size_t>(std::max(m, 0)));
  std::vector<double> weight;
  for (int item = 0; item < m; ++item) {
    // weight[d] = phi^d for d = 0..item; d = 0 appends at the bottom.
    weight.assign(static_cast<std::size_t>(item) + 1, 0.0);
    double total = 0.0;
    double w = 1.0;
    for (int d = 0; d <= item; ++d) {
      weight[static_cast<std::size_t>(d)] = w;
      total += w;
      w *= phi;
    }
    const double r = rng.uniform01() * total;
    int inversions = 0;
    double acc = weight[0];
    while (r >= acc && inversions < item) {
      ++inversions;
      acc += weight[static_cast<std::size_t>(inversions)];
    }
    // Skip trailing zero-weight slots reached through rounding.
    while (inversions > 0 && weight[static_cast<std::size_t>(inversions)] == 0.0) --inversions;
    ranking.insert(ranking.begin() + (item - inversions), item);
  }
  return ranking;
}

Instance gen_mallows_borda(const MallowsConfig& cfg) {
  if (cfg.n < 1) throw InputError("Mallows generator needs n >= 1");
  if (cfg.m < 0) throw InputError("Mallows generator needs m >= 0");
  if (!(cfg.phi >= 0.0 && cfg.phi <= 1.0)) {
    throw InputError("Mallows dispersion phi must lie in [0, 1]");
  }
  SplitMix64 rng(cfg.seed);
  std::vector<std::vector<Value>> rows;
  rows.reserve(static_cast<std::size_t>(cfg.n));
  for (int agent = 0; agent < cfg.n; ++agent) {
    const auto ranking = sample_mallows_ranking(cfg.m, cfg.phi, rng);
    std::vector<Value> row(static_cast<std::size_t>(cfg.m), 0);
    for (int pos = 0; pos < cfg.m; ++pos) {
      row[static_cast<std::size_t>(ranking[static_cast<std::size_t>(pos)])] = cfg.m - 1 - pos;
    }
    rows.push_back(std::move(row));
  }
  return Instance(rows, "mallows-n" + std::to_string(cfg.n) + "-m" + std::to_string(cfg.m) +
                            "-phi" + format_double(cfg.phi) + "-seed" +
                            std::to_string(cfg.seed));
}

Instance gen_uniform(int n, int m, Value vmax, std::uint64_t seed) {
  if (n < 1) throw InputError("uniform generator needs n >= 1");
  if (m < 0) throw InputError("uniform generator needs m >= 0");
  if (vmax < 0) throw InputError("uniform generator needs vmax >= 0");
  SplitMix64 rng(seed);
  std::vector<std::vector<Value>> rows(static_cast<std::size_t>(n));
  for (auto& row : rows) {
    for (int j = 0; j < m; ++j) row.push_back(rng.uniform_int(0, vmax));
  }
  return Instance(rows, "uniform-n" + std::to_string(n) + "-m" + std::to_string(m) + "-v" +
                            std::to_string(vmax) + "-seed" + std::to_string(seed));
}

std::string_view to_string(ReductionKind kind) {
  switch (kind) {
    case ReductionKind::kPartitionEF1ThreeAgents: return "partition-ef1-3agents";
    case ReductionKind::kPartitionProp1ThreeAgents: return "partition-prop1-3agents";
    case ReductionKind::kPartitionEFxTwoAgents: return "partition-efx-2agents";
    case ReductionKind::kThreePartitionEF1: return "3partition-ef1";
    case ReductionKind::kThreePartitionProp1: return "3partition-prop1";
    case ReductionKind::kKnapsackProp1TwoAgents: return "knapsack-prop1-2agents";
  }
  return "?";
}

ReductionKind parse_reduction_kind(std::string_view text) {
  for (auto kind : {ReductionKind::kPartitionEF1ThreeAgents,
                    ReductionKind::kPartitionProp1ThreeAgents,
                    ReductionKind::kPartitionEFxTwoAgents, ReductionKind::kThreePartitionEF1,
                    ReductionKind::kThreePartitionProp1,
                    ReductionKind::kKnapsackProp1TwoAgents}) {
    if (to_string(kind) == text) return kind;
  }
  throw UsageError("unknown reduction kind '" + std::string(text) + "'");
}

Instance gen_reduction(const ReductionSpec& spec) {
  switch (spec.kind) {
    case ReductionKind::kPartitionEF1ThreeAgents: return partition_ef1(spec.numbers);
    case ReductionKind::kPartitionProp1ThreeAgents: return partition_prop1(spec.numbers);
    case ReductionKind::kPartitionEFxTwoAgents: return partition_efx(spec.numbers);
    case ReductionKind::kThreePartitionEF1:
      return three_partition_ef1(spec.numbers, spec.target);
    case ReductionKind::kThreePartitionProp1:
      return three_partition_prop1(spec.numbers, spec.target);
    case ReductionKind::kKnapsackProp1TwoAgents:
      return knapsack_prop1(spec.knapsack, spec.target);
  }
  throw UsageError("unknown reduction kind");
}

}  // namespace fairum
