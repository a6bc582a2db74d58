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

#include "fairum/oracle.hpp"

#include <string>
#include <vector>

#include "fairum/errors.hpp"

namespace fairum {

namespace {

using Clock = std::chrono::steady_clock;

void check_budget(const Instance& inst, const OracleOptions& options) {
  std::int64_t count = 1;
  for (int j = 0; j < inst.num_items(); ++j) {
    if (__builtin_mul_overflow(count, static_cast<std::int64_t>(inst.num_agents()), &count) ||
        count > options.budget) {
      throw ResourceError("brute force needs " + std::to_string(inst.num_agents()) + "^" +
                          std::to_string(inst.num_items()) +
                          " allocations, over the budget of " +
                          std::to_string(options.budget));
    }
  }
}

// Visits owner vectors in mixed-radix order, item 0 least significant.
template <typename Visit>
void for_each_allocation(const Instance& inst, const OracleOptions& options, Visit&& visit) {
  check_budget(inst, options);
  const int n = inst.num_agents();
  const int m = inst.num_items();
  std::vector<int> owner(static_cast<std::size_t>(m), 0);
  std::uint64_t counter = 0;
  while (true) {
    if ((++counter & 4095) == 0 && options.deadline && Clock::now() > *options.deadline) {
      throw TimeoutError("brute force exceeded its time budget");
    }
    visit(owner);
    int j = 0;
    while (j < m && ++owner[static_cast<std::size_t>(j)] == n) {
      owner[static_cast<std::size_t>(j)] = 0;
      ++j;
    }
    if (j == m) break;
  }
}

struct Best {
  std::optional<Value> welfare;
  std::vector<int> owner;

  void offer(Value w, const std::vector<int>& candidate) {
    if (!welfare || w > *welfare || (w == *welfare && candidate < owner)) {
      welfare = w;
      owner = candidate;
    }
  }
};

Value direct_welfare(const Instance& inst, const std::vector<int>& owner) {
  Value sum = 0;
  for (std::size_t j = 0; j < owner.size(); ++j) {
    sum += inst.value(owner[j], static_cast<int>(j));
  }
  return sum;
}

}  // namespace

SolveOutcome brute_force_um_within(const Instance& inst, Criterion crit,
                                   const OracleOptions& options) {
  const auto start = Clock::now();
  Best best;
  std::int64_t visited = 0;
  for_each_allocation(inst, options, [&](const std::vector<int>& owner) {
    ++visited;
    if (crit != Criterion::kNone && !is_fair(inst, Allocation(owner), crit)) return;
    best.offer(direct_welfare(inst, owner), owner);
  });
  SolveOutcome out;
  out.stats.states_explored = visited;
  if (best.welfare) {
    out.status = SolveStatus::kFound;
    out.welfare = *best.welfare;
    out.allocation = Allocation(std::move(best.owner));
  }
  out.stats.elapsed_ns =
      std::chrono::duration_cast<std::chrono::nanoseconds>(Clock::now() - start).count();
  return out;
}

bool brute_force_decide(const Instance& inst, Criterion crit, const OracleOptions& options) {
  std::optional<Value> unconstrained;
  std::optional<Value> constrained;
  for_each_allocation(inst, options, [&](const std::vector<int>& owner) {
    const Value w = direct_welfare(inst, owner);
    if (!unconstrained || w > *unconstrained) unconstrained = w;
    if (crit == Criterion::kNone || is_fair(inst, Allocation(owner), crit)) {
      if (!constrained || w > *constrained) constrained = w;
    }
  });
  return constrained && *constrained == *unconstrained;
}

}  // namespace fairum
