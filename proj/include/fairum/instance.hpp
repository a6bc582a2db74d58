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

#ifndef FAIRUM_INSTANCE_HPP_
#define FAIRUM_INSTANCE_HPP_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace fairum {

using Value = std::int64_t;

// n agents x m goods with additive, non-negative integer valuations.
// Immutable after construction.
class Instance {
 public:
  // Rejects ragged rows, negative values, n == 0, and instances where
  // n * (row sum) does not fit in a Value.
  explicit Instance(const std::vector<std::vector<Value>>& valuations,
                    std::string name = {});

  int num_agents() const { return num_agents_; }
  int num_items() const { return num_items_; }

  Value value(int agent, int item) const;
  std::span<const Value> row(int agent) const;

  // u_i(O).
  Value total(int agent) const;
  // V: max over agents of the row sum.
  Value value_cap() const { return value_cap_; }

  const std::string& name() const { return name_; }

  std::vector<std::vector<Value>> rows() const;

  // True when a single item order is weakly decreasing for every agent.
  bool is_ordered() const;
  // Items sorted so that every agent's values are non-increasing; only
  // meaningful when is_ordered().
  std::vector<int> common_ranking() const;

  friend bool operator==(const Instance&, const Instance&) = default;

 private:
  int num_agents_ = 0;
  int num_items_ = 0;
  std::vector<Value> values_;  // row-major n x m
  std::vector<Value> totals_;
  Value value_cap_ = 0;
  std::string name_;
};

// owner[j] is the agent holding item j. Complete and disjoint by construction.
class Allocation {
 public:
  Allocation() = default;
  explicit Allocation(std::vector<int> owner) : owner_(std::move(owner)) {}

  int num_items() const { return static_cast<int>(owner_.size()); }
  int owner(int item) const { return owner_.at(static_cast<std::size_t>(item)); }
  const std::vector<int>& owners() const { return owner_; }

  std::vector<int> bundle(int agent) const;

  friend bool operator==(const Allocation&, const Allocation&) = default;
  friend auto operator<=>(const Allocation&, const Allocation&) = default;

 private:
  std::vector<int> owner_;
};

// Throws ContractError unless alloc has m entries, each in [0, n).
void validate(const Instance& inst, const Allocation& alloc);

enum class Criterion { kEF, kEF1, kEFx, kProp, kProp1, kPropX, kEQ, kEQ1, kEQx, kNone };

inline constexpr Criterion kAllCriteria[] = {
    Criterion::kEF,    Criterion::kEF1,  Criterion::kEFx,
    Criterion::kProp,  Criterion::kProp1, Criterion::kPropX,
    Criterion::kEQ,    Criterion::kEQ1,  Criterion::kEQx};

// Lower-case CLI spelling: "ef", "ef1", "efx", "prop", ..., "none".
std::string_view to_string(Criterion crit);
// Case-insensitive inverse of to_string; throws UsageError on unknown names.
Criterion parse_criterion(std::string_view text);

enum class SolveStatus { kFound, kInfeasible };

std::string_view to_string(SolveStatus status);

struct SolveStats {
  std::int64_t states_explored = 0;
  std::int64_t elapsed_ns = 0;
  // Distinct states at levels 1..m (empty for engines without levels).
  std::vector<std::int64_t> states_per_level;
};

struct SolveOutcome {
  SolveStatus status = SolveStatus::kInfeasible;
  std::optional<Allocation> allocation;  // present iff kFound
  Value welfare = 0;
  SolveStats stats;

  bool found() const { return status == SolveStatus::kFound; }
};

Value bundle_value(const Instance& inst, int agent, std::span<const int> bundle);

Value welfare(const Instance& inst, const Allocation& alloc);

// Maximum utilitarian welfare: each item to a highest-value agent, ties to
// the lowest index.
std::pair<Value, Allocation> um_welfare(const Instance& inst);

// Exact evaluation of the fairness notion; kNone throws UsageError.
bool is_fair(const Instance& inst, const Allocation& alloc, Criterion crit);

}  // namespace fairum

#endif  // FAIRUM_INSTANCE_HPP_
