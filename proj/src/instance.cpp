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

#include "fairum/instance.hpp"

#include <algorithm>
#include <cctype>
#include <limits>
#include <numeric>
#include <string>

#include "fairum/errors.hpp"

namespace fairum {

Instance::Instance(const std::vector<std::vector<Value>>& valuations,
                   std::string name)
    : name_(std::move(name)) {
  if (valuations.empty()) {
    throw InputError("instance needs at least one agent");
  }
  if (valuations.size() > static_cast<std::size_t>(std::numeric_limits<int>::max())) {
    throw InputError("too many agents");
  }
  num_agents_ = static_cast<int>(valuations.size());
  num_items_ = static_cast<int>(valuations.front().size());
  values_.reserve(static_cast<std::size_t>(num_agents_) *
                  static_cast<std::size_t>(num_items_));
  for (std::size_t i = 0; i < valuations.size(); ++i) {
    const auto& row = valuations[i];
    if (static_cast<int>(row.size()) != num_items_) {
      throw InputError("valuation row " + std::to_string(i) + " has " +
                       std::to_string(row.size()) + " entries, expected " +
                       std::to_string(num_items_));
    }
    Value sum = 0;
    for (std::size_t j = 0; j < row.size(); ++j) {
      if (row[j] < 0) {
        throw InputError("negative valuation at agent " + std::to_string(i) +
                         ", item " + std::to_string(j));
      }
      if (__builtin_add_overflow(sum, row[j], &sum)) {
        throw ResourceError("row sum of agent " + std::to_string(i) +
                            " overflows 64-bit integers");
      }
      values_.push_back(row[j]);
    }
    Value scaled = 0;
    if (__builtin_mul_overflow(sum, static_cast<Value>(num_agents_), &scaled)) {
      throw ResourceError("n * u_i(O) overflows 64-bit integers for agent " +
                          std::to_string(i));
    }
    totals_.push_back(sum);
    value_cap_ = std::max(value_cap_, sum);
  }
}

Value Instance::value(int agent, int item) const {
  if (agent < 0 || agent >= num_agents_) {
    throw ContractError("agent index " + std::to_string(agent) + " out of range");
  }
  if (item < 0 || item >= num_items_) {
    throw ContractError("item index " + std::to_string(item) + " out of range");
  }
  return values_[static_cast<std::size_t>(agent) * static_cast<std::size_t>(num_items_) +
                 static_cast<std::size_t>(item)];
}

std::span<const Value> Instance::row(int agent) const {
  if (agent < 0 || agent >= num_agents_) {
    throw ContractError("agent index " + std::to_string(agent) + " out of range");
  }
  return std::span<const Value>(values_).subspan(
      static_cast<std::size_t>(agent) * static_cast<std::size_t>(num_items_),
      static_cast<std::size_t>(num_items_));
}

Value Instance::total(int agent) const {
  if (agent < 0 || agent >= num_agents_) {
    throw ContractError("agent index " + std::to_string(agent) + " out of range");
  }
  return totals_[static_cast<std::size_t>(agent)];
}

std::vector<std::vector<Value>> Instance::rows() const {
  std::vector<std::vector<Value>> out;
  out.reserve(static_cast<std::size_t>(num_agents_));
  for (int i = 0; i < num_agents_; ++i) {
    auto r = row(i);
    out.emplace_back(r.begin(), r.end());
  }
  return out;
}

std::vector<int> Instance::common_ranking() const {
  std::vector<int> order(static_cast<std::size_t>(num_items_));
  std::iota(order.begin(), order.end(), 0);
  // Lexicographically descending value vectors; a linear extension of
  // componentwise dominance whenever one exists.
  std::stable_sort(order.begin(), order.end(), [this](int a, int b) {
    for (int i = 0; i < num_agents_; ++i) {
      const Value va = value(i, a);
      const Value vb = value(i, b);
      if (va != vb) return va > vb;
    }
    return false;
  });
  return order;
}

bool Instance::is_ordered() const {
  const auto order = common_ranking();
  for (int i = 0; i < num_agents_; ++i) {
    for (std::size_t k = 1; k < order.size(); ++k) {
      if (value(i, order[k]) > value(i, order[k - 1])) return false;
    }
  }
  return true;
}

std::vector<int> Allocation::bundle(int agent) const {
  std::vector<int> items;
  for (int j = 0; j < num_items(); ++j) {
    if (owner_[static_cast<std::size_t>(j)] == agent) items.push_back(j);
  }
  return items;
}

void validate(const Instance& inst, const Allocation& alloc) {
  if (alloc.num_items() != inst.num_items()) {
    throw ContractError("allocation covers " + std::to_string(alloc.num_items()) +
                        " items, instance has " + std::to_string(inst.num_items()));
  }
  for (int j = 0; j < alloc.num_items(); ++j) {
    const int a = alloc.owner(j);
    if (a < 0 || a >= inst.num_agents()) {
      throw ContractError("item " + std::to_string(j) + " assigned to invalid agent " +
                          std::to_string(a));
    }
  }
}

std::string_view to_string(Criterion crit) {
  switch (crit) {
    case Criterion::kEF: return "ef";
    case Criterion::kEF1: return "ef1";
    case Criterion::kEFx: return "efx";
    case Criterion::kProp: return "prop";
    case Criterion::kProp1: return "prop1";
    case Criterion::kPropX: return "propx";
    case Criterion::kEQ: return "eq";
    case Criterion::kEQ1: return "eq1";
    case Criterion::kEQx: return "eqx";
    case Criterion::kNone: return "none";
  }
  return "?";
}

Criterion parse_criterion(std::string_view text) {
  std::string lower(text);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  for (Criterion c : kAllCriteria) {
    if (to_string(c) == lower) return c;
  }
  if (lower == "none") return Criterion::kNone;
  throw UsageError("unknown fairness criterion '" + std::string(text) + "'");
}

std::string_view to_string(SolveStatus status) {
  return status == SolveStatus::kFound ? "found" : "infeasible";
}

Value bundle_value(const Instance& inst, int agent, std::span<const int> bundle) {
  const auto values = inst.row(agent);
  Value sum = 0;
  for (int item : bundle) {
    if (item < 0 || item >= inst.num_items()) {
      throw ContractError("item index " + std::to_string(item) + " out of range");
    }
    sum += values[static_cast<std::size_t>(item)];
  }
  return sum;
}

Value welfare(const Instance& inst, const Allocation& alloc) {
  validate(inst, alloc);
  Value sum = 0;
  for (int j = 0; j < inst.num_items(); ++j) sum += inst.value(alloc.owner(j), j);
  return sum;
}

std::pair<Value, Allocation> um_welfare(const Instance& inst) {
  std::vector<int> owner(static_cast<std::size_t>(inst.num_items()), 0);
  Value sum = 0;
  for (int j = 0; j < inst.num_items(); ++j) {
    int best = 0;
    for (int i = 1; i < inst.num_agents(); ++i) {
      if (inst.value(i, j) > inst.value(best, j)) best = i;
    }
    owner[static_cast<std::size_t>(j)] = best;
    sum += inst.value(best, j);
  }
  return {sum, Allocation(std::move(owner))};
}

namespace {

struct BundleSummary {
  Value value = 0;
  std::optional<Value> max_item;
  std::optional<Value> min_item;

  void add(Value v) {
    value += v;
    max_item = max_item ? std::max(*max_item, v) : v;
    min_item = min_item ? std::min(*min_item, v) : v;
  }
};

}  // namespace

bool is_fair(const Instance& inst, const Allocation& alloc, Criterion crit) {
  if (crit == Criterion::kNone) {
    throw UsageError("is_fair needs a fairness criterion, got none");
  }
  validate(inst, alloc);
  const int n = inst.num_agents();
  const int m = inst.num_items();
  const auto nn = static_cast<std::size_t>(n);

  // seen[i][j]: agent i's view of agent j's bundle.
  std::vector<BundleSummary> seen(nn * nn);
  // outside[i]: agent i's view of all items it does not own.
  std::vector<BundleSummary> outside(nn);
  for (int j = 0; j < m; ++j) {
    const int holder = alloc.owner(j);
    for (int i = 0; i < n; ++i) {
      const Value v = inst.value(i, j);
      seen[static_cast<std::size_t>(i) * nn + static_cast<std::size_t>(holder)].add(v);
      if (i != holder) outside[static_cast<std::size_t>(i)].add(v);
    }
  }
  auto view = [&](int i, int j) -> const BundleSummary& {
    return seen[static_cast<std::size_t>(i) * nn + static_cast<std::size_t>(j)];
  };

  for (int i = 0; i < n; ++i) {
    const Value mine = view(i, i).value;
    const auto& out = outside[static_cast<std::size_t>(i)];
    const Value share = inst.total(i);
    switch (crit) {
      case Criterion::kProp:
        if (n * mine < share) return false;
        break;
      case Criterion::kProp1:
        if (n * (mine + out.max_item.value_or(0)) < share) return false;
        break;
      case Criterion::kPropX:
        if (out.min_item && n * (mine + *out.min_item) < share) return false;
        break;
      default:
        break;
    }
    for (int j = 0; j < n; ++j) {
      if (j == i) continue;
      const auto& theirs = view(i, j);
      const auto& own_j = view(j, j);
      switch (crit) {
        case Criterion::kEF:
          if (mine < theirs.value) return false;
          break;
        case Criterion::kEF1:
          if (mine < theirs.value - theirs.max_item.value_or(0)) return false;
          break;
        case Criterion::kEFx:
          if (theirs.min_item && mine < theirs.value - *theirs.min_item) return false;
          break;
        case Criterion::kEQ:
          if (mine != own_j.value) return false;
          break;
        case Criterion::kEQ1:
          if (mine < own_j.value - own_j.max_item.value_or(0)) return false;
          break;
        case Criterion::kEQx:
          if (own_j.min_item && mine < own_j.value - *own_j.min_item) return false;
          break;
        default:
          break;
      }
    }
  }
  return true;
}

}  // namespace fairum
