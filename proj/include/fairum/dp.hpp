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

// Pseudopolynomial dynamic programs for utilitarian-maximal allocations
// within a fairness notion.
//
// Items are processed in index order. A state after k items summarises a
// partial allocation by a vector of utility quantities t and a vector of
// tracked item references b; successors give item k to each agent in turn.
// Two state families exist:
//
//   per-agent  (PROP, PROP1, PROPx, EQ, EQ1, EQx): t_i = u_i(p(i)).
//   pairwise   (EF, EF1, EFx): t_{i,j} = u_i(p(i)) - u_i(p(j)), i != j,
//              laid out row-major over ordered pairs.
//
// Every level is kept so the optimal final state can be traced back to an
// allocation.

#ifndef FAIRUM_DP_HPP_
#define FAIRUM_DP_HPP_

#include <chrono>
#include <cstdint>
#include <optional>
#include <vector>

#include "fairum/instance.hpp"

namespace fairum {

struct DpOptions {
  // Checked periodically; TimeoutError once passed.
  std::optional<std::chrono::steady_clock::time_point> deadline;
  // Total distinct states over all levels; 0 means unlimited. ResourceError
  // once exceeded.
  std::int64_t max_states = 0;
  // EF1/EFx on instances where all agents rank the items the same way keep a
  // single reference per bundle instead of one per ordered pair.
  bool ordered_fast_path = true;
};

// Decoded state. b holds item indices; num_items() encodes "no item".
struct DpState {
  std::vector<Value> t;
  std::vector<int> b;

  friend bool operator==(const DpState&, const DpState&) = default;
};

struct DpSolution {
  SolveOutcome outcome;
  std::optional<DpState> final_state;  // present iff found
  bool ordered_mode = false;
};

bool is_peragent_criterion(Criterion crit);
bool is_pairwise_criterion(Criterion crit);

SolveOutcome solve_um_within_peragent(const Instance& inst, Criterion crit,
                                      const DpOptions& options = {});
SolveOutcome solve_um_within_pairwise(const Instance& inst, Criterion crit,
                                      const DpOptions& options = {});

// Routes to the matching family; kNone returns um_welfare.
SolveOutcome solve_um_within(const Instance& inst, Criterion crit,
                             const DpOptions& options = {});

// Same as solve_um_within for fairness criteria, keeping the final state.
DpSolution solve_dp(const Instance& inst, Criterion crit, const DpOptions& options = {});

// Applies the transition rules along alloc from the empty state.
DpState replay_state(const Instance& inst, Criterion crit, const Allocation& alloc,
                     bool ordered_mode);

// Largest number of distinct states a single level can hold for crit:
//   (V+1)^n for PROP/EQ, (V+1)^n (m+1)^n for PROP1/PROPx/EQ1/EQx,
//   (2V+1)^{n(n-1)} for EF, (2V+1)^{n(n-1)} (m+1)^{n(n-1)} for EF1/EFx.
long double state_bound_per_level(const Instance& inst, Criterion crit);

struct Decision {
  bool answer = false;
  Value w0 = 0;
  std::optional<Value> w1;  // empty when no allocation meets crit
  bool two_agent_path = false;
};

// answer == (w0 == w1), where w0 is the unconstrained optimum and w1 the
// optimum within crit. Two-agent EF1/PROP1/EQ1 queries use the polynomial
// algorithm for the answer.
Decision decide_exists_um_and_fair(const Instance& inst, Criterion crit,
                                   const DpOptions& options = {});

}  // namespace fairum

#endif  // FAIRUM_DP_HPP_
