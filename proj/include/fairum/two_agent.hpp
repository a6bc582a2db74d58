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

#ifndef FAIRUM_TWO_AGENT_HPP_
#define FAIRUM_TWO_AGENT_HPP_

#include <optional>
#include <vector>

#include "fairum/instance.hpp"

namespace fairum {

// Alice is agent 0, Bob is agent 1. delta[j] = u_B(j) - u_A(j); eq_items
// lists the items with delta == 0 in ascending index order.
struct TwoAgentView {
  std::vector<Value> delta;
  std::vector<int> eq_items;
};

TwoAgentView make_two_agent_view(const Instance& inst);

// One iteration of the tie-item loop, recorded for inspection.
struct TieStep {
  int item = 0;
  int recipient = 0;
  bool alice_behind = false;  // envious (EF1/PROP1) or strictly poorer (EQ1)
  bool bob_behind = false;
};

struct TwoAgentResult {
  bool answer = false;
  std::optional<Allocation> allocation;  // present iff answer
  std::vector<TieStep> trace;
};

// Decides whether some utilitarian-maximal allocation satisfies crit
// (kEF1, kProp1 or kEQ1) for a two-agent instance, returning one if so.
// Throws UsageError when n != 2 or crit is unsupported.
TwoAgentResult exists_um_and_fair_2(const Instance& inst, Criterion crit);

}  // namespace fairum

#endif  // FAIRUM_TWO_AGENT_HPP_
