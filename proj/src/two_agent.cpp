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

#include "fairum/two_agent.hpp"

#include <string>

#include "fairum/errors.hpp"

namespace fairum {

namespace {

constexpr int kAlice = 0;
constexpr int kBob = 1;

}  // namespace

TwoAgentView make_two_agent_view(const Instance& inst) {
  TwoAgentView view;
  view.delta.reserve(static_cast<std::size_t>(inst.num_items()));
  for (int j = 0; j < inst.num_items(); ++j) {
    const Value d = inst.value(kBob, j) - inst.value(kAlice, j);
    view.delta.push_back(d);
    if (d == 0) view.eq_items.push_back(j);
  }
  return view;
}

TwoAgentResult exists_um_and_fair_2(const Instance& inst, Criterion crit) {
  if (inst.num_agents() != 2) {
    throw UsageError("two-agent algorithm needs exactly 2 agents, got " +
                     std::to_string(inst.num_agents()));
  }
  if (crit != Criterion::kEF1 && crit != Criterion::kProp1 && crit != Criterion::kEQ1) {
    throw UsageError("two-agent algorithm supports ef1, prop1, eq1; got " +
                     std::string(to_string(crit)));
  }
  const TwoAgentView view = make_two_agent_view(inst);
  const int m = inst.num_items();

  std::vector<int> owner(static_cast<std::size_t>(m), kAlice);
  // own[i][k]: agent i's value for agent k's current bundle.
  Value own[2][2] = {{0, 0}, {0, 0}};
  auto give = [&](int item, int agent) {
    owner[static_cast<std::size_t>(item)] = agent;
    own[kAlice][agent] += inst.value(kAlice, item);
    own[kBob][agent] += inst.value(kBob, item);
  };

  for (int j = 0; j < m; ++j) {
    const Value d = view.delta[static_cast<std::size_t>(j)];
    if (d > 0) give(j, kBob);
    else if (d < 0) give(j, kAlice);
  }

  TwoAgentResult result;
  for (int item : view.eq_items) {
    TieStep step;
    step.item = item;
    if (crit == Criterion::kEQ1) {
      step.alice_behind = own[kAlice][kAlice] < own[kBob][kBob];
      step.bob_behind = own[kBob][kBob] < own[kAlice][kAlice];
    } else {
      step.alice_behind = own[kAlice][kAlice] < own[kAlice][kBob];
      step.bob_behind = own[kBob][kBob] < own[kBob][kAlice];
    }
    step.recipient = step.bob_behind && !step.alice_behind ? kBob : kAlice;
    give(item, step.recipient);
    result.trace.push_back(step);
  }

  Allocation alloc(std::move(owner));
  if (is_fair(inst, alloc, crit)) {
    result.answer = true;
    result.allocation = std::move(alloc);
  }
  return result;
}

}  // namespace fairum
