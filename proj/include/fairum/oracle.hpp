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

// Exhaustive enumeration of all n^m allocations. Slow and obvious on
// purpose: it is the reference the other engines are tested against.

#ifndef FAIRUM_ORACLE_HPP_
#define FAIRUM_ORACLE_HPP_

#include <chrono>
#include <cstdint>
#include <optional>

#include "fairum/instance.hpp"

namespace fairum {

struct OracleOptions {
  // Maximum number of allocations to enumerate; ResourceError beyond it.
  std::int64_t budget = 10'000'000;
  std::optional<std::chrono::steady_clock::time_point> deadline;
};

// Maximum-welfare allocation among those passing is_fair (kNone admits all).
// Ties go to the lexicographically smallest owner vector.
SolveOutcome brute_force_um_within(const Instance& inst, Criterion crit,
                                   const OracleOptions& options = {});

// True iff the best welfare under crit equals the unconstrained best.
bool brute_force_decide(const Instance& inst, Criterion crit,
                        const OracleOptions& options = {});

}  // namespace fairum

#endif  // FAIRUM_ORACLE_HPP_
