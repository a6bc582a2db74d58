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

// MILP formulations of utilitarian-maximal allocation within PROP, EF,
// PROP1 and EF1, and a CPLEX-LP writer. Nothing is solved in-process.
//
// Variables:
//   assigned_{a}_{o}   binary, agent a receives item o
//   utility_{a}        continuous >= 0
//   nab_{a}_{o}        binary (PROP1), o is a's designated best item held by others
//   vnab_{a}           continuous >= 0 (PROP1), value of that item
//   nab_{i}_{j}_{o}    binary (EF1), over all i, j in N
//   vnab_{i}_{j}       continuous >= 0 (EF1), i != j
//
// Proportional shares are multiplied through by n so every coefficient is
// an integer.

#ifndef FAIRUM_MILP_HPP_
#define FAIRUM_MILP_HPP_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "fairum/instance.hpp"

namespace fairum {

struct LinearTerm {
  std::int64_t coef = 0;
  std::string var;

  friend bool operator==(const LinearTerm&, const LinearTerm&) = default;
};

using LinearExpr = std::vector<LinearTerm>;

enum class Sense { kLessEqual, kEqual, kGreaterEqual };

struct LinearConstraint {
  std::string name;
  LinearExpr lhs;
  Sense sense = Sense::kLessEqual;
  std::int64_t rhs = 0;

  friend bool operator==(const LinearConstraint&, const LinearConstraint&) = default;
};

enum class VarKind { kBinary, kContinuous };

struct Variable {
  std::string name;
  VarKind kind = VarKind::kContinuous;
  std::int64_t lower = 0;
  std::optional<std::int64_t> upper;

  friend bool operator==(const Variable&, const Variable&) = default;
};

struct MilpModel {
  std::string name;
  LinearExpr objective;  // maximised
  std::vector<LinearConstraint> constraints;
  std::vector<Variable> variables;

  std::size_t count(VarKind kind) const;
  // Throws ContractError if a referenced variable is undeclared, a name is
  // declared twice, or a name falls outside [A-Za-z_][A-Za-z0-9_]*.
  void validate() const;

  friend bool operator==(const MilpModel&, const MilpModel&) = default;
};

// kProp, kEF, kProp1, kEF1 only; anything else throws UsageError.
MilpModel build_milp(const Instance& inst, Criterion crit);

struct ModelSize {
  std::size_t binaries = 0;
  std::size_t continuous = 0;
  std::size_t constraints = 0;
};

// Closed-form sizes of build_milp's output as functions of (n, m).
ModelSize expected_model_size(int n, int m, Criterion crit);

std::string format_lp(const MilpModel& model);
void write_lp(const MilpModel& model, const std::filesystem::path& path);

}  // namespace fairum

#endif  // FAIRUM_MILP_HPP_
