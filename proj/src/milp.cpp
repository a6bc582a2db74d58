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

#include "fairum/milp.hpp"

#include <cctype>
#include <sstream>
#include <string>
#include <unordered_set>

#include "fairum/errors.hpp"
#include "fairum/io.hpp"

namespace fairum {

namespace {

std::string var_name(std::string_view stem, std::initializer_list<int> indices) {
  std::string s(stem);
  for (int i : indices) {
    s += '_';
    s += std::to_string(i);
  }
  return s;
}

bool valid_name(const std::string& s) {
  if (s.empty()) return false;
  const auto head = static_cast<unsigned char>(s.front());
  if (!(std::isalpha(head) || head == '_')) return false;
  for (char c : s) {
    const auto uc = static_cast<unsigned char>(c);
    if (!(std::isalnum(uc) || uc == '_')) return false;
  }
  return true;
}

class ModelBuilder {
 public:
  explicit ModelBuilder(std::string name) { model_.name = std::move(name); }

  void binary(std::string name) { model_.variables.push_back({std::move(name), VarKind::kBinary, 0, 1}); }
  void continuous(std::string name) {
    model_.variables.push_back({std::move(name), VarKind::kContinuous, 0, std::nullopt});
  }

  void constraint(std::string name, LinearExpr lhs, Sense sense, std::int64_t rhs) {
    if (lhs.empty()) return;
    model_.constraints.push_back({std::move(name), std::move(lhs), sense, rhs});
  }

  MilpModel& model() { return model_; }

 private:
  MilpModel model_;
};

void add_term(LinearExpr& expr, std::int64_t coef, std::string var) {
  if (coef != 0) expr.push_back({coef, std::move(var)});
}

const char* sense_text(Sense s) {
  switch (s) {
    case Sense::kLessEqual: return "<=";
    case Sense::kEqual: return "=";
    case Sense::kGreaterEqual: return ">=";
  }
  return "?";
}

// Writes "a x + b y - c z", wrapping every few terms.
void write_expr(std::ostream& out, const LinearExpr& expr) {
  constexpr std::size_t kTermsPerLine = 8;
  for (std::size_t k = 0; k < expr.size(); ++k) {
    const auto& term = expr[k];
    if (k > 0 && k % kTermsPerLine == 0) out << "\n   ";
    const std::int64_t mag = term.coef < 0 ? -term.coef : term.coef;
    if (k == 0) {
      if (term.coef < 0) out << "- ";
    } else {
      out << (term.coef < 0 ? " - " : " + ");
    }
    if (mag != 1) out << mag << ' ';
    out << term.var;
  }
}

}  // namespace

std::size_t MilpModel::count(VarKind kind) const {
  std::size_t c = 0;
  for (const auto& v : variables) c += v.kind == kind ? 1 : 0;
  return c;
}

void MilpModel::validate() const {
  std::unordered_set<std::string> declared;
  for (const auto& v : variables) {
    if (!valid_name(v.name)) throw ContractError("invalid variable name '" + v.name + "'");
    if (!declared.insert(v.name).second) {
      throw ContractError("variable '" + v.name + "' declared twice");
    }
  }
  auto check_expr = [&](const LinearExpr& e) {
    for (const auto& t : e) {
      if (!declared.count(t.var)) throw ContractError("undeclared variable '" + t.var + "'");
    }
  };
  check_expr(objective);
  std::unordered_set<std::string> names;
  for (const auto& c : constraints) {
    if (!valid_name(c.name)) throw ContractError("invalid constraint name '" + c.name + "'");
    if (!names.insert(c.name).second) {
      throw ContractError("constraint '" + c.name + "' declared twice");
    }
    check_expr(c.lhs);
  }
}

MilpModel build_milp(const Instance& inst, Criterion crit) {
  if (crit != Criterion::kProp && crit != Criterion::kEF && crit != Criterion::kProp1 &&
      crit != Criterion::kEF1) {
    throw UsageError("criterion " + std::string(to_string(crit)) +
                     " is not in the MILP set (prop, ef, prop1, ef1)");
  }
  const int n = inst.num_agents();
  const int m = inst.num_items();
  ModelBuilder b("um_within_" + std::string(to_string(crit)));

  for (int a = 0; a < n; ++a) {
    for (int o = 0; o < m; ++o) b.binary(var_name("assigned", {a, o}));
  }
  for (int a = 0; a < n; ++a) b.continuous(var_name("utility", {a}));
  if (crit == Criterion::kProp1) {
    for (int a = 0; a < n; ++a) {
      for (int o = 0; o < m; ++o) b.binary(var_name("nab", {a, o}));
    }
    for (int a = 0; a < n; ++a) b.continuous(var_name("vnab", {a}));
  }
  if (crit == Criterion::kEF1) {
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        for (int o = 0; o < m; ++o) b.binary(var_name("nab", {i, j, o}));
      }
    }
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        if (i != j) b.continuous(var_name("vnab", {i, j}));
      }
    }
  }

  auto& objective = b.model().objective;
  for (int a = 0; a < n; ++a) add_term(objective, 1, var_name("utility", {a}));

  // (1) utility definition
  for (int a = 0; a < n; ++a) {
    LinearExpr e;
    add_term(e, 1, var_name("utility", {a}));
    for (int o = 0; o < m; ++o) add_term(e, -inst.value(a, o), var_name("assigned", {a, o}));
    b.constraint(var_name("util", {a}), std::move(e), Sense::kEqual, 0);
  }
  // every item goes to exactly one agent
  for (int o = 0; o < m; ++o) {
    LinearExpr e;
    for (int a = 0; a < n; ++a) add_term(e, 1, var_name("assigned", {a, o}));
    b.constraint(var_name("assign", {o}), std::move(e), Sense::kEqual, 1);
  }

  switch (crit) {
    case Criterion::kProp:
      for (int a = 0; a < n; ++a) {
        LinearExpr e;
        add_term(e, n, var_name("utility", {a}));
        b.constraint(var_name("prop", {a}), std::move(e), Sense::kGreaterEqual, inst.total(a));
      }
      break;
    case Criterion::kEF:
      for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
          if (i == j) continue;
          LinearExpr e;
          add_term(e, 1, var_name("utility", {i}));
          for (int o = 0; o < m; ++o) {
            add_term(e, -inst.value(i, o), var_name("assigned", {j, o}));
          }
          b.constraint(var_name("ef", {i, j}), std::move(e), Sense::kGreaterEqual, 0);
        }
      }
      break;
    case Criterion::kProp1:
      for (int a = 0; a < n; ++a) {
        for (int o = 0; o < m; ++o) {
          LinearExpr e;
          add_term(e, 1, var_name("nab", {a, o}));
          add_term(e, 1, var_name("assigned", {a, o}));
          b.constraint(var_name("nabout", {a, o}), std::move(e), Sense::kLessEqual, 1);
        }
      }
      for (int a = 0; a < n; ++a) {
        LinearExpr e;
        for (int o = 0; o < m; ++o) add_term(e, 1, var_name("nab", {a, o}));
        b.constraint(var_name("nabone", {a}), std::move(e), Sense::kLessEqual, 1);
      }
      for (int a = 0; a < n; ++a) {
        LinearExpr e;
        add_term(e, 1, var_name("vnab", {a}));
        for (int o = 0; o < m; ++o) add_term(e, -inst.value(a, o), var_name("nab", {a, o}));
        b.constraint(var_name("vnabdef", {a}), std::move(e), Sense::kLessEqual, 0);
      }
      for (int a = 0; a < n; ++a) {
        LinearExpr e;
        add_term(e, n, var_name("utility", {a}));
        add_term(e, n, var_name("vnab", {a}));
        b.constraint(var_name("prop1", {a}), std::move(e), Sense::kGreaterEqual, inst.total(a));
      }
      break;
    case Criterion::kEF1:
      for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
          for (int o = 0; o < m; ++o) {
            LinearExpr e;
            add_term(e, 1, var_name("nab", {i, j, o}));
            add_term(e, 1, var_name("assigned", {i, o}));
            b.constraint(var_name("nabout", {i, j, o}), std::move(e), Sense::kLessEqual, 1);
          }
        }
      }
      for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
          for (int o = 0; o < m; ++o) {
            LinearExpr e;
            add_term(e, 1, var_name("nab", {i, j, o}));
            add_term(e, -1, var_name("assigned", {j, o}));
            b.constraint(var_name("nabin", {i, j, o}), std::move(e), Sense::kLessEqual, 0);
          }
        }
      }
      for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
          LinearExpr e;
          for (int o = 0; o < m; ++o) add_term(e, 1, var_name("nab", {i, j, o}));
          b.constraint(var_name("nabone", {i, j}), std::move(e), Sense::kLessEqual, 1);
        }
      }
      for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
          if (i == j) continue;
          LinearExpr e;
          add_term(e, 1, var_name("vnab", {i, j}));
          for (int o = 0; o < m; ++o) {
            add_term(e, -inst.value(i, o), var_name("nab", {i, j, o}));
          }
          b.constraint(var_name("vnabdef", {i, j}), std::move(e), Sense::kLessEqual, 0);
        }
      }
      for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
          if (i == j) continue;
          LinearExpr e;
          add_term(e, 1, var_name("utility", {i}));
          add_term(e, 1, var_name("vnab", {i, j}));
          for (int o = 0; o < m; ++o) {
            add_term(e, -inst.value(i, o), var_name("assigned", {j, o}));
          }
          b.constraint(var_name("ef1", {i, j}), std::move(e), Sense::kGreaterEqual, 0);
        }
      }
      break;
    default:
      break;
  }
  return std::move(b.model());
}

ModelSize expected_model_size(int n, int m, Criterion crit) {
  const auto N = static_cast<std::size_t>(n);
  const auto M = static_cast<std::size_t>(m);
  ModelSize s;
  s.binaries = N * M;
  s.continuous = N;
  s.constraints = N + M;
  switch (crit) {
    case Criterion::kProp:
      s.constraints += N;
      break;
    case Criterion::kEF:
      s.constraints += N * (N - 1);
      break;
    case Criterion::kProp1:
      s.binaries += N * M;
      s.continuous += N;
      s.constraints += N * M + (M > 0 ? N : 0) + 2 * N;
      break;
    case Criterion::kEF1:
      s.binaries += N * N * M;
      s.continuous += N * (N - 1);
      s.constraints += 2 * N * N * M + (M > 0 ? N * N : 0) + 2 * N * (N - 1);
      break;
    default:
      throw UsageError("criterion " + std::string(to_string(crit)) +
                       " is not in the MILP set (prop, ef, prop1, ef1)");
  }
  return s;
}

std::string format_lp(const MilpModel& model) {
  model.validate();
  std::ostringstream out;
  out << "\\ fairum model: " << model.name << "\n";
  out << "Maximize\n obj:";
  if (!model.objective.empty()) {
    out << ' ';
    write_expr(out, model.objective);
  }
  out << "\nSubject To\n";
  for (const auto& c : model.constraints) {
    out << ' ' << c.name << ": ";
    write_expr(out, c.lhs);
    out << ' ' << sense_text(c.sense) << ' ' << c.rhs << "\n";
  }
  out << "Bounds\n";
  for (const auto& v : model.variables) {
    if (v.kind != VarKind::kContinuous) continue;
    if (v.upper) {
      out << ' ' << v.lower << " <= " << v.name << " <= " << *v.upper << "\n";
    } else {
      out << ' ' << v.name << " >= " << v.lower << "\n";
    }
  }
  out << "Binaries\n";
  std::size_t on_line = 0;
  for (const auto& v : model.variables) {
    if (v.kind != VarKind::kBinary) continue;
    out << ' ' << v.name;
    if (++on_line == 8) {
      out << "\n";
      on_line = 0;
    }
  }
  if (on_line != 0) out << "\n";
  out << "End\n";
  return out.str();
}

void write_lp(const MilpModel& model, const std::filesystem::path& path) {
  write_text_file(path, format_lp(model));
}

}  // namespace fairum
