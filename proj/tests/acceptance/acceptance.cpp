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

// Prints one PASS/FAIL line per acceptance criterion and exits non-zero if
// any fails. Thresholds are the constants below.

#include <sys/wait.h>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "fairum/bench.hpp"
#include "fairum/dp.hpp"
#include "fairum/errors.hpp"
#include "fairum/generators.hpp"
#include "fairum/instance.hpp"
#include "fairum/io.hpp"
#include "fairum/milp.hpp"
#include "fairum/oracle.hpp"
#include "fairum/two_agent.hpp"
#include "fixtures.hpp"
#include "lp_reader.hpp"

namespace fairum {
namespace {

namespace fs = std::filesystem;
using testing::for_each_allocation;
using testing::random_allocation;
using testing::random_instance;

constexpr int kOracleInstances = 500;
constexpr double kOracleBudgetSeconds = 300.0;
constexpr int kTwoAgentInstances = 1000;
constexpr double kTwoAgentBudgetSeconds = 60.0;
constexpr int kImplicationPairs = 10'000;
constexpr double kEfRateLo = 0.05;
constexpr double kEfRateHi = 0.20;
constexpr double kPropRateLo = 0.60;
constexpr double kPropRateHi = 0.82;
constexpr int kTimingN = 6;
constexpr double kTimingPhi = 1.0;
constexpr int kMilpRandomInstances = 2000;

struct Result {
  bool pass = true;
  std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::string fmt(const char* format, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, format, args...);
  return buf;
}

// Shared by the oracle-equivalence and state-bound criteria.
struct OracleSuite {
  int solves = 0;
  int welfare_mismatches = 0;
  int unfair_found = 0;
  int bound_violations = 0;
  double seconds = 0.0;
};

OracleSuite run_oracle_suite() {
  OracleSuite s;
  SplitMix64 rng(20240501);
  const auto start = std::chrono::steady_clock::now();
  for (int k = 0; k < kOracleInstances; ++k) {
    const int n = 2 + k % 2;
    const int m = 3 + (k / 2) % 4;
    const Instance inst = random_instance(rng, n, m);
    for (Criterion c : kAllCriteria) {
      const auto dp = solve_um_within(inst, c);
      const auto brute = brute_force_um_within(inst, c);
      ++s.solves;
      if (dp.status != brute.status ||
          (dp.status == SolveStatus::kFound && dp.welfare != brute.welfare)) {
        ++s.welfare_mismatches;
      }
      if (dp.status == SolveStatus::kFound &&
          (!is_fair(inst, *dp.allocation, c) || welfare(inst, *dp.allocation) != dp.welfare)) {
        ++s.unfair_found;
      }
      const long double per_level = state_bound_per_level(inst, c);
      bool ok = static_cast<long double>(dp.stats.states_explored) <= m * per_level;
      for (auto count : dp.stats.states_per_level) {
        ok = ok && static_cast<long double>(count) <= per_level;
      }
      if (!ok) ++s.bound_violations;
    }
  }
  s.seconds = seconds_since(start);
  return s;
}

Result oracle_equivalence(const OracleSuite& s) {
  Result r;
  r.pass = s.welfare_mismatches == 0 && s.unfair_found == 0 && s.seconds < kOracleBudgetSeconds;
  r.detail = fmt("%d solves, %d welfare mismatches, %d unfair allocations, %.1fs", s.solves,
                 s.welfare_mismatches, s.unfair_found, s.seconds);
  return r;
}

Result state_bounds(const OracleSuite& s) {
  Result r;
  r.pass = s.bound_violations == 0;
  r.detail = fmt("%d solves, %d bound violations", s.solves, s.bound_violations);
  return r;
}

Result two_agent() {
  SplitMix64 rng(777);
  int checks = 0;
  int mismatches = 0;
  const auto start = std::chrono::steady_clock::now();
  for (int k = 0; k < kTwoAgentInstances; ++k) {
    const int m = k % 11;
    const Instance inst = random_instance(rng, 2, m);
    const Value um = um_welfare(inst).first;
    for (Criterion c : {Criterion::kEF1, Criterion::kProp1, Criterion::kEQ1}) {
      const auto fast = exists_um_and_fair_2(inst, c);
      ++checks;
      bool ok = fast.answer == brute_force_decide(inst, c);
      if (fast.answer) {
        ok = ok && fast.allocation && welfare(inst, *fast.allocation) == um &&
             is_fair(inst, *fast.allocation, c);
      }
      if (!ok) ++mismatches;
    }
  }
  const double secs = seconds_since(start);
  return {mismatches == 0 && secs < kTwoAgentBudgetSeconds,
          fmt("%d decisions, %d mismatches, %.2fs", checks, mismatches, secs)};
}

bool has_equal_split(const std::vector<Value>& xs) {
  Value total = 0;
  for (Value x : xs) total += x;
  if (total % 2 != 0) return false;
  std::vector<bool> reach(static_cast<std::size_t>(total / 2 + 1), false);
  reach[0] = true;
  for (Value x : xs) {
    for (Value s = total / 2; s >= x; --s) {
      if (reach[static_cast<std::size_t>(s - x)]) reach[static_cast<std::size_t>(s)] = true;
    }
  }
  return reach[static_cast<std::size_t>(total / 2)];
}

Result partition_reductions() {
  int payloads = 0;
  int yes = 0;
  int mismatches = 0;
  std::vector<Value> xs;
  std::function<void()> visit = [&] {
    if (!xs.empty()) {
      Value total = 0;
      for (Value x : xs) total += x;
      if (total % 2 == 0) {
        ++payloads;
        const bool expected = has_equal_split(xs);
        yes += expected;
        for (auto [kind, crit] :
             {std::pair{ReductionKind::kPartitionEF1ThreeAgents, Criterion::kEF1},
              std::pair{ReductionKind::kPartitionProp1ThreeAgents, Criterion::kProp1}}) {
          const Instance inst = gen_reduction({kind, xs, 0, {}});
          if (decide_exists_um_and_fair(inst, crit).answer != expected) ++mismatches;
        }
      }
    }
    if (xs.size() == 6) return;
    for (Value x = 1; x <= 3; ++x) {
      xs.push_back(x);
      visit();
      xs.pop_back();
    }
  };
  visit();
  return {mismatches == 0, fmt("%d even-sum payloads (%d splittable) x 2 reductions, %d mismatches",
                               payloads, yes, mismatches)};
}

Result heavy_item_and_implications() {
  const Instance inst = testing::heavy_item_instance();
  const Allocation alloc = testing::heavy_item_allocation();
  const bool prop1 = is_fair(inst, alloc, Criterion::kProp1);
  const bool ef1 = is_fair(inst, alloc, Criterion::kEF1);

  const std::pair<Criterion, Criterion> implications[] = {
      {Criterion::kEF, Criterion::kEF1},   {Criterion::kEF1, Criterion::kProp1},
      {Criterion::kEFx, Criterion::kEF1},  {Criterion::kPropX, Criterion::kProp1},
      {Criterion::kEQx, Criterion::kEQ1},
  };
  SplitMix64 rng(4242);
  int violations = 0;
  for (int k = 0; k < kImplicationPairs; ++k) {
    const int n = static_cast<int>(rng.uniform_int(2, 4));
    const int m = static_cast<int>(rng.uniform_int(0, 8));
    const Instance random = random_instance(rng, n, m);
    const Allocation a = random_allocation(rng, n, m);
    for (auto [strong, weak] : implications) {
      if (is_fair(random, a, strong) && !is_fair(random, a, weak)) ++violations;
    }
  }
  return {prop1 && !ef1 && violations == 0,
          fmt("heavy-item PROP1=%s EF1=%s; %d pairs, %d implication violations",
              prop1 ? "true" : "false", ef1 ? "true" : "false", kImplicationPairs, violations)};
}

Result feasibility_rates_check(const std::vector<BenchRecord>& rows) {
  const auto rates = feasibility_rates(rows);
  const double ef = rates.ef_rate();
  const double prop = rates.prop_rate();
  const bool pass = rates.instances == 900 && ef >= kEfRateLo && ef <= kEfRateHi &&
                    prop >= kPropRateLo && prop <= kPropRateHi;
  return {pass, fmt("%d instances; EF %.1f%% of %d, PROP %.1f%% of %d (bands [%.0f, %.0f]%%, "
                    "[%.0f, %.0f]%%)",
                    rates.instances, 100 * ef, rates.ef_known, 100 * prop, rates.prop_known,
                    100 * kEfRateLo, 100 * kEfRateHi, 100 * kPropRateLo, 100 * kPropRateHi)};
}

// Timed-out rows count as slower than every finished one.
double median_ns(const std::vector<BenchRecord>& rows, Criterion crit) {
  std::vector<double> xs;
  for (const auto& r : rows) {
    if (r.n != kTimingN || r.phi != kTimingPhi || r.criterion != crit) continue;
    xs.push_back(r.status == RowStatus::kTimeout ? 1e300 : static_cast<double>(r.elapsed_ns));
  }
  if (xs.empty()) return 0.0;
  std::sort(xs.begin(), xs.end());
  const std::size_t h = xs.size() / 2;
  return xs.size() % 2 ? xs[h] : (xs[h - 1] + xs[h]) / 2;
}

Result relative_difficulty(const std::vector<BenchRecord>& rows) {
  const double ef = median_ns(rows, Criterion::kEF);
  const double prop = median_ns(rows, Criterion::kProp);
  const double ef1 = median_ns(rows, Criterion::kEF1);
  const double prop1 = median_ns(rows, Criterion::kProp1);
  return {prop < ef && prop1 < ef1,
          fmt("n=m=%d, phi=%.2f, medians: PROP %.1fms < EF %.1fms, PROP1 %.1fms < EF1 %.1fms",
              kTimingN, kTimingPhi, prop / 1e6, ef / 1e6, prop1 / 1e6, ef1 / 1e6)};
}

Result milp_fidelity() {
  int models = 0;
  int evaluations = 0;
  int mismatches = 0;
  auto check = [&](const Instance& inst) {
    for (Criterion c : {Criterion::kProp, Criterion::kEF, Criterion::kProp1, Criterion::kEF1}) {
      const auto lp = testing::parse_lp(format_lp(build_milp(inst, c)));
      ++models;
      for_each_allocation(inst.num_agents(), inst.num_items(), [&](const Allocation& a) {
        ++evaluations;
        if (testing::admits_allocation(lp, inst, a) != is_fair(inst, a, c)) ++mismatches;
      });
    }
  };
  for (int n = 1; n <= 2; ++n) {
    for (int m = 0; m <= 4; ++m) {
      // Every table with entries in {0, 1, 2}.
      const int cells = n * m;
      int tables = 1;
      for (int k = 0; k < cells; ++k) tables *= 3;
      for (int code = 0; code < tables; ++code) {
        std::vector<std::vector<Value>> rows(static_cast<std::size_t>(n),
                                             std::vector<Value>(static_cast<std::size_t>(m)));
        int rest = code;
        for (auto& row : rows) {
          for (auto& v : row) {
            v = rest % 3;
            rest /= 3;
          }
        }
        check(Instance(rows));
      }
    }
  }
  SplitMix64 rng(99);
  for (int k = 0; k < kMilpRandomInstances; ++k) {
    const int n = static_cast<int>(rng.uniform_int(1, 2));
    const int m = static_cast<int>(rng.uniform_int(0, 4));
    check(gen_uniform(n, m, 10, rng.next()));
  }
  return {mismatches == 0, fmt("%d models, %d indicator vectors, %d mismatches", models,
                               evaluations, mismatches)};
}

struct Captured {
  int rc = -1;
  std::string out;
};

Captured shell(const std::string& cmd) {
  Captured c;
  FILE* pipe = ::popen((cmd + " 2>/dev/null").c_str(), "r");
  if (!pipe) return c;
  char buf[4096];
  while (std::fgets(buf, sizeof buf, pipe)) c.out += buf;
  const int status = ::pclose(pipe);
  c.rc = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return c;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Result determinism() {
  const fs::path dir = fs::temp_directory_path() / "fairum_acceptance";
  fs::remove_all(dir);
  fs::create_directories(dir);
  const std::string cli = FAIRUM_CLI_PATH;
  const std::string inst = (dir / "inst.json").string();
  const std::string red = (dir / "red.json").string();
  const std::vector<std::string> commands = {
      "gen --model mallows --n 5 --m 6 --phi 0.75 --seed 11",
      "gen --model uniform --n 3 --m 7 --vmax 9 --seed 12",
      "gen --model reduction --kind 3partition-ef1 --payload 6,6,6,7,7,8 --target 20",
      "solve " + inst + " --criterion none",
      "solve " + inst + " --criterion ef1",
      "solve " + inst + " --criterion propx --engine brute",
      "solve " + red + " --criterion prop1",
      "decide " + inst + " --criterion eq1",
      "decide " + red + " --criterion ef1",
      "export-milp " + inst + " --criterion ef1",
      "export-milp " + red + " --criterion prop",
  };
  shell(cli + " gen --model mallows --n 3 --m 6 --phi 0.5 --seed 5 -o " + inst);
  shell(cli + " gen --model reduction --kind partition-prop1-3agents --payload 1,2,3 -o " + red);

  int compared = 0;
  int differing = 0;
  for (const auto& args : commands) {
    // Once to stdout, once through -o.
    const auto a = shell(cli + " " + args);
    const auto b = shell(cli + " " + args);
    const fs::path f1 = dir / "out1";
    const fs::path f2 = dir / "out2";
    shell(cli + " " + args + " -o " + f1.string());
    shell(cli + " " + args + " -o " + f2.string());
    compared += 2;
    if (a.out.empty() || a.rc != b.rc || a.out != b.out) ++differing;
    if (slurp(f1).empty() || slurp(f1) != slurp(f2)) ++differing;
  }
  fs::remove_all(dir);
  return {differing == 0, fmt("%d output pairs, %d differ", compared, differing)};
}

}  // namespace
}  // namespace fairum

int main() {
  using namespace fairum;
  bool all = true;
  auto report = [&](const char* name, const Result& r) {
    all = all && r.pass;
    std::cout << (r.pass ? "PASS" : "FAIL") << "  " << name << ": " << r.detail << std::endl;
  };
  try {
    const auto suite = run_oracle_suite();
    report("oracle equivalence", oracle_equivalence(suite));
    report("two-agent fast path", two_agent());
    report("partition reductions", partition_reductions());
    report("heavy-item fixture and implications", heavy_item_and_implications());
    report("state-count bounds", state_bounds(suite));

    BenchConfig cfg;  // 900 Mallows-Borda instances, DP engine, all four criteria
    const auto rows = run_bench(cfg);
    report("feasibility rates", feasibility_rates_check(rows));
    report("relative difficulty", relative_difficulty(rows));

    report("milp transcription fidelity", milp_fidelity());
    report("determinism", determinism());
  } catch (const std::exception& e) {
    std::cout << "FAIL  acceptance run aborted: " << e.what() << std::endl;
    return 1;
  }
  return all ? 0 : 1;
}
