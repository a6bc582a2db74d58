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

// Runtime and feasibility sweep over Mallows-Borda instances with n = m.

#ifndef FAIRUM_BENCH_HPP_
#define FAIRUM_BENCH_HPP_

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fairum/instance.hpp"

namespace fairum {

enum class Engine { kDp, kBrute, kMilp };

std::string_view to_string(Engine engine);
Engine parse_engine(std::string_view text);

struct BenchConfig {
  int n_min = 2;
  int n_max = 7;
  std::vector<double> phis = {0.5, 0.75, 1.0};
  int samples = 50;
  std::uint64_t seed = 0;
  std::vector<Engine> engines = {Engine::kDp};
  std::vector<Criterion> criteria = {Criterion::kEF, Criterion::kEF1, Criterion::kProp,
                                     Criterion::kProp1};
  std::chrono::nanoseconds timeout = std::chrono::seconds(60);
  // EF/PROP feasibility flags per instance (computed with the DP).
  bool feasibility = true;
  // Instances solved concurrently. Timings are only comparable with 1.
  int workers = 1;
  // External solver for Engine::kMilp. "{lp}" is replaced by the model
  // path (appended when absent). The command must print the optimal
  // objective, or the word "infeasible", as its last output line.
  std::optional<std::string> milp_cmd;
  std::filesystem::path milp_dir = std::filesystem::temp_directory_path();
  std::int64_t brute_budget = 10'000'000;

  void validate() const;
};

enum class RowStatus { kOk, kTimeout, kInfeasible };

std::string_view to_string(RowStatus status);

struct BenchRecord {
  int n = 0;
  int m = 0;
  double phi = 0.0;
  int sample = 0;
  std::uint64_t seed = 0;
  Engine engine = Engine::kDp;
  Criterion criterion = Criterion::kNone;
  RowStatus status = RowStatus::kOk;
  std::optional<Value> welfare;  // present iff status == kOk
  std::int64_t elapsed_ns = 0;
  std::int64_t states = 0;
  std::optional<bool> ef_feasible;    // empty when not computed or timed out
  std::optional<bool> prop_feasible;

  friend bool operator==(const BenchRecord&, const BenchRecord&) = default;
};

struct BenchInstance {
  int n = 0;
  double phi = 0.0;
  int sample = 0;
  std::uint64_t seed = 0;
};

// Seed of one cell: base seed mixed with n, the bit pattern of phi, and
// the sample index.
std::uint64_t cell_seed(std::uint64_t base, int n, double phi, int sample);

// Every (n, phi, sample) cell in sweep order.
std::vector<BenchInstance> bench_instances(const BenchConfig& cfg);

// Rows in sweep order, then engine order, then criterion order. on_record,
// if set, sees each row as soon as its instance is finished.
std::vector<BenchRecord> run_bench(const BenchConfig& cfg,
                                   const std::function<void(const BenchRecord&)>& on_record = {});

struct FeasibilityRates {
  int instances = 0;
  int ef_known = 0;
  int ef_true = 0;
  int prop_known = 0;
  int prop_true = 0;

  double ef_rate() const { return ef_known ? static_cast<double>(ef_true) / ef_known : 0.0; }
  double prop_rate() const {
    return prop_known ? static_cast<double>(prop_true) / prop_known : 0.0;
  }
};

// Counts each (n, phi, sample) instance once.
FeasibilityRates feasibility_rates(const std::vector<BenchRecord>& records);

inline constexpr std::string_view kCsvHeader =
    "n,m,phi,sample,seed,engine,criterion,status,welfare,elapsed_ns,states,ef_feasible,"
    "prop_feasible";

// One data line, CRLF-terminated.
std::string format_csv_row(const BenchRecord& record);
std::string format_csv(const std::vector<BenchRecord>& records);
std::vector<BenchRecord> parse_csv(std::string_view text);
void write_csv(const std::vector<BenchRecord>& records, const std::filesystem::path& path);

}  // namespace fairum

#endif  // FAIRUM_BENCH_HPP_
