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

#include <chrono>
#include <filesystem>
#include <set>
#include <tuple>
#include <vector>

#include "doctest.h"
#include "fairum/bench.hpp"
#include "fairum/errors.hpp"
#include "fairum/generators.hpp"
#include "fairum/io.hpp"

namespace fairum {
namespace {

TEST_CASE("default sweep has 900 instances") {
  const BenchConfig cfg;
  const auto cells = bench_instances(cfg);
  CHECK(cells.size() == 900);
  std::set<std::uint64_t> seeds;
  for (const auto& c : cells) seeds.insert(c.seed);
  CHECK(seeds.size() == 900);
  CHECK(cells.front().n == 2);
  CHECK(cells.back().n == 7);
  CHECK(cells.back().sample == 49);
}

TEST_CASE("cell seeds depend only on the cell") {
  BenchConfig a;
  a.seed = 17;
  BenchConfig b = a;
  b.n_min = 5;
  b.phis = {1.0};
  const auto all = bench_instances(a);
  for (const auto& cell : bench_instances(b)) {
    CHECK(cell.seed == cell_seed(17, cell.n, cell.phi, cell.sample));
    bool found = false;
    for (const auto& c : all) {
      found = found || (c.n == cell.n && c.phi == cell.phi && c.sample == cell.sample &&
                        c.seed == cell.seed);
    }
    CHECK(found);
  }
  CHECK(cell_seed(17, 3, 0.5, 0) != cell_seed(18, 3, 0.5, 0));
  CHECK(cell_seed(17, 3, 0.5, 0) != cell_seed(17, 3, 0.75, 0));
}

TEST_CASE("single brute-force cell without a criterion") {
  BenchConfig cfg;
  cfg.n_min = cfg.n_max = 3;
  cfg.phis = {0.5};
  cfg.samples = 1;
  cfg.engines = {Engine::kBrute};
  cfg.criteria = {Criterion::kNone};
  const auto rows = run_bench(cfg);
  REQUIRE(rows.size() == 1);
  const auto& r = rows[0];
  const auto inst = gen_mallows_borda({3, 3, 0.5, r.seed});
  CHECK(r.status == RowStatus::kOk);
  CHECK(r.welfare == um_welfare(inst).first);
  CHECK(r.states == 27);
  CHECK(r.ef_feasible.has_value());
  CHECK(r.prop_feasible.has_value());
}

TEST_CASE("rows come in sweep, engine, criterion order") {
  BenchConfig cfg;
  cfg.n_min = 2;
  cfg.n_max = 3;
  cfg.phis = {0.5, 1.0};
  cfg.samples = 2;
  cfg.engines = {Engine::kDp, Engine::kBrute};
  cfg.criteria = {Criterion::kEF, Criterion::kProp1};
  std::vector<BenchRecord> streamed;
  const auto rows = run_bench(cfg, [&](const BenchRecord& r) { streamed.push_back(r); });
  CHECK(rows == streamed);
  REQUIRE(rows.size() == 2 * 2 * 2 * 2 * 2);
  CHECK(rows[0].engine == Engine::kDp);
  CHECK(rows[0].criterion == Criterion::kEF);
  CHECK(rows[1].criterion == Criterion::kProp1);
  CHECK(rows[2].engine == Engine::kBrute);
  for (std::size_t k = 0; k < rows.size(); k += 4) {
    // DP and brute force agree on every instance.
    CHECK(rows[k].welfare == rows[k + 2].welfare);
    CHECK(rows[k + 1].welfare == rows[k + 3].welfare);
    CHECK(rows[k].ef_feasible == (rows[k].status == RowStatus::kOk));
    for (const auto& r : rows) CHECK((r.welfare.has_value() == (r.status == RowStatus::kOk)));
  }

  cfg.workers = 3;
  const auto parallel = run_bench(cfg);
  REQUIRE(parallel.size() == rows.size());
  for (std::size_t k = 0; k < rows.size(); ++k) {
    CHECK(parallel[k].seed == rows[k].seed);
    CHECK(parallel[k].welfare == rows[k].welfare);
    CHECK(parallel[k].states == rows[k].states);
  }
}

TEST_CASE("timeouts are recorded, not thrown") {
  BenchConfig cfg;
  cfg.n_min = cfg.n_max = 6;
  cfg.phis = {1.0};
  cfg.samples = 2;
  cfg.engines = {Engine::kDp, Engine::kBrute};
  cfg.criteria = {Criterion::kEF1};
  cfg.timeout = std::chrono::nanoseconds(1);
  const auto rows = run_bench(cfg);
  REQUIRE(rows.size() == 4);
  for (const auto& r : rows) {
    CHECK(r.status == RowStatus::kTimeout);
    CHECK_FALSE(r.welfare);
    CHECK(r.elapsed_ns >= 0);
    CHECK_FALSE(r.ef_feasible);
    CHECK_FALSE(r.prop_feasible);
  }
  const auto rates = feasibility_rates(rows);
  CHECK(rates.instances == 2);
  CHECK(rates.ef_known == 0);
}

TEST_CASE("external MILP command rows") {
  BenchConfig cfg;
  cfg.n_min = cfg.n_max = 2;
  cfg.phis = {1.0};
  cfg.samples = 1;
  cfg.engines = {Engine::kMilp};
  cfg.criteria = {Criterion::kEF};
  cfg.feasibility = false;
  cfg.milp_cmd = "test -s {lp} && echo 7";
  auto rows = run_bench(cfg);
  REQUIRE(rows.size() == 1);
  CHECK(rows[0].status == RowStatus::kOk);
  CHECK(rows[0].welfare == 7);

  cfg.milp_cmd = "echo infeasible; : {lp}";
  rows = run_bench(cfg);
  CHECK(rows[0].status == RowStatus::kInfeasible);

  cfg.milp_cmd = "sleep 5; : {lp}";
  cfg.timeout = std::chrono::milliseconds(200);
  rows = run_bench(cfg);
  CHECK(rows[0].status == RowStatus::kTimeout);

  cfg.milp_cmd = "false";
  CHECK_THROWS_AS(run_bench(cfg), ResourceError);

  // Without a command the MILP engine contributes no rows.
  cfg.milp_cmd.reset();
  CHECK(run_bench(cfg).empty());

  cfg.criteria = {Criterion::kEFx};
  CHECK_THROWS_AS(cfg.validate(), UsageError);
}

TEST_CASE("config validation") {
  BenchConfig cfg;
  cfg.n_min = 0;
  CHECK_THROWS_AS(cfg.validate(), UsageError);
  cfg = BenchConfig{};
  cfg.samples = 0;
  CHECK_THROWS_AS(cfg.validate(), UsageError);
  cfg = BenchConfig{};
  cfg.phis = {1.5};
  CHECK_THROWS_AS(cfg.validate(), UsageError);
  cfg = BenchConfig{};
  cfg.n_max = 1;
  CHECK_THROWS_AS(cfg.validate(), UsageError);
}

TEST_CASE("CSV writing and parsing") {
  CHECK(format_csv({}) == std::string(kCsvHeader) + "\r\n");
  CHECK(parse_csv(format_csv({})).empty());

  BenchRecord a;
  a.n = a.m = 4;
  a.phi = 0.75;
  a.sample = 3;
  a.seed = 18446744073709551615ULL;
  a.engine = Engine::kBrute;
  a.criterion = Criterion::kProp1;
  a.status = RowStatus::kOk;
  a.welfare = 21;
  a.elapsed_ns = 12345;
  a.states = 256;
  a.ef_feasible = false;
  a.prop_feasible = true;
  BenchRecord b = a;
  b.status = RowStatus::kTimeout;
  b.welfare.reset();
  b.ef_feasible.reset();
  b.phi = 0.1;
  const std::vector<BenchRecord> records = {a, b};
  const auto text = format_csv(records);
  CHECK(text.find("4,4,0.75,3,18446744073709551615,brute,prop1,ok,21,12345,256,false,true\r\n") !=
        std::string::npos);
  CHECK(text.find(",timeout,,12345,256,,true\r\n") != std::string::npos);
  CHECK(parse_csv(text) == records);

  // Quoted fields and LF line endings are accepted.
  const std::string quoted = std::string(kCsvHeader) +
                             "\n2,2,\"0.5\",0,1,\"dp\",ef,ok,3,4,5,\"true\",false\n";
  const auto parsed = parse_csv(quoted);
  REQUIRE(parsed.size() == 1);
  CHECK(parsed[0].phi == 0.5);
  CHECK(parsed[0].ef_feasible == true);

  CHECK_THROWS_AS(parse_csv("n,m\r\n"), InputError);
  CHECK_THROWS_AS(parse_csv(std::string(kCsvHeader) + "\r\n1,2,3\r\n"), InputError);
  CHECK_THROWS_AS(parse_csv(std::string(kCsvHeader) + "\r\n\"unterminated\r\n"), InputError);

  const auto path = std::filesystem::temp_directory_path() / "fairum_bench_test.csv";
  write_csv(records, path);
  CHECK(parse_csv(read_text_file(path)) == records);
  std::filesystem::remove(path);
}

}  // namespace
}  // namespace fairum
