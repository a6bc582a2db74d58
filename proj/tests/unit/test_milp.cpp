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

#include <filesystem>
#include <fstream>
#include <sstream>
#include <vector>

#include "doctest.h"
#include "fairum/dp.hpp"
#include "fairum/errors.hpp"
#include "fairum/io.hpp"
#include "fairum/milp.hpp"
#include "fixtures.hpp"
#include "lp_reader.hpp"

namespace fairum {
namespace {

using testing::Matrix;

constexpr Criterion kMilpCriteria[] = {Criterion::kProp, Criterion::kEF, Criterion::kProp1,
                                       Criterion::kEF1};

std::string golden(const std::string& name) {
  return read_text_file(std::filesystem::path(FAIRUM_TEST_DATA_DIR) / "golden" / name);
}

TEST_CASE("single-item PROP model") {
  const Instance inst(Matrix{{1}, {2}});
  const auto model = build_milp(inst, Criterion::kProp);
  CHECK(model.count(VarKind::kBinary) == 2);
  CHECK(model.count(VarKind::kContinuous) == 2);
  CHECK(model.constraints.size() == 5);
  const auto text = format_lp(model);
  CHECK(text == golden("prop_n2_m1.lp"));
  CHECK(text == format_lp(build_milp(inst, Criterion::kProp)));
  // Neither owner gives both agents half.
  const auto lp = testing::parse_lp(text);
  CHECK_FALSE(testing::admits_allocation(lp, inst, Allocation({0})));
  CHECK_FALSE(testing::admits_allocation(lp, inst, Allocation({1})));
}

TEST_CASE("EF1 model golden file") {
  const Instance inst(Matrix{{5, 2, 3}, {3, 4, 3}});
  const auto model = build_milp(inst, Criterion::kEF1);
  CHECK(model.variables.size() == 22);
  CHECK(model.count(VarKind::kBinary) == 18);
  CHECK(format_lp(model) == golden("ef1_n2_m3.lp"));
}

TEST_CASE("EF emits one envy row per ordered pair") {
  for (int n = 1; n <= 4; ++n) {
    const auto inst = gen_uniform(n, 3, 5, 1);
    const auto model = build_milp(inst, Criterion::kEF);
    int envy = 0;
    for (const auto& c : model.constraints) envy += c.name.rfind("ef_", 0) == 0;
    CHECK(envy == n * (n - 1));
  }
}

TEST_CASE("model sizes match the closed forms") {
  for (int n = 1; n <= 4; ++n) {
    for (int m = 0; m <= 5; ++m) {
      const auto inst = gen_uniform(n, m, 4, static_cast<std::uint64_t>(7 * n + m));
      for (Criterion c : kMilpCriteria) {
        const auto model = build_milp(inst, c);
        CHECK_NOTHROW(model.validate());
        const auto size = expected_model_size(n, m, c);
        CHECK(model.count(VarKind::kBinary) == size.binaries);
        CHECK(model.count(VarKind::kContinuous) == size.continuous);
        CHECK(model.constraints.size() == size.constraints);
      }
    }
  }
}

TEST_CASE("empty model is still well-formed") {
  const Instance inst(Matrix{{}, {}});
  for (Criterion c : kMilpCriteria) {
    const auto text = format_lp(build_milp(inst, c));
    const auto lp = testing::parse_lp(text);
    CHECK(lp.binaries.empty());
    CHECK(text.substr(text.size() - 4) == "End\n");
    CHECK(testing::admits_allocation(lp, inst, Allocation(std::vector<int>{})));
  }
}

TEST_CASE("only the four MILP criteria are supported") {
  for (Criterion c : {Criterion::kEFx, Criterion::kPropX, Criterion::kEQ, Criterion::kEQ1,
                      Criterion::kEQx, Criterion::kNone}) {
    CHECK_THROWS_AS(build_milp(testing::two_by_four(), c), UsageError);
  }
}

TEST_CASE("emitted rows reproduce is_fair on small instances") {
  SplitMix64 rng(404);
  for (int trial = 0; trial < 120; ++trial) {
    const int n = static_cast<int>(rng.uniform_int(1, 3));
    const int m = static_cast<int>(rng.uniform_int(0, 4));
    const auto inst = testing::random_instance(rng, n, m, 8);
    for (Criterion c : kMilpCriteria) {
      const auto lp = testing::parse_lp(format_lp(build_milp(inst, c)));
      testing::for_each_allocation(n, m, [&](const Allocation& a) {
        CHECK(testing::admits_allocation(lp, inst, a) == is_fair(inst, a, c));
      });
    }
  }
}

TEST_CASE("objective equals welfare at the indicator vector") {
  const auto inst = testing::two_by_four();
  const auto lp = testing::parse_lp(format_lp(build_milp(inst, Criterion::kEF1)));
  testing::for_each_allocation(2, 4, [&](const Allocation& a) {
    std::map<std::string, double> x;
    for (int i = 0; i < 2; ++i) {
      x["utility_" + std::to_string(i)] = static_cast<double>(bundle_value(inst, i, a.bundle(i)));
    }
    CHECK(testing::objective_value(lp, x) == doctest::Approx(welfare(inst, a)));
  });
}

TEST_CASE("reader rejects malformed files") {
  CHECK_THROWS(testing::parse_lp("Maximize\n obj: x\n"));
  CHECK_THROWS(testing::parse_lp("Maximize\n obj: x y\nEnd\n"));
  CHECK_THROWS(testing::parse_lp("Maximize\n obj: x\nSubject To\n r: x <=\nEnd\n"));
  CHECK_NOTHROW(testing::parse_lp("Maximize\n obj: 2 x - y\nSubject To\n r: x + 3 y <= 4\nEnd\n"));
}

}  // namespace
}  // namespace fairum
