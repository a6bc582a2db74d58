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

// fairum: command-line front end over the instance/allocation JSON, bench
// CSV and LP formats.
//
// Exit codes: 0 success, 1 a computed "no" (decision false, infeasible,
// allocation not fair), 2 usage or input error, 3 resource error.

#include <charconv>
#include <chrono>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "fairum/bench.hpp"
#include "fairum/dp.hpp"
#include "fairum/errors.hpp"
#include "fairum/generators.hpp"
#include "fairum/instance.hpp"
#include "fairum/io.hpp"
#include "fairum/milp.hpp"
#include "fairum/oracle.hpp"
#include "json.hpp"

namespace {

using fairum::Criterion;
using json = nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitNo = 1;
constexpr int kExitUsage = 2;
constexpr int kExitResource = 3;

// "250ms", "60s", "2m", "1h"; a bare number is seconds.
std::chrono::nanoseconds parse_duration(const std::string& text) {
  double amount = 0;
  const char* begin = text.data();
  const char* end = begin + text.size();
  const auto res = std::from_chars(begin, end, amount);
  if (res.ec != std::errc() || amount < 0) {
    throw fairum::UsageError("bad duration '" + text + "'");
  }
  const std::string unit(res.ptr, end);
  double scale = 0;
  if (unit.empty() || unit == "s") scale = 1e9;
  else if (unit == "ms") scale = 1e6;
  else if (unit == "us") scale = 1e3;
  else if (unit == "ns") scale = 1;
  else if (unit == "m") scale = 60e9;
  else if (unit == "h") scale = 3600e9;
  else throw fairum::UsageError("bad duration unit in '" + text + "'");
  return std::chrono::nanoseconds(static_cast<std::int64_t>(amount * scale));
}

std::vector<std::string> split_commas(const std::string& text) {
  std::vector<std::string> parts;
  std::string cur;
  for (char c : text) {
    if (c == ',') {
      parts.push_back(cur);
      cur.clear();
    } else if (c != ' ') {
      cur += c;
    }
  }
  parts.push_back(cur);
  return parts;
}

std::vector<fairum::Value> parse_payload(const std::string& text) {
  std::vector<fairum::Value> values;
  if (text.empty()) return values;
  for (const auto& part : split_commas(text)) {
    fairum::Value v = 0;
    const auto res = std::from_chars(part.data(), part.data() + part.size(), v);
    if (res.ec != std::errc() || res.ptr != part.data() + part.size()) {
      throw fairum::UsageError("bad payload entry '" + part + "'");
    }
    values.push_back(v);
  }
  return values;
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty() || out_path == "-") {
    std::cout << text;
  } else {
    fairum::write_text_file(out_path, text);
  }
}

fairum::Instance load_instance(const std::string& path) {
  return fairum::parse_instance(fairum::read_text_file(path));
}

std::optional<std::chrono::steady_clock::time_point> deadline_from(const std::string& timeout) {
  if (timeout.empty()) return std::nullopt;
  return std::chrono::steady_clock::now() + parse_duration(timeout);
}

struct GenArgs {
  std::string model = "mallows";
  int n = 2;
  int m = 2;
  double phi = 1.0;
  std::uint64_t seed = 0;
  fairum::Value vmax = 10;
  std::string kind;
  std::string payload;
  fairum::Value target = 0;
  std::string out;
};

int run_gen(const GenArgs& a) {
  std::optional<fairum::Instance> inst;
  if (a.model == "mallows") {
    inst = fairum::gen_mallows_borda({a.n, a.m, a.phi, a.seed});
  } else if (a.model == "uniform") {
    inst = fairum::gen_uniform(a.n, a.m, a.vmax, a.seed);
  } else if (a.model == "reduction") {
    if (a.kind.empty()) throw fairum::UsageError("--model reduction needs --kind");
    fairum::ReductionSpec spec;
    spec.kind = fairum::parse_reduction_kind(a.kind);
    spec.target = a.target;
    auto numbers = parse_payload(a.payload);
    if (spec.kind == fairum::ReductionKind::kKnapsackProp1TwoAgents) {
      if (numbers.size() % 2 != 0) {
        throw fairum::UsageError("knapsack payload is value,weight pairs");
      }
      for (std::size_t k = 0; k < numbers.size(); k += 2) {
        spec.knapsack.push_back({numbers[k], numbers[k + 1]});
      }
    } else {
      spec.numbers = std::move(numbers);
    }
    inst = fairum::gen_reduction(spec);
  } else {
    throw fairum::UsageError("unknown model '" + a.model + "'");
  }
  emit(fairum::dump_instance(*inst), a.out);
  return kExitOk;
}

struct SolveArgs {
  std::string instance;
  std::string criterion = "none";
  std::string engine = "dp";
  std::string timeout;
  std::int64_t max_states = 0;
  std::int64_t budget = 10'000'000;
  bool no_ordered = false;
  bool stats = false;
  std::string out;
};

int run_solve(const SolveArgs& a) {
  const auto inst = load_instance(a.instance);
  const Criterion crit = fairum::parse_criterion(a.criterion);
  const auto engine = fairum::parse_engine(a.engine);
  fairum::SolveOutcome outcome;
  if (engine == fairum::Engine::kDp) {
    fairum::DpOptions opts;
    opts.deadline = deadline_from(a.timeout);
    opts.max_states = a.max_states;
    opts.ordered_fast_path = !a.no_ordered;
    outcome = fairum::solve_um_within(inst, crit, opts);
  } else if (engine == fairum::Engine::kBrute) {
    fairum::OracleOptions opts;
    opts.budget = a.budget;
    opts.deadline = deadline_from(a.timeout);
    outcome = fairum::brute_force_um_within(inst, crit, opts);
  } else {
    throw fairum::UsageError("solve supports engines dp and brute");
  }

  json doc;
  doc["format"] = fairum::kFormatVersion;
  doc["status"] = std::string(fairum::to_string(outcome.status));
  if (outcome.found()) {
    doc["welfare"] = outcome.welfare;
    doc["owner"] = outcome.allocation->owners();
  } else {
    doc["welfare"] = nullptr;
    doc["owner"] = nullptr;
  }
  doc["stats"] = {{"states_explored", outcome.stats.states_explored}};
  std::string text = doc.dump() + "\n";
  if (a.stats) {
    // Timing lines differ between runs; everything above is deterministic.
    for (std::size_t k = 0; k < outcome.stats.states_per_level.size(); ++k) {
      text += json{{"level", k + 1}, {"states", outcome.stats.states_per_level[k]}}.dump() + "\n";
    }
    text += json{{"elapsed_ns", outcome.stats.elapsed_ns}}.dump() + "\n";
  }
  emit(text, a.out);
  return outcome.found() ? kExitOk : kExitNo;
}

struct DecideArgs {
  std::string instance;
  std::string criterion;
  std::string engine = "dp";
  std::string timeout;
  std::int64_t max_states = 0;
  std::int64_t budget = 10'000'000;
};

int run_decide(const DecideArgs& a) {
  const auto inst = load_instance(a.instance);
  const Criterion crit = fairum::parse_criterion(a.criterion);
  if (crit == Criterion::kNone) throw fairum::UsageError("decide needs a fairness criterion");
  fairum::Decision d;
  const auto engine = fairum::parse_engine(a.engine);
  if (engine == fairum::Engine::kDp) {
    fairum::DpOptions opts;
    opts.deadline = deadline_from(a.timeout);
    opts.max_states = a.max_states;
    d = fairum::decide_exists_um_and_fair(inst, crit, opts);
  } else if (engine == fairum::Engine::kBrute) {
    fairum::OracleOptions opts;
    opts.budget = a.budget;
    opts.deadline = deadline_from(a.timeout);
    d.w0 = fairum::um_welfare(inst).first;
    const auto out = fairum::brute_force_um_within(inst, crit, opts);
    if (out.found()) d.w1 = out.welfare;
    d.answer = d.w1 && *d.w1 == d.w0;
  } else {
    throw fairum::UsageError("decide supports engines dp and brute");
  }
  json doc;
  doc["format"] = fairum::kFormatVersion;
  doc["answer"] = d.answer;
  doc["w0"] = d.w0;
  if (d.w1) {
    doc["w1"] = *d.w1;
  } else {
    doc["w1"] = nullptr;
  }
  std::cout << doc.dump() << "\n";
  return d.answer ? kExitOk : kExitNo;
}

int run_check(const std::string& inst_path, const std::string& alloc_path,
              const std::string& criterion) {
  const auto inst = load_instance(inst_path);
  const auto alloc = fairum::parse_allocation(fairum::read_text_file(alloc_path));
  const Criterion crit = fairum::parse_criterion(criterion);
  if (alloc.num_items() != inst.num_items()) {
    throw fairum::InputError("allocation covers " + std::to_string(alloc.num_items()) +
                             " items, instance has " + std::to_string(inst.num_items()));
  }
  for (int j = 0; j < alloc.num_items(); ++j) {
    if (alloc.owner(j) < 0 || alloc.owner(j) >= inst.num_agents()) {
      throw fairum::InputError("item " + std::to_string(j) + " has an invalid owner");
    }
  }
  const bool fair = crit == Criterion::kNone || fairum::is_fair(inst, alloc, crit);
  json doc;
  doc["format"] = fairum::kFormatVersion;
  doc["fair"] = fair;
  doc["welfare"] = fairum::welfare(inst, alloc);
  std::cout << doc.dump() << "\n";
  return fair ? kExitOk : kExitNo;
}

int run_export(const std::string& inst_path, const std::string& criterion,
               const std::string& out) {
  const auto inst = load_instance(inst_path);
  const auto model = fairum::build_milp(inst, fairum::parse_criterion(criterion));
  emit(fairum::format_lp(model), out);
  return kExitOk;
}

struct BenchArgs {
  int n_min = 2;
  int n_max = 7;
  std::string phis = "0.5,0.75,1.0";
  int samples = 50;
  std::uint64_t seed = 0;
  std::string engines = "dp";
  std::string criteria = "ef,ef1,prop,prop1";
  std::string timeout = "60s";
  int workers = 1;
  bool no_feasibility = false;
  std::string milp_cmd;
  std::string milp_dir;
  std::int64_t budget = 10'000'000;
  std::string out;
};

int run_bench_cmd(const BenchArgs& a) {
  fairum::BenchConfig cfg;
  cfg.n_min = a.n_min;
  cfg.n_max = a.n_max;
  cfg.phis.clear();
  for (const auto& p : split_commas(a.phis)) {
    double phi = 0;
    const auto res = std::from_chars(p.data(), p.data() + p.size(), phi);
    if (res.ec != std::errc() || res.ptr != p.data() + p.size()) {
      throw fairum::UsageError("bad phi '" + p + "'");
    }
    cfg.phis.push_back(phi);
  }
  cfg.samples = a.samples;
  cfg.seed = a.seed;
  cfg.engines.clear();
  for (const auto& e : split_commas(a.engines)) cfg.engines.push_back(fairum::parse_engine(e));
  cfg.criteria.clear();
  for (const auto& c : split_commas(a.criteria)) {
    cfg.criteria.push_back(fairum::parse_criterion(c));
  }
  cfg.timeout = parse_duration(a.timeout);
  cfg.workers = a.workers;
  cfg.feasibility = !a.no_feasibility;
  if (!a.milp_cmd.empty()) cfg.milp_cmd = a.milp_cmd;
  if (!a.milp_dir.empty()) cfg.milp_dir = a.milp_dir;
  cfg.brute_budget = a.budget;
  cfg.validate();

  std::ofstream file;
  std::ostream* sink = &std::cout;
  if (!a.out.empty() && a.out != "-") {
    file.open(a.out, std::ios::binary | std::ios::trunc);
    if (!file) throw fairum::ResourceError("cannot open " + a.out + " for writing");
    sink = &file;
  }
  *sink << fairum::kCsvHeader << "\r\n";
  const auto records = fairum::run_bench(cfg, [&](const fairum::BenchRecord& r) {
    *sink << fairum::format_csv_row(r);
    sink->flush();
  });
  if (!*sink) throw fairum::ResourceError("write to " + a.out + " failed");

  const auto rates = fairum::feasibility_rates(records);
  std::cerr << "instances: " << rates.instances << "\n";
  if (cfg.feasibility) {
    std::cerr << "EF feasible: " << rates.ef_true << "/" << rates.ef_known << " ("
              << 100.0 * rates.ef_rate() << "%)\n"
              << "PROP feasible: " << rates.prop_true << "/" << rates.prop_known << " ("
              << 100.0 * rates.prop_rate() << "%)\n";
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"UM-within-fairness allocation solver"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "fairum 1.0.0");

  GenArgs gen;
  auto* gen_cmd = app.add_subcommand("gen", "Generate an instance file");
  gen_cmd->add_option("--model", gen.model, "mallows, uniform or reduction")
      ->capture_default_str();
  gen_cmd->add_option("--n", gen.n, "Number of agents")->capture_default_str();
  gen_cmd->add_option("--m", gen.m, "Number of items")->capture_default_str();
  gen_cmd->add_option("--phi", gen.phi, "Mallows dispersion in [0, 1]")->capture_default_str();
  gen_cmd->add_option("--seed", gen.seed, "Generator seed")->capture_default_str();
  gen_cmd->add_option("--vmax", gen.vmax, "Largest uniform value")->capture_default_str();
  gen_cmd->add_option("--kind", gen.kind,
                      "Reduction: partition-ef1-3agents, partition-prop1-3agents, "
                      "partition-efx-2agents, 3partition-ef1, 3partition-prop1, "
                      "knapsack-prop1-2agents");
  gen_cmd->add_option("--payload", gen.payload,
                      "Comma-separated integers; value,weight pairs for knapsack");
  gen_cmd->add_option("--target", gen.target, "3-Partition target or knapsack capacity");
  gen_cmd->add_option("-o,--output", gen.out, "Output file (default stdout)");

  SolveArgs solve;
  auto* solve_cmd = app.add_subcommand("solve", "Best welfare within a fairness criterion");
  solve_cmd->add_option("instance", solve.instance, "Instance JSON file")->required();
  solve_cmd->add_option("--criterion", solve.criterion, "Fairness criterion or none")
      ->capture_default_str();
  solve_cmd->add_option("--engine", solve.engine, "dp or brute")->capture_default_str();
  solve_cmd->add_option("--timeout", solve.timeout, "Wall-clock limit, e.g. 60s");
  solve_cmd->add_option("--max-states", solve.max_states, "DP state budget, 0 = unlimited")
      ->capture_default_str();
  solve_cmd->add_option("--budget", solve.budget, "Brute-force allocation budget")
      ->capture_default_str();
  solve_cmd->add_flag("--no-ordered-fast-path", solve.no_ordered,
                      "Keep per-pair references for EF1/EFx on ordered instances");
  solve_cmd->add_flag("--stats", solve.stats, "Append per-level states and timing as JSON lines");
  solve_cmd->add_option("-o,--output", solve.out, "Output file (default stdout)");

  DecideArgs decide;
  auto* decide_cmd =
      app.add_subcommand("decide", "Does some utilitarian-maximal allocation meet the criterion");
  decide_cmd->add_option("instance", decide.instance, "Instance JSON file")->required();
  decide_cmd->add_option("--criterion", decide.criterion, "Fairness criterion")->required();
  decide_cmd->add_option("--engine", decide.engine, "dp or brute")->capture_default_str();
  decide_cmd->add_option("--timeout", decide.timeout, "Wall-clock limit, e.g. 60s");
  decide_cmd->add_option("--max-states", decide.max_states, "DP state budget, 0 = unlimited")
      ->capture_default_str();
  decide_cmd->add_option("--budget", decide.budget, "Brute-force allocation budget")
      ->capture_default_str();

  std::string check_inst;
  std::string check_alloc;
  std::string check_crit;
  auto* check_cmd = app.add_subcommand("check", "Test an allocation against a criterion");
  check_cmd->add_option("instance", check_inst, "Instance JSON file")->required();
  check_cmd->add_option("allocation", check_alloc, "Allocation JSON file")->required();
  check_cmd->add_option("--criterion", check_crit, "Fairness criterion")->required();

  std::string export_inst;
  std::string export_crit;
  std::string export_out;
  auto* export_cmd = app.add_subcommand("export-milp", "Write the MILP model in LP format");
  export_cmd->add_option("instance", export_inst, "Instance JSON file")->required();
  export_cmd->add_option("--criterion", export_crit, "prop, ef, prop1 or ef1")->required();
  export_cmd->add_option("-o,--output", export_out, "Output file (default stdout)");

  BenchArgs bench;
  auto* bench_cmd = app.add_subcommand("bench", "Runtime and feasibility sweep to CSV");
  bench_cmd->add_option("--n-min", bench.n_min, "Smallest n = m")->capture_default_str();
  bench_cmd->add_option("--n-max", bench.n_max, "Largest n = m")->capture_default_str();
  bench_cmd->add_option("--phis", bench.phis, "Comma-separated dispersions")
      ->capture_default_str();
  bench_cmd->add_option("--samples", bench.samples, "Instances per (n, phi) cell")
      ->capture_default_str();
  bench_cmd->add_option("--seed", bench.seed, "Base seed")->capture_default_str();
  bench_cmd->add_option("--engines", bench.engines, "Comma-separated: dp, brute, milp")
      ->capture_default_str();
  bench_cmd->add_option("--criteria", bench.criteria, "Comma-separated criteria")
      ->capture_default_str();
  bench_cmd->add_option("--timeout", bench.timeout, "Per-solve limit")->capture_default_str();
  bench_cmd->add_option("--workers", bench.workers, "Concurrent instances")
      ->capture_default_str();
  bench_cmd->add_flag("--no-feasibility", bench.no_feasibility,
                      "Skip the per-instance EF/PROP flags");
  bench_cmd->add_option("--milp-cmd", bench.milp_cmd,
                        "Solver command; {lp} is replaced by the model path");
  bench_cmd->add_option("--milp-dir", bench.milp_dir, "Directory for exported models");
  bench_cmd->add_option("--budget", bench.budget, "Brute-force allocation budget")
      ->capture_default_str();
  bench_cmd->add_option("-o,--output", bench.out, "CSV file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*gen_cmd) return run_gen(gen);
    if (*solve_cmd) return run_solve(solve);
    if (*decide_cmd) return run_decide(decide);
    if (*check_cmd) return run_check(check_inst, check_alloc, check_crit);
    if (*export_cmd) return run_export(export_inst, export_crit, export_out);
    if (*bench_cmd) return run_bench_cmd(bench);
  } catch (const fairum::UsageError& e) {
    std::cerr << "fairum: " << e.what() << "\n";
    return kExitUsage;
  } catch (const fairum::InputError& e) {
    std::cerr << "fairum: " << e.what() << "\n";
    return kExitUsage;
  } catch (const fairum::ContractError& e) {
    std::cerr << "fairum: " << e.what() << "\n";
    return kExitUsage;
  } catch (const fairum::ResourceError& e) {
    std::cerr << "fairum: " << e.what() << "\n";
    return kExitResource;
  } catch (const std::exception& e) {
    std::cerr << "fairum: " << e.what() << "\n";
    return kExitResource;
  }
  return kExitUsage;
}
