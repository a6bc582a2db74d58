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

#include "fairum/bench.hpp"

#include <atomic>
#include <bit>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>
#include <sys/wait.h>
#include <tuple>

#include "fairum/dp.hpp"
#include "fairum/errors.hpp"
#include "fairum/generators.hpp"
#include "fairum/io.hpp"
#include "fairum/milp.hpp"
#include "fairum/oracle.hpp"
#include "fairum/rng.hpp"

namespace fairum {

namespace {

using Clock = std::chrono::steady_clock;

std::int64_t since_ns(Clock::time_point start) {
  return std::chrono::duration_cast<std::chrono::nanoseconds>(Clock::now() - start).count();
}

std::string format_double(double x) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

BenchRecord row_from_outcome(const BenchInstance& cell, Engine engine, Criterion crit,
                             const SolveOutcome& out) {
  BenchRecord r;
  r.n = cell.n;
  r.m = cell.n;
  r.phi = cell.phi;
  r.sample = cell.sample;
  r.seed = cell.seed;
  r.engine = engine;
  r.criterion = crit;
  r.status = out.found() ? RowStatus::kOk : RowStatus::kInfeasible;
  if (out.found()) r.welfare = out.welfare;
  r.elapsed_ns = out.stats.elapsed_ns;
  r.states = out.stats.states_explored;
  return r;
}

BenchRecord censored_row(const BenchInstance& cell, Engine engine, Criterion crit,
                         std::int64_t elapsed) {
  BenchRecord r;
  r.n = cell.n;
  r.m = cell.n;
  r.phi = cell.phi;
  r.sample = cell.sample;
  r.seed = cell.seed;
  r.engine = engine;
  r.criterion = crit;
  r.status = RowStatus::kTimeout;
  r.elapsed_ns = elapsed;
  return r;
}

std::string shell_quote(const std::string& s) {
  std::string out = "'";
  for (char c : s) {
    if (c == '\'') out += "'\\''";
    else out += c;
  }
  return out + "'";
}

// Runs the external MILP command on an exported model; the last output
// line carries the objective or "infeasible".
BenchRecord run_milp_row(const BenchConfig& cfg, const BenchInstance& cell, const Instance& inst,
                         Criterion crit) {
  const auto model = build_milp(inst, crit);
  const auto path = cfg.milp_dir / ("fairum-n" + std::to_string(cell.n) + "-s" +
                                    std::to_string(cell.seed) + "-" +
                                    std::string(to_string(crit)) + ".lp");
  write_lp(model, path);
  std::string cmd = *cfg.milp_cmd;
  const auto placeholder = cmd.find("{lp}");
  if (placeholder == std::string::npos) {
    cmd += " " + shell_quote(path.string());
  } else {
    cmd.replace(placeholder, 4, shell_quote(path.string()));
  }
  const auto secs = std::chrono::duration_cast<std::chrono::duration<double>>(cfg.timeout).count();
  cmd = "timeout " + format_double(secs) + " sh -c " + shell_quote(cmd) + " 2>/dev/null";

  const auto start = Clock::now();
  FILE* pipe = ::popen(cmd.c_str(), "r");
  if (!pipe) throw ResourceError("cannot start MILP command");
  std::string output;
  char buf[4096];
  while (std::fgets(buf, sizeof buf, pipe)) output += buf;
  const int rc = ::pclose(pipe);
  const auto elapsed = since_ns(start);
  std::filesystem::remove(path);

  const int exit_code = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
  if (exit_code == 124) return censored_row(cell, Engine::kMilp, crit, elapsed);
  if (exit_code != 0) {
    throw ResourceError("MILP command failed with exit code " + std::to_string(exit_code));
  }
  std::istringstream lines(output);
  std::string line;
  std::string last;
  while (std::getline(lines, line)) {
    if (line.find_first_not_of(" \t\r") != std::string::npos) last = line;
  }
  SolveOutcome out;
  out.stats.elapsed_ns = elapsed;
  if (last.find("infeasible") != std::string::npos) {
    out.status = SolveStatus::kInfeasible;
  } else {
    try {
      out.welfare = static_cast<Value>(std::llround(std::stod(last)));
    } catch (const std::exception&) {
      throw ResourceError("MILP command printed no objective value");
    }
    out.status = SolveStatus::kFound;
  }
  auto row = row_from_outcome(cell, Engine::kMilp, crit, out);
  row.elapsed_ns = elapsed;
  return row;
}

std::vector<BenchRecord> run_cell(const BenchConfig& cfg, const BenchInstance& cell) {
  const Instance inst = gen_mallows_borda({cell.n, cell.n, cell.phi, cell.seed});

  struct DpRun {
    std::optional<SolveOutcome> outcome;  // empty on timeout
    std::int64_t elapsed_ns = 0;
  };
  std::map<Criterion, DpRun> dp_cache;
  auto cached_dp = [&](Criterion crit) -> const DpRun& {
    auto it = dp_cache.find(crit);
    if (it != dp_cache.end()) return it->second;
    DpRun run;
    const auto start = Clock::now();
    DpOptions opts;
    opts.deadline = start + cfg.timeout;
    try {
      run.outcome = solve_um_within(inst, crit, opts);
    } catch (const ResourceError&) {
    }
    run.elapsed_ns = since_ns(start);
    return dp_cache.emplace(crit, std::move(run)).first->second;
  };

  std::optional<bool> ef_flag;
  std::optional<bool> prop_flag;
  if (cfg.feasibility) {
    if (const auto& ef = cached_dp(Criterion::kEF).outcome) ef_flag = ef->found();
    if (const auto& prop = cached_dp(Criterion::kProp).outcome) prop_flag = prop->found();
  }

  std::vector<BenchRecord> rows;
  for (Engine engine : cfg.engines) {
    for (Criterion crit : cfg.criteria) {
      const auto start = Clock::now();
      BenchRecord row;
      switch (engine) {
        case Engine::kDp: {
          const auto& run = cached_dp(crit);
          row = run.outcome ? row_from_outcome(cell, engine, crit, *run.outcome)
                            : censored_row(cell, engine, crit, run.elapsed_ns);
          break;
        }
        case Engine::kBrute: {
          OracleOptions opts;
          opts.budget = cfg.brute_budget;
          opts.deadline = start + cfg.timeout;
          try {
            row = row_from_outcome(cell, engine, crit, brute_force_um_within(inst, crit, opts));
          } catch (const ResourceError&) {
            row = censored_row(cell, engine, crit, since_ns(start));
          }
          break;
        }
        case Engine::kMilp:
          if (!cfg.milp_cmd) continue;
          row = run_milp_row(cfg, cell, inst, crit);
          break;
      }
      row.ef_feasible = ef_flag;
      row.prop_feasible = prop_flag;
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

std::optional<bool> parse_flag(std::string_view s) {
  if (s.empty()) return std::nullopt;
  if (s == "true") return true;
  if (s == "false") return false;
  throw InputError("bad boolean field '" + std::string(s) + "'");
}

std::string csv_field(std::string_view s) {
  if (s.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(s);
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

// RFC 4180 record splitting.
std::vector<std::vector<std::string>> split_csv(std::string_view text) {
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> row;
  std::string field;
  bool quoted = false;
  bool any = false;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        field += c;
      }
      continue;
    }
    switch (c) {
      case '"':
        quoted = true;
        any = true;
        break;
      case ',':
        row.push_back(std::move(field));
        field.clear();
        any = true;
        break;
      case '\r':
        break;
      case '\n':
        row.push_back(std::move(field));
        field.clear();
        rows.push_back(std::move(row));
        row.clear();
        any = false;
        break;
      default:
        field += c;
        any = true;
    }
  }
  if (quoted) throw InputError("unterminated quoted CSV field");
  if (any || !field.empty()) {
    row.push_back(std::move(field));
    rows.push_back(std::move(row));
  }
  return rows;
}

template <typename T>
T parse_number(const std::string& s, const char* what) {
  T value{};
  const auto res = std::from_chars(s.data(), s.data() + s.size(), value);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
    throw InputError(std::string("bad CSV ") + what + " field '" + s + "'");
  }
  return value;
}

}  // namespace

std::string_view to_string(Engine engine) {
  switch (engine) {
    case Engine::kDp: return "dp";
    case Engine::kBrute: return "brute";
    case Engine::kMilp: return "milp";
  }
  return "?";
}

Engine parse_engine(std::string_view text) {
  for (Engine e : {Engine::kDp, Engine::kBrute, Engine::kMilp}) {
    if (to_string(e) == text) return e;
  }
  throw UsageError("unknown engine '" + std::string(text) + "'");
}

std::string_view to_string(RowStatus status) {
  switch (status) {
    case RowStatus::kOk: return "ok";
    case RowStatus::kTimeout: return "timeout";
    case RowStatus::kInfeasible: return "infeasible";
  }
  return "?";
}

void BenchConfig::validate() const {
  if (n_min < 1) throw UsageError("bench needs n_min >= 1");
  if (n_max < n_min) throw UsageError("bench needs n_max >= n_min");
  if (samples < 1) throw UsageError("bench needs samples >= 1");
  if (phis.empty()) throw UsageError("bench needs at least one phi");
  for (double phi : phis) {
    if (!(phi >= 0.0 && phi <= 1.0)) throw UsageError("phi must lie in [0, 1]");
  }
  if (workers < 1) throw UsageError("bench needs workers >= 1");
  for (Engine e : engines) {
    if (e != Engine::kMilp) continue;
    for (Criterion c : criteria) {
      if (c != Criterion::kProp && c != Criterion::kEF && c != Criterion::kProp1 &&
          c != Criterion::kEF1) {
        throw UsageError("milp engine supports prop, ef, prop1, ef1 only");
      }
    }
  }
}

std::uint64_t cell_seed(std::uint64_t base, int n, double phi, int sample) {
  std::uint64_t h = derive_seed(base, static_cast<std::uint64_t>(n));
  h = derive_seed(h, std::bit_cast<std::uint64_t>(phi));
  return derive_seed(h, static_cast<std::uint64_t>(sample));
}

std::vector<BenchInstance> bench_instances(const BenchConfig& cfg) {
  cfg.validate();
  std::vector<BenchInstance> cells;
  for (int n = cfg.n_min; n <= cfg.n_max; ++n) {
    for (double phi : cfg.phis) {
      for (int s = 0; s < cfg.samples; ++s) {
        cells.push_back({n, phi, s, cell_seed(cfg.seed, n, phi, s)});
      }
    }
  }
  return cells;
}

std::vector<BenchRecord> run_bench(const BenchConfig& cfg,
                                   const std::function<void(const BenchRecord&)>& on_record) {
  const auto cells = bench_instances(cfg);
  std::vector<std::vector<BenchRecord>> results(cells.size());
  std::vector<bool> done(cells.size(), false);
  std::size_t next_to_emit = 0;
  std::mutex mu;
  std::atomic<std::size_t> next_cell{0};
  std::exception_ptr failure;

  // Emits finished cells in sweep order.
  auto flush = [&] {
    while (next_to_emit < cells.size() && done[next_to_emit]) {
      if (on_record) {
        for (const auto& r : results[next_to_emit]) on_record(r);
      }
      ++next_to_emit;
    }
  };
  auto work = [&] {
    while (true) {
      const std::size_t idx = next_cell.fetch_add(1);
      if (idx >= cells.size()) return;
      try {
        auto rows = run_cell(cfg, cells[idx]);
        std::lock_guard lock(mu);
        results[idx] = std::move(rows);
        done[idx] = true;
        flush();
      } catch (...) {
        std::lock_guard lock(mu);
        if (!failure) failure = std::current_exception();
        next_cell = cells.size();
        return;
      }
    }
  };

  if (cfg.workers == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < cfg.workers; ++w) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);

  std::vector<BenchRecord> all;
  for (auto& rows : results) {
    for (auto& r : rows) all.push_back(std::move(r));
  }
  return all;
}

FeasibilityRates feasibility_rates(const std::vector<BenchRecord>& records) {
  FeasibilityRates rates;
  std::map<std::tuple<int, double, int>, const BenchRecord*> seen;
  for (const auto& r : records) seen.emplace(std::make_tuple(r.n, r.phi, r.sample), &r);
  for (const auto& [key, r] : seen) {
    ++rates.instances;
    if (r->ef_feasible) {
      ++rates.ef_known;
      rates.ef_true += *r->ef_feasible ? 1 : 0;
    }
    if (r->prop_feasible) {
      ++rates.prop_known;
      rates.prop_true += *r->prop_feasible ? 1 : 0;
    }
  }
  return rates;
}

std::string format_csv_row(const BenchRecord& r) {
  auto flag = [](const std::optional<bool>& b) -> std::string {
    return b ? (*b ? "true" : "false") : "";
  };
  std::ostringstream out;
  out << r.n << ',' << r.m << ',' << format_double(r.phi) << ',' << r.sample << ',' << r.seed
      << ',' << csv_field(to_string(r.engine)) << ',' << csv_field(to_string(r.criterion)) << ','
      << csv_field(to_string(r.status)) << ',' << (r.welfare ? std::to_string(*r.welfare) : "")
      << ',' << r.elapsed_ns << ',' << r.states << ',' << flag(r.ef_feasible) << ','
      << flag(r.prop_feasible) << "\r\n";
  return out.str();
}

std::string format_csv(const std::vector<BenchRecord>& records) {
  std::string out(kCsvHeader);
  out += "\r\n";
  for (const auto& r : records) out += format_csv_row(r);
  return out;
}

std::vector<BenchRecord> parse_csv(std::string_view text) {
  const auto rows = split_csv(text);
  if (rows.empty()) throw InputError("CSV is empty");
  std::string header;
  for (std::size_t i = 0; i < rows[0].size(); ++i) {
    if (i) header += ',';
    header += rows[0][i];
  }
  if (header != kCsvHeader) throw InputError("unexpected CSV header");
  std::vector<BenchRecord> records;
  for (std::size_t line = 1; line < rows.size(); ++line) {
    const auto& f = rows[line];
    if (f.size() != 13) {
      throw InputError("CSV row " + std::to_string(line) + " has " + std::to_string(f.size()) +
                       " fields");
    }
    BenchRecord r;
    r.n = parse_number<int>(f[0], "n");
    r.m = parse_number<int>(f[1], "m");
    r.phi = parse_number<double>(f[2], "phi");
    r.sample = parse_number<int>(f[3], "sample");
    r.seed = parse_number<std::uint64_t>(f[4], "seed");
    r.engine = parse_engine(f[5]);
    r.criterion = parse_criterion(f[6]);
    if (f[7] == "ok") r.status = RowStatus::kOk;
    else if (f[7] == "timeout") r.status = RowStatus::kTimeout;
    else if (f[7] == "infeasible") r.status = RowStatus::kInfeasible;
    else throw InputError("bad CSV status '" + f[7] + "'");
    if (!f[8].empty()) r.welfare = parse_number<Value>(f[8], "welfare");
    r.elapsed_ns = parse_number<std::int64_t>(f[9], "elapsed_ns");
    r.states = parse_number<std::int64_t>(f[10], "states");
    r.ef_feasible = parse_flag(f[11]);
    r.prop_feasible = parse_flag(f[12]);
    records.push_back(std::move(r));
  }
  return records;
}

void write_csv(const std::vector<BenchRecord>& records, const std::filesystem::path& path) {
  write_text_file(path, format_csv(records));
}

}  // namespace fairum
