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

#include "fairum/dp.hpp"

#include <algorithm>
#include <bit>
#include <cassert>
#include <cmath>
#include <limits>
#include <string>
#include <tuple>

#include "fairum/errors.hpp"
#include "fairum/two_agent.hpp"

namespace fairum {

namespace {

using Clock = std::chrono::steady_clock;

// How the b references evolve when item k goes to agent a.
enum class RefRule {
  kUnused,
  kMaxOthers,    // PROP1: most valuable item held by agents other than i
  kMinOthers,    // PROPx: least valuable item held by agents other than i
  kMaxOwn,       // EQ1: most valuable item in p(i)
  kMinOwn,       // EQx: least valuable item in p(i)
  kPairMax,      // EF1: item maximising u_i in p(j)
  kPairMin,      // EFx: item minimising u_i in p(j)
  kBundleFirst,  // EF1, ordered instance: top-ranked item in p(j)
  kBundleLast,   // EFx, ordered instance: bottom-ranked item in p(j)
};

enum class FinalCheck { kProp, kPropWithRef, kEq, kEqWithRef, kEnvy, kEnvyWithPairRef,
                        kEnvyWithBundleRef };

struct Rules {
  int n = 0;
  int m = 0;
  bool pairwise = false;
  RefRule ref = RefRule::kUnused;
  FinalCheck check = FinalCheck::kProp;
  int num_t = 0;
  int num_b = 0;
  Value t_lo = 0;
  Value t_hi = 0;
  std::vector<Value> values;  // n x (m+1); column m is the "no item" value 0
  std::vector<Value> totals;
  std::vector<int> rank;  // position of each item in the common ranking
  // Ordered mode: lowest-index item with the same value column; m for
  // all-zero columns under EF1, which can never be the item removed.
  std::vector<int> canon;

  Value u(int agent, int item) const {
    return values[static_cast<std::size_t>(agent) * static_cast<std::size_t>(m + 1) +
                  static_cast<std::size_t>(item)];
  }
  int pair(int i, int j) const { return i * (n - 1) + (j < i ? j : j - 1); }

  void step(const Value* t, const int* b, int item, int a, Value* t_out, int* b_out) const {
    std::copy(t, t + num_t, t_out);
    std::copy(b, b + num_b, b_out);
    const int none = m;
    if (!pairwise) {
      t_out[a] += u(a, item);
      switch (ref) {
        case RefRule::kMaxOthers:
          for (int i = 0; i < n; ++i) {
            if (i != a && u(i, item) > u(i, b[i])) b_out[i] = item;
          }
          break;
        case RefRule::kMinOthers:
          for (int i = 0; i < n; ++i) {
            if (i != a && (b[i] == none || u(i, item) < u(i, b[i]))) b_out[i] = item;
          }
          break;
        case RefRule::kMaxOwn:
          if (u(a, item) > u(a, b[a])) b_out[a] = item;
          break;
        case RefRule::kMinOwn:
          if (b[a] == none || u(a, item) < u(a, b[a])) b_out[a] = item;
          break;
        default:
          break;
      }
      return;
    }
    for (int i = 0; i < n; ++i) {
      const Value gain = u(i, item);
      if (i == a) {
        for (int j = 0; j < n; ++j) {
          if (j != i) t_out[pair(i, j)] += gain;
        }
      } else {
        const int p = pair(i, a);
        t_out[p] -= gain;
        if (ref == RefRule::kPairMax) {
          if (gain > u(i, b[p])) b_out[p] = item;
        } else if (ref == RefRule::kPairMin) {
          if (b[p] == none || gain < u(i, b[p])) b_out[p] = item;
        }
      }
    }
    if (ref == RefRule::kBundleFirst) {
      const int c = canon[static_cast<std::size_t>(item)];
      if (c != none && (b[a] == none || rank[static_cast<std::size_t>(c)] <
                                            rank[static_cast<std::size_t>(b[a])])) {
        b_out[a] = c;
      }
    } else if (ref == RefRule::kBundleLast) {
      const int c = canon[static_cast<std::size_t>(item)];
      if (b[a] == none || rank[static_cast<std::size_t>(c)] >
                              rank[static_cast<std::size_t>(b[a])]) {
        b_out[a] = c;
      }
    }
  }

  bool feasible(const Value* t, const int* b) const {
    switch (check) {
      case FinalCheck::kProp:
        for (int i = 0; i < n; ++i) {
          if (n * t[i] < totals[static_cast<std::size_t>(i)]) return false;
        }
        return true;
      case FinalCheck::kPropWithRef:
        for (int i = 0; i < n; ++i) {
          if (n * (t[i] + u(i, b[i])) < totals[static_cast<std::size_t>(i)]) return false;
        }
        return true;
      case FinalCheck::kEq:
        for (int i = 1; i < n; ++i) {
          if (t[i] != t[0]) return false;
        }
        return true;
      case FinalCheck::kEqWithRef:
        for (int i = 0; i < n; ++i) {
          for (int j = 0; j < n; ++j) {
            if (t[j] < t[i] - u(i, b[i])) return false;
          }
        }
        return true;
      case FinalCheck::kEnvy:
        for (int p = 0; p < num_t; ++p) {
          if (t[p] < 0) return false;
        }
        return true;
      case FinalCheck::kEnvyWithPairRef:
        for (int i = 0; i < n; ++i) {
          for (int j = 0; j < n; ++j) {
            if (i == j) continue;
            const int p = pair(i, j);
            if (t[p] + u(i, b[p]) < 0) return false;
          }
        }
        return true;
      case FinalCheck::kEnvyWithBundleRef:
        for (int i = 0; i < n; ++i) {
          for (int j = 0; j < n; ++j) {
            if (i == j) continue;
            if (t[pair(i, j)] + u(i, b[j]) < 0) return false;
          }
        }
        return true;
    }
    return false;
  }
};

bool use_ordered_mode(const Instance& inst, Criterion crit, const DpOptions& options) {
  return options.ordered_fast_path && inst.num_agents() >= 2 &&
         (crit == Criterion::kEF1 || crit == Criterion::kEFx) && inst.is_ordered();
}

Rules make_rules(const Instance& inst, Criterion crit, bool ordered_mode) {
  Rules r;
  r.n = inst.num_agents();
  r.m = inst.num_items();
  if (r.n > std::numeric_limits<std::uint16_t>::max()) {
    throw ResourceError("dynamic program supports at most 65535 agents");
  }
  r.values.assign(static_cast<std::size_t>(r.n) * static_cast<std::size_t>(r.m + 1), 0);
  for (int i = 0; i < r.n; ++i) {
    for (int j = 0; j < r.m; ++j) {
      r.values[static_cast<std::size_t>(i) * static_cast<std::size_t>(r.m + 1) +
               static_cast<std::size_t>(j)] = inst.value(i, j);
    }
    r.totals.push_back(inst.total(i));
  }
  const Value cap = inst.value_cap();
  if (is_peragent_criterion(crit)) {
    r.num_t = r.n;
    r.t_lo = 0;
    r.t_hi = cap;
    switch (crit) {
      case Criterion::kProp: r.check = FinalCheck::kProp; break;
      case Criterion::kProp1:
        r.ref = RefRule::kMaxOthers;
        r.check = FinalCheck::kPropWithRef;
        break;
      case Criterion::kPropX:
        r.ref = RefRule::kMinOthers;
        r.check = FinalCheck::kPropWithRef;
        break;
      case Criterion::kEQ: r.check = FinalCheck::kEq; break;
      case Criterion::kEQ1:
        r.ref = RefRule::kMaxOwn;
        r.check = FinalCheck::kEqWithRef;
        break;
      case Criterion::kEQx:
        r.ref = RefRule::kMinOwn;
        r.check = FinalCheck::kEqWithRef;
        break;
      default: break;
    }
    r.num_b = r.ref == RefRule::kUnused ? 0 : r.n;
    if (ordered_mode) throw UsageError("ordered mode applies only to ef1/efx");
    return r;
  }
  if (!is_pairwise_criterion(crit)) {
    throw UsageError("no dynamic program for criterion " + std::string(to_string(crit)));
  }
  Value guard = 0;
  if (__builtin_mul_overflow(static_cast<Value>(r.n) * r.n, cap, &guard)) {
    throw ResourceError("pairwise objective n^2 * V overflows 64-bit integers");
  }
  r.pairwise = true;
  r.num_t = r.n * (r.n - 1);
  r.t_lo = -cap;
  r.t_hi = cap;
  if (crit == Criterion::kEF) {
    r.check = FinalCheck::kEnvy;
  } else if (ordered_mode) {
    if (!inst.is_ordered()) throw UsageError("ordered mode needs an ordered instance");
    r.ref = crit == Criterion::kEF1 ? RefRule::kBundleFirst : RefRule::kBundleLast;
    r.check = FinalCheck::kEnvyWithBundleRef;
    r.num_b = r.n;
    const auto order = inst.common_ranking();
    r.rank.assign(order.size(), 0);
    for (std::size_t pos = 0; pos < order.size(); ++pos) {
      r.rank[static_cast<std::size_t>(order[pos])] = static_cast<int>(pos);
    }
    auto same_column = [&](int x, int y) {
      for (int i = 0; i < r.n; ++i) {
        if (r.u(i, x) != r.u(i, y)) return false;
      }
      return true;
    };
    r.canon.resize(static_cast<std::size_t>(r.m));
    for (int j = 0; j < r.m; ++j) {
      int c = j;
      for (int k = 0; k < j; ++k) {
        if (same_column(j, k)) {
          c = k;
          break;
        }
      }
      if (crit == Criterion::kEF1 && same_column(j, r.m)) c = r.m;
      r.canon[static_cast<std::size_t>(j)] = c;
    }
  } else {
    r.ref = crit == Criterion::kEF1 ? RefRule::kPairMax : RefRule::kPairMin;
    r.check = FinalCheck::kEnvyWithPairRef;
    r.num_b = r.num_t;
  }
  if (ordered_mode && crit == Criterion::kEF) {
    throw UsageError("ordered mode applies only to ef1/efx");
  }
  return r;
}

// Packs t offsets and b indices into 64-bit words; a field never straddles
// two words.
class KeyCodec {
 public:
  KeyCodec(const Rules& rules) : t_lo_(rules.t_lo), num_t_(rules.num_t) {
    const int t_bits = bit_width_of(static_cast<std::uint64_t>(rules.t_hi - rules.t_lo));
    const int b_bits = bit_width_of(static_cast<std::uint64_t>(rules.m));
    int word = 0;
    int shift = 0;
    auto place = [&](int bits) {
      if (shift + bits > 64) {
        ++word;
        shift = 0;
      }
      const std::uint64_t mask = bits == 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << bits) - 1);
      slots_.push_back({word, shift, mask});
      shift += bits;
    };
    for (int f = 0; f < rules.num_t; ++f) place(t_bits);
    for (int f = 0; f < rules.num_b; ++f) place(b_bits);
    words_ = slots_.empty() ? 1 : word + 1;
  }

  int words() const { return words_; }

  void encode(const Value* t, const int* b, std::uint64_t* out) const {
    std::fill(out, out + words_, 0);
    for (std::size_t f = 0; f < slots_.size(); ++f) {
      const auto& s = slots_[f];
      const std::uint64_t raw =
          f < static_cast<std::size_t>(num_t_)
              ? static_cast<std::uint64_t>(t[f] - t_lo_)
              : static_cast<std::uint64_t>(b[f - static_cast<std::size_t>(num_t_)]);
      out[s.word] |= (raw & s.mask) << s.shift;
    }
  }

  void decode(const std::uint64_t* in, Value* t, int* b) const {
    for (std::size_t f = 0; f < slots_.size(); ++f) {
      const auto& s = slots_[f];
      const std::uint64_t raw = (in[s.word] >> s.shift) & s.mask;
      if (f < static_cast<std::size_t>(num_t_)) {
        t[f] = static_cast<Value>(raw) + t_lo_;
      } else {
        b[f - static_cast<std::size_t>(num_t_)] = static_cast<int>(raw);
      }
    }
  }

 private:
  struct Slot {
    int word;
    int shift;
    std::uint64_t mask;
  };

  static int bit_width_of(std::uint64_t range) { return static_cast<int>(std::bit_width(range)); }

  Value t_lo_;
  int num_t_;
  int words_ = 1;
  std::vector<Slot> slots_;
};

// States reached after a fixed number of items, with back-pointers.
struct Level {
  std::vector<std::uint64_t> keys;
  std::vector<std::uint32_t> parent;
  std::vector<std::uint16_t> agent;

  std::size_t size() const { return parent.size(); }
};

std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Open-addressing set over the keys of one level under construction.
class LevelBuilder {
 public:
  LevelBuilder(Level& level, int words, std::size_t expected)
      : level_(level), words_(static_cast<std::size_t>(words)) {
    std::size_t cap = 16;
    while (cap < expected * 2) cap <<= 1;
    slots_.assign(cap, kEmpty);
  }

  // First writer of a key wins; later duplicates are dropped.
  void insert(const std::uint64_t* key, std::uint32_t parent, std::uint16_t agent) {
    if ((level_.size() + 1) * 2 > slots_.size()) grow();
    std::size_t mask = slots_.size() - 1;
    std::size_t pos = hash(key) & mask;
    while (slots_[pos] != kEmpty) {
      if (equal(slots_[pos], key)) return;
      pos = (pos + 1) & mask;
    }
    slots_[pos] = static_cast<std::uint32_t>(level_.size());
    level_.keys.insert(level_.keys.end(), key, key + words_);
    level_.parent.push_back(parent);
    level_.agent.push_back(agent);
  }

 private:
  static constexpr std::uint32_t kEmpty = std::numeric_limits<std::uint32_t>::max();

  std::uint64_t hash(const std::uint64_t* key) const {
    std::uint64_t h = 0x9e3779b97f4a7c15ULL;
    for (std::size_t w = 0; w < words_; ++w) h = mix64(h ^ key[w]);
    return h;
  }

  bool equal(std::uint32_t index, const std::uint64_t* key) const {
    const std::uint64_t* stored = level_.keys.data() + static_cast<std::size_t>(index) * words_;
    return std::equal(stored, stored + words_, key);
  }

  void grow() {
    std::vector<std::uint32_t> old(slots_.size() * 2, kEmpty);
    old.swap(slots_);
    const std::size_t mask = slots_.size() - 1;
    for (std::size_t idx = 0; idx < level_.size(); ++idx) {
      std::size_t pos = hash(level_.keys.data() + idx * words_) & mask;
      while (slots_[pos] != kEmpty) pos = (pos + 1) & mask;
      slots_[pos] = static_cast<std::uint32_t>(idx);
    }
  }

  Level& level_;
  std::size_t words_;
  std::vector<std::uint32_t> slots_;
};

void check_deadline(const DpOptions& options) {
  if (options.deadline && Clock::now() > *options.deadline) {
    throw TimeoutError("dynamic program exceeded its time budget");
  }
}

DpSolution run_levels(const Instance& inst, const Rules& rules, const DpOptions& options,
                      bool ordered_mode) {
  const auto start = Clock::now();
  const KeyCodec codec(rules);
  const auto words = static_cast<std::size_t>(codec.words());
  const int m = rules.m;
  const int n = rules.n;

  std::vector<Level> levels(static_cast<std::size_t>(m) + 1);
  std::vector<Value> t(static_cast<std::size_t>(rules.num_t), 0);
  std::vector<int> b(static_cast<std::size_t>(rules.num_b), m);
  std::vector<Value> t_next(t.size());
  std::vector<int> b_next(b.size());
  std::vector<std::uint64_t> key(words);

  codec.encode(t.data(), b.data(), key.data());
  levels[0].keys = key;
  levels[0].parent.push_back(0);
  levels[0].agent.push_back(0);

  DpSolution solution;
  solution.ordered_mode = ordered_mode;
  auto& stats = solution.outcome.stats;

  for (int k = 0; k < m; ++k) {
    const Level& current = levels[static_cast<std::size_t>(k)];
    Level& next = levels[static_cast<std::size_t>(k) + 1];
    LevelBuilder builder(next, codec.words(),
                         std::min<std::size_t>(current.size() * static_cast<std::size_t>(n),
                                               std::size_t{1} << 24));
    for (std::size_t idx = 0; idx < current.size(); ++idx) {
      if ((idx & 1023) == 0) check_deadline(options);
      codec.decode(current.keys.data() + idx * words, t.data(), b.data());
      for (int a = 0; a < n; ++a) {
        rules.step(t.data(), b.data(), k, a, t_next.data(), b_next.data());
        codec.encode(t_next.data(), b_next.data(), key.data());
        builder.insert(key.data(), static_cast<std::uint32_t>(idx),
                       static_cast<std::uint16_t>(a));
      }
    }
    const auto count = static_cast<std::int64_t>(next.size());
    stats.states_per_level.push_back(count);
    stats.states_explored += count;
    if (options.max_states > 0 && stats.states_explored > options.max_states) {
      throw ResourceError("dynamic program exceeded its state budget of " +
                          std::to_string(options.max_states));
    }
    if (count > std::numeric_limits<std::uint32_t>::max() - 1) {
      throw ResourceError("dynamic program level too large");
    }
  }

  // Best feasible final state: max sum of t, then lexicographically
  // smallest (t, b).
  const Level& last = levels[static_cast<std::size_t>(m)];
  std::optional<std::size_t> best;
  Value best_objective = 0;
  DpState best_state;
  for (std::size_t idx = 0; idx < last.size(); ++idx) {
    codec.decode(last.keys.data() + idx * words, t.data(), b.data());
    if (!rules.feasible(t.data(), b.data())) continue;
    Value objective = 0;
    for (Value x : t) objective += x;
    const bool better =
        !best || objective > best_objective ||
        (objective == best_objective &&
         std::tie(t, b) < std::tie(best_state.t, best_state.b));
    if (better) {
      best = idx;
      best_objective = objective;
      best_state.t = t;
      best_state.b = b;
    }
  }

  if (best) {
    std::vector<int> owner(static_cast<std::size_t>(m), 0);
    std::size_t idx = *best;
    for (int k = m; k >= 1; --k) {
      const Level& level = levels[static_cast<std::size_t>(k)];
      owner[static_cast<std::size_t>(k) - 1] = level.agent[idx];
      idx = level.parent[idx];
    }
    Allocation alloc(std::move(owner));
    solution.outcome.welfare = welfare(inst, alloc);
    solution.outcome.status = SolveStatus::kFound;
    solution.outcome.allocation = std::move(alloc);
    solution.final_state = std::move(best_state);
    if (rules.pairwise) {
      Value totals = 0;
      for (Value x : rules.totals) totals += x;
      assert(best_objective == n * solution.outcome.welfare - totals);
    } else {
      assert(best_objective == solution.outcome.welfare);
    }
  }
  stats.elapsed_ns =
      std::chrono::duration_cast<std::chrono::nanoseconds>(Clock::now() - start).count();
  return solution;
}

}  // namespace

bool is_peragent_criterion(Criterion crit) {
  switch (crit) {
    case Criterion::kProp:
    case Criterion::kProp1:
    case Criterion::kPropX:
    case Criterion::kEQ:
    case Criterion::kEQ1:
    case Criterion::kEQx:
      return true;
    default:
      return false;
  }
}

bool is_pairwise_criterion(Criterion crit) {
  return crit == Criterion::kEF || crit == Criterion::kEF1 || crit == Criterion::kEFx;
}

DpSolution solve_dp(const Instance& inst, Criterion crit, const DpOptions& options) {
  if (crit == Criterion::kNone) {
    throw UsageError("solve_dp needs a fairness criterion, got none");
  }
  const bool ordered = use_ordered_mode(inst, crit, options);
  const Rules rules = make_rules(inst, crit, ordered);
  return run_levels(inst, rules, options, ordered);
}

SolveOutcome solve_um_within_peragent(const Instance& inst, Criterion crit,
                                      const DpOptions& options) {
  if (!is_peragent_criterion(crit)) {
    throw UsageError("per-agent program handles prop/prop1/propx/eq/eq1/eqx, got " +
                     std::string(to_string(crit)));
  }
  return solve_dp(inst, crit, options).outcome;
}

SolveOutcome solve_um_within_pairwise(const Instance& inst, Criterion crit,
                                      const DpOptions& options) {
  if (!is_pairwise_criterion(crit)) {
    throw UsageError("pairwise program handles ef/ef1/efx, got " +
                     std::string(to_string(crit)));
  }
  return solve_dp(inst, crit, options).outcome;
}

SolveOutcome solve_um_within(const Instance& inst, Criterion crit, const DpOptions& options) {
  if (crit != Criterion::kNone) return solve_dp(inst, crit, options).outcome;
  const auto start = Clock::now();
  auto [w, alloc] = um_welfare(inst);
  SolveOutcome out;
  out.status = SolveStatus::kFound;
  out.welfare = w;
  out.allocation = std::move(alloc);
  out.stats.elapsed_ns =
      std::chrono::duration_cast<std::chrono::nanoseconds>(Clock::now() - start).count();
  return out;
}

DpState replay_state(const Instance& inst, Criterion crit, const Allocation& alloc,
                     bool ordered_mode) {
  validate(inst, alloc);
  const Rules rules = make_rules(inst, crit, ordered_mode);
  DpState state{std::vector<Value>(static_cast<std::size_t>(rules.num_t), 0),
                std::vector<int>(static_cast<std::size_t>(rules.num_b), rules.m)};
  DpState next = state;
  for (int k = 0; k < rules.m; ++k) {
    rules.step(state.t.data(), state.b.data(), k, alloc.owner(k), next.t.data(),
               next.b.data());
    std::swap(state, next);
  }
  return state;
}

long double state_bound_per_level(const Instance& inst, Criterion crit) {
  const long double n = inst.num_agents();
  const long double v = static_cast<long double>(inst.value_cap());
  const long double items = static_cast<long double>(inst.num_items()) + 1.0L;
  const long double pairs = n * (n - 1.0L);
  switch (crit) {
    case Criterion::kProp:
    case Criterion::kEQ:
      return std::pow(v + 1.0L, n);
    case Criterion::kProp1:
    case Criterion::kPropX:
    case Criterion::kEQ1:
    case Criterion::kEQx:
      return std::pow(v + 1.0L, n) * std::pow(items, n);
    case Criterion::kEF:
      return std::pow(2.0L * v + 1.0L, pairs);
    case Criterion::kEF1:
    case Criterion::kEFx:
      return std::pow(2.0L * v + 1.0L, pairs) * std::pow(items, pairs);
    case Criterion::kNone:
      break;
  }
  throw UsageError("no state bound for criterion none");
}

Decision decide_exists_um_and_fair(const Instance& inst, Criterion crit,
                                   const DpOptions& options) {
  if (crit == Criterion::kNone) {
    throw UsageError("decide needs a fairness criterion, got none");
  }
  Decision decision;
  decision.w0 = um_welfare(inst).first;
  const bool fast = inst.num_agents() == 2 &&
                    (crit == Criterion::kEF1 || crit == Criterion::kProp1 ||
                     crit == Criterion::kEQ1);
  if (fast) {
    decision.two_agent_path = true;
    decision.answer = exists_um_and_fair_2(inst, crit).answer;
    if (decision.answer) {
      decision.w1 = decision.w0;
#ifndef NDEBUG
      const auto check = solve_dp(inst, crit, options).outcome;
      assert(check.found() && check.welfare == decision.w0);
#endif
      return decision;
    }
  }
  const SolveOutcome within = solve_dp(inst, crit, options).outcome;
  if (within.found()) decision.w1 = within.welfare;
  const bool dp_answer = decision.w1 && *decision.w1 == decision.w0;
  if (fast) {
    assert(!dp_answer);
    (void)dp_answer;
  } else {
    decision.answer = dp_answer;
  }
  return decision;
}

}  // namespace fairum
