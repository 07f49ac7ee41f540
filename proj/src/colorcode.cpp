#include "parsched/colorcode.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <random>

namespace parsched {
namespace colorcode {

namespace {

constexpr int kTableGuard = 20;

void check_variant(const Instance& inst, int k) {
  if (!inst.prec.empty()) throw DispatchError("colorcode: precedence constraints not supported");
  if (k > kTableGuard) throw DispatchError("colorcode: k exceeds the 2^k table guard");
}

std::uint64_t draw_below(std::mt19937_64& rng, std::uint64_t k) {
  std::uint64_t lim = std::numeric_limits<std::uint64_t>::max() / k * k;
  std::uint64_t r = rng();
  while (r >= lim) r = rng();
  return r % k;
}

int effective_machines(const Instance& inst, int k) {
  if (inst.machines.kind == MachineKind::Unrelated) return inst.machine_count();
  return std::min(inst.machine_count(), std::max(k, 1));
}

}  // namespace

ColorAssignment random_coloring(int n, int k, std::uint64_t seed) {
  ColorAssignment c;
  c.k = k;
  c.seed = seed;
  c.color.resize(static_cast<std::size_t>(n));
  std::mt19937_64 rng(seed);
  for (int i = 0; i < n; ++i)
    c.color[static_cast<std::size_t>(i)] = 1 + static_cast<int>(draw_below(rng, static_cast<std::uint64_t>(k)));
  return c;
}

ColorAssignment identity_coloring(int n) {
  ColorAssignment c;
  c.k = n;
  c.color.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) c.color[static_cast<std::size_t>(i)] = i + 1;
  return c;
}

SubsetTable machine_dp(const Instance& inst, int machine, const ColorAssignment& c) {
  int k = c.k;
  if (k > kTableGuard) throw DispatchError("colorcode: k exceeds the 2^k table guard");
  for (int col : c.color)
    if (col < 1 || col > k) throw DispatchError("colorcode: color out of range");

  SubsetTable table;
  table.machine = machine;
  std::size_t size = std::size_t{1} << k;
  table.best.assign(size, kInfeasible);
  table.from.assign(size, {-1, -1});
  table.best[0] = 0;

  std::vector<std::vector<int>> by_color(static_cast<std::size_t>(k + 1));
  for (int j = 0; j < inst.job_count(); ++j)
    by_color[static_cast<std::size_t>(c.color[static_cast<std::size_t>(j)])].push_back(j);

  for (std::uint32_t mask = 1; mask < size; ++mask) {
    Time best = kInfeasible;
    std::pair<int, int> from{-1, -1};
    std::uint32_t bits = mask;
    while (bits) {
      int l = std::countr_zero(bits);
      bits &= bits - 1;
      Time base = table.best[mask ^ (1u << l)];
      if (base == kInfeasible) continue;
      for (int j : by_color[static_cast<std::size_t>(l + 1)]) {
        const Job& job = inst.jobs[static_cast<std::size_t>(j)];
        Time completion = std::max(job.release, base) + inst.proc_on(j, machine);
        if (job.has_deadline() && completion > job.deadline) continue;
        if (completion < best) {
          best = completion;
          from = {l, j};
        }
      }
    }
    table.best[mask] = best;
    table.from[mask] = from;
  }
  return table;
}

std::vector<std::uint8_t> threshold_table(const SubsetTable& table, Time cmax) {
  std::vector<std::uint8_t> a(table.best.size());
  for (std::size_t i = 0; i < table.best.size(); ++i) a[i] = table.best[i] <= cmax ? 1 : 0;
  return a;
}

std::vector<std::uint8_t> convolve_bool(const std::vector<std::uint8_t>& a,
                                        const std::vector<std::uint8_t>& b, int k) {
  std::size_t size = std::size_t{1} << k;
  if (a.size() != size || b.size() != size)
    throw StructuralError("convolve_bool: table sizes must be 2^k");

  auto ranked_zeta = [&](const std::vector<std::uint8_t>& f) {
    std::vector<std::vector<std::int64_t>> z(static_cast<std::size_t>(k + 1),
                                             std::vector<std::int64_t>(size, 0));
    for (std::size_t x = 0; x < size; ++x)
      if (f[x]) z[static_cast<std::size_t>(std::popcount(x))][x] = 1;
    for (auto& layer : z)
      for (int d = 0; d < k; ++d)
        for (std::size_t x = 0; x < size; ++x)
          if (x & (std::size_t{1} << d)) layer[x] += layer[x ^ (std::size_t{1} << d)];
    return z;
  };

  auto za = ranked_zeta(a);
  auto zb = ranked_zeta(b);

  std::vector<std::uint8_t> out(size, 0);
  std::vector<std::int64_t> tmp(size);
  for (int d = 0; d <= k; ++d) {
    std::fill(tmp.begin(), tmp.end(), 0);
    for (int e = 0; e <= d; ++e)
      for (std::size_t x = 0; x < size; ++x)
        tmp[x] += za[static_cast<std::size_t>(e)][x] * zb[static_cast<std::size_t>(d - e)][x];
    for (int bit = 0; bit < k; ++bit)
      for (std::size_t x = 0; x < size; ++x)
        if (x & (std::size_t{1} << bit)) tmp[x] -= tmp[x ^ (std::size_t{1} << bit)];
    for (std::size_t x = 0; x < size; ++x)
      if (std::popcount(x) == d && tmp[x] > 0) out[x] = 1;
  }
  return out;
}

std::vector<std::uint8_t> convolve_bool_naive(const std::vector<std::uint8_t>& a,
                                              const std::vector<std::uint8_t>& b, int k) {
  std::size_t size = std::size_t{1} << k;
  if (a.size() != size || b.size() != size)
    throw StructuralError("convolve_bool_naive: table sizes must be 2^k");
  std::vector<std::uint8_t> out(size, 0);
  for (std::uint32_t x = 0; x < size; ++x) {
    std::uint32_t y = 0;
    do {
      if (a[y] && b[x ^ y]) {
        out[x] = 1;
        break;
      }
      y = (y - x) & x;
    } while (y != 0);
  }
  return out;
}

std::optional<std::vector<std::uint32_t>> subset_convolution_cover(
    const std::vector<std::vector<std::uint8_t>>& tables, int k, bool naive) {
  if (tables.empty()) throw StructuralError("subset_convolution_cover: no tables");
  std::size_t size = std::size_t{1} << k;
  for (const auto& t : tables)
    if (t.size() != size) throw StructuralError("subset_convolution_cover: table sizes must be 2^k");

  auto convolve = [&](const std::vector<std::uint8_t>& a, const std::vector<std::uint8_t>& b) {
    return naive ? convolve_bool_naive(a, b, k) : convolve_bool(a, b, k);
  };

  std::size_t m = tables.size();
  // suffix[i] = A_i * ... * A_{m-1}, booleanized after every pairwise step.
  std::vector<std::vector<std::uint8_t>> suffix(m);
  suffix[m - 1] = tables[m - 1];
  for (std::size_t i = m - 1; i-- > 0;) suffix[i] = convolve(tables[i], suffix[i + 1]);

  std::uint32_t full = static_cast<std::uint32_t>(size - 1);
  if (!suffix[0][full]) return std::nullopt;

  std::vector<std::uint32_t> parts(m, 0);
  std::uint32_t rem = full;
  for (std::size_t i = 0; i + 1 < m; ++i) {
    bool found = false;
    std::uint32_t y = 0;
    do {
      if (tables[i][y] && suffix[i + 1][rem ^ y]) {
        parts[i] = y;
        rem ^= y;
        found = true;
        break;
      }
      y = (y - rem) & rem;
    } while (y != 0);
    if (!found) throw StructuralError("subset_convolution_cover: positive product without a witness");
  }
  parts[m - 1] = rem;
  if (!tables[m - 1][rem])
    throw StructuralError("subset_convolution_cover: positive product without a witness");
  return parts;
}

namespace {

std::vector<ScheduleEntry> machine_sequence(const Instance& inst, const SubsetTable& table,
                                            std::uint32_t colors, int machine) {
  std::vector<std::pair<int, int>> picks;  // (color, job), last first
  std::uint32_t mask = colors;
  while (mask) {
    auto [l, j] = table.from[mask];
    picks.emplace_back(l, j);
    mask ^= 1u << l;
  }
  std::reverse(picks.begin(), picks.end());

  std::vector<ScheduleEntry> out;
  Time clock = 0;
  for (auto [l, j] : picks) {
    const Job& job = inst.jobs[static_cast<std::size_t>(j)];
    Time start = std::max(job.release, clock);
    out.push_back({job.id, machine, start});
    clock = start + inst.proc_on(j, machine);
  }
  return out;
}

}  // namespace

std::optional<Schedule> colorful_decide(const Instance& inst, int k, Time cmax,
                                        const ColorAssignment& c) {
  check_variant(inst, k);
  if (k <= 0) return Schedule{};
  if (static_cast<int>(c.color.size()) != inst.job_count() || c.k != k)
    throw DispatchError("colorful_decide: coloring must cover every job with k colors");

  int m_eff = effective_machines(inst, k);
  bool identical = inst.machines.kind != MachineKind::Unrelated;

  std::vector<SubsetTable> tables;
  if (identical) {
    tables.push_back(machine_dp(inst, 0, c));
  } else {
    for (int i = 0; i < m_eff; ++i) tables.push_back(machine_dp(inst, i, c));
  }

  std::vector<std::vector<std::uint8_t>> thresholds;
  for (int i = 0; i < m_eff; ++i)
    thresholds.push_back(threshold_table(identical ? tables[0] : tables[static_cast<std::size_t>(i)], cmax));

  auto parts = subset_convolution_cover(thresholds, k);
  if (!parts) return std::nullopt;

  Schedule sched;
  for (int i = 0; i < m_eff; ++i) {
    const SubsetTable& table = identical ? tables[0] : tables[static_cast<std::size_t>(i)];
    auto entries = machine_sequence(inst, table, (*parts)[static_cast<std::size_t>(i)], i);
    sched.entries.insert(sched.entries.end(), entries.begin(), entries.end());
  }
  return sched;
}

int default_trials(int k) {
  double t = std::ceil(std::exp(static_cast<double>(k)) * std::log(4.0));
  if (t > 1e9) return 1'000'000'000;
  return std::max(1, static_cast<int>(t));
}

std::optional<Schedule> solve_colorcode(const Instance& inst, int k, Time cmax, int trials,
                                        std::uint64_t seed) {
  check_variant(inst, k);
  if (k <= 0) return Schedule{};
  if (k > inst.job_count()) return std::nullopt;

  if (k == inst.job_count()) {
    // Every job must be scheduled, so any injective coloring is exact and
    // one identity trial decides both directions.
    return colorful_decide(inst, k, cmax, identity_coloring(k));
  }

  for (int trial = 0; trial < trials; ++trial) {
    ColorAssignment c = random_coloring(inst.job_count(), k, seed + static_cast<std::uint64_t>(trial));
    if (auto sched = colorful_decide(inst, k, cmax, c)) return sched;
  }
  return std::nullopt;
}

namespace {

/// Optimal colorful makespan for a fixed coloring: min over color-set
/// partitions of the max per-machine B value. 3^k submask sweep per machine.
std::optional<Time> colorful_optimum(const Instance& inst, int k, const ColorAssignment& c) {
  int m_eff = effective_machines(inst, k);
  bool identical = inst.machines.kind != MachineKind::Unrelated;
  std::size_t size = std::size_t{1} << k;

  SubsetTable first = machine_dp(inst, 0, c);
  std::vector<Time> f = first.best;
  for (int i = 1; i < m_eff; ++i) {
    std::vector<Time> b = identical ? first.best : machine_dp(inst, i, c).best;
    std::vector<Time> next(size, kInfeasible);
    for (std::uint32_t x = 0; x < size; ++x) {
      std::uint32_t y = 0;
      do {
        if (f[x ^ y] != kInfeasible && b[y] != kInfeasible)
          next[x] = std::min(next[x], std::max(f[x ^ y], b[y]));
        y = (y - x) & x;
      } while (y != 0);
    }
    f = std::move(next);
  }
  Time best = f[size - 1];
  if (best == kInfeasible) return std::nullopt;
  return best;
}

bool exhaustive_is_cheap(int n, int k) {
  double total = 1;
  for (int i = 0; i < n; ++i) {
    total *= k;
    if (total > 300000) return false;
  }
  return true;
}

}  // namespace

SolveOutcome minimize_makespan(const Instance& inst, const SolveOptions& opts) {
  int k = inst.k;
  check_variant(inst, k);
  SolveOutcome outcome;
  outcome.seed = opts.seed;
  if (k <= 0) {
    outcome.solution = {Time{0}, Schedule{}};
    outcome.exact = true;
    return outcome;
  }
  int n = inst.job_count();
  if (k > n) {
    outcome.exact = true;
    return outcome;
  }

  if (k == n || exhaustive_is_cheap(n, k)) {
    outcome.exact = true;
    std::optional<Time> best;
    ColorAssignment best_coloring;
    auto consider = [&](const ColorAssignment& c) {
      if (auto value = colorful_optimum(inst, k, c)) {
        if (!best || *value < *best) {
          best = *value;
          best_coloring = c;
        }
      }
    };
    if (k == n) {
      consider(identity_coloring(n));
    } else {
      ColorAssignment c;
      c.k = k;
      c.color.assign(static_cast<std::size_t>(n), 1);
      while (true) {
        consider(c);
        int pos = 0;
        while (pos < n && c.color[static_cast<std::size_t>(pos)] == k) {
          c.color[static_cast<std::size_t>(pos)] = 1;
          ++pos;
        }
        if (pos == n) break;
        ++c.color[static_cast<std::size_t>(pos)];
      }
    }
    if (best) {
      auto sched = colorful_decide(inst, k, *best, best_coloring);
      if (!sched) throw StructuralError("colorcode: optimum without a witness schedule");
      outcome.solution = {*best, std::move(*sched)};
    }
    return outcome;
  }

  // Randomized path: binary search the makespan with one-sided trials.
  int trials = opts.trials > 0 ? opts.trials : default_trials(k);
  Time ub = 0, max_r = 0;
  for (int j = 0; j < n; ++j) {
    const Job& job = inst.jobs[static_cast<std::size_t>(j)];
    max_r = std::max(max_r, job.release);
    ub += *std::max_element(job.proc.begin(), job.proc.end());
  }
  ub += max_r;
  std::optional<Schedule> best = solve_colorcode(inst, k, ub, trials, opts.seed);
  if (!best) return outcome;

  Time lo = 0, hi = ub;
  while (lo + 1 < hi) {
    Time mid = lo + (hi - lo) / 2;
    if (auto s = solve_colorcode(inst, k, mid, trials, opts.seed)) {
      best = std::move(s);
      hi = mid;
    } else {
      lo = mid;
    }
  }
  outcome.solution = {hi, std::move(*best)};
  return outcome;
}

}  // namespace colorcode
}  // namespace parsched
