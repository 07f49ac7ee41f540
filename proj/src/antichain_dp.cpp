#include "parsched/antichain_dp.hpp"

#include <algorithm>
#include <bit>
#include <set>

#include "parsched/polysolvers.hpp"

namespace parsched {
namespace antichain_dp {

namespace {

void check_variant(const Instance& inst) {
  if (inst.machines.kind == MachineKind::Unrelated)
    throw DispatchError("antichain_dp: identical machines only");
  for (const Job& j : inst.jobs) {
    for (Time p : j.proc)
      if (p != 1) throw DispatchError("antichain_dp: unit processing times only");
    if (j.has_deadline()) throw DispatchError("antichain_dp: deadlines not supported");
  }
}

/// Greedy tail: `need` jobs from `candidates` at slots in (t, cmax], at most
/// m per slot, each no earlier than its release slot, smallest rho first.
std::optional<std::vector<ScheduleEntry>> greedy_tail(const PrecedenceGraph& g, const NodeSet& candidates,
                                                      int need, int m, Time t, Time cmax) {
  std::vector<ScheduleEntry> out;
  if (need <= 0) return out;
  std::vector<int> jobs = candidates.to_vector();
  std::stable_sort(jobs.begin(), jobs.end(), [&](int a, int b) { return g.rho(a) < g.rho(b); });
  Time cur = t;
  int used = m;  // force an advance before the first placement
  for (int j : jobs) {
    if (static_cast<int>(out.size()) == need) break;
    Time s = std::max(g.rho(j), used >= m ? cur + 1 : cur);
    if (s > cur) {
      cur = s;
      used = 0;
    }
    if (cur > cmax) break;
    out.push_back({g.id_of(j), used, cur - 1});
    ++used;
  }
  if (static_cast<int>(out.size()) < need) return std::nullopt;
  return out;
}

/// Slots worth looking at: any left-shifted schedule of k unit jobs only
/// completes jobs within k slots of some release slot (or of slot zero).
std::vector<Time> event_slots(const PrecedenceGraph& g, const NodeSet& horizon, int k, Time cmax) {
  std::set<Time> ev;
  ev.insert(0);
  for (Time i = 1; i <= std::min<Time>(k, cmax); ++i) ev.insert(i);
  horizon.for_each([&](int j) {
    for (Time i = 0; i <= k; ++i) {
      Time t = g.rho(j) + i;
      if (t >= 1 && t <= cmax) ev.insert(t);
    }
  });
  return {ev.begin(), ev.end()};
}

}  // namespace

DpContext::DpContext(const Instance& inst, Time cmax)
    : inst_(inst),
      g_(PrecedenceGraph::build(inst)),
      cmax_(cmax),
      m_(inst.machine_count()),
      horizon_(g_.time_mask(cmax)) {
  check_variant(inst);
}

int DpContext::intern(const Antichain& a) {
  auto [it, fresh] = ids_.emplace(a, static_cast<int>(chains_.size()));
  if (fresh) {
    chains_.push_back(a);
    thetas_.emplace_back();
  }
  return it->second;
}

const DpContext::ThetaEntry& DpContext::theta_entry(int id) {
  if (thetas_[static_cast<std::size_t>(id)]) return *thetas_[static_cast<std::size_t>(id)];
  Antichain a = chains_[static_cast<std::size_t>(id)];  // interning below may reallocate
  if (a.empty()) {
    thetas_[static_cast<std::size_t>(id)] = ThetaEntry{0, {}, -1};
    return *thetas_[static_cast<std::size_t>(id)];
  }

  NodeSet preds = g_.pred_set(a);
  ThetaEntry best{kNoDeadline, {}, -1};
  int sz = a.size();
  if (sz > 25) throw DispatchError("compute_S: antichain too large for subset iteration");
  for (std::uint32_t sub = 1; sub < (1u << sz); ++sub) {
    if (std::popcount(sub) > m_) continue;
    std::vector<int> x;
    Time ready = 0;
    NodeSet rest = preds;
    for (int b = 0; b < sz; ++b) {
      if (!(sub & (1u << b))) continue;
      int node = a.nodes[static_cast<std::size_t>(b)];
      x.push_back(node);
      ready = std::max(ready, g_.rho(node));
      rest.reset(node);
    }
    int next = intern(g_.maximals_antichain(rest));
    Time below = theta_entry(next).value;
    Time cand = std::max(ready, below + 1);
    if (cand < best.value) best = ThetaEntry{cand, std::move(x), next};
  }
  thetas_[static_cast<std::size_t>(id)] = std::move(best);
  return *thetas_[static_cast<std::size_t>(id)];
}

Time DpContext::theta(const Antichain& a) {
  if (!g_.is_antichain(a.nodes)) throw DispatchError("compute_S: argument is not an antichain");
  return theta_entry(intern(a)).value;
}

bool DpContext::compute_S(const Antichain& a, Time t) {
  if (t < 0) return false;
  if (a.empty()) return true;
  if (t == 0) return false;
  for (int x : a.nodes)
    if (g_.rho(x) > t) return false;  // A must lie inside G^t
  if (!g_.is_antichain(a.nodes)) throw DispatchError("compute_S: argument is not an antichain");
  NodeSet preds = g_.pred_set(a);
  if (preds.count() > m_ * t) return false;  // pigeonhole
  return theta_entry(intern(a)).value <= t;
}

std::vector<ScheduleEntry> DpContext::witness_entries(const Antichain& a) {
  std::vector<ScheduleEntry> out;
  int id = intern(a);
  while (!chains_[static_cast<std::size_t>(id)].empty()) {
    ThetaEntry e = theta_entry(id);
    int machine = 0;
    for (int j : e.scheduled_last) out.push_back({g_.id_of(j), machine++, e.value - 1});
    id = e.next;
  }
  return out;
}

std::optional<std::vector<ScheduleEntry>> DpContext::fill(const Antichain& a, Time t) {
  if (!compute_S(a, t)) return std::nullopt;
  NodeSet preds = g_.pred_set(a);
  int need = inst_.k - preds.count();
  NodeSet remaining = horizon_;
  remaining.subtract(preds);
  return greedy_tail(g_, g_.minimals(remaining), need, m_, t, cmax_);
}

namespace {

/// Forward evaluation over event slots: S rows are kept per slot, indexed by
/// interned antichain id, and a missing predecessor entry reads as false.
struct ForwardTable {
  const PrecedenceGraph& g;
  int m;
  std::unordered_map<Antichain, int, AntichainHash> ids;
  std::vector<Antichain> chains;

  struct Cell {
    std::vector<int> x;  // jobs scheduled at this slot (empty = idle carry)
    Time prev_t = -1;
    int prev_id = -1;
  };
  std::map<Time, std::unordered_map<int, Cell>> rows;  // only true entries stored

  explicit ForwardTable(const PrecedenceGraph& graph, int machines) : g(graph), m(machines) {}

  int intern(const Antichain& a) {
    auto [it, fresh] = ids.emplace(a, static_cast<int>(chains.size()));
    if (fresh) chains.push_back(a);
    return it->second;
  }

  bool is_true(Time t, const Antichain& a) {
    if (a.empty()) return t >= 0;  // base case, never depth-restricted
    auto row = rows.find(t);
    if (row == rows.end()) return false;
    return row->second.count(intern(a)) != 0;
  }

  /// Evaluate S(A,t) from the previous row; records the witness when true.
  bool evaluate(const Antichain& a, Time t, Time prev_t) {
    if (a.empty()) {
      rows[t].emplace(intern(a), Cell{{}, prev_t, -1});
      return true;
    }
    if (t <= 0) return false;

    std::vector<int> predv = g.pred_set(a).to_vector();
    int psz = static_cast<int>(predv.size());
    if (psz > 63) throw DispatchError("antichain_dp: predecessor set too large for the table");
    if (static_cast<Time>(psz) > static_cast<Time>(m) * t) return false;  // pigeonhole
    std::vector<std::uint64_t> lsucc(static_cast<std::size_t>(psz), 0);
    for (int u = 0; u < psz; ++u)
      for (int v = 0; v < psz; ++v)
        if (g.leq(predv[static_cast<std::size_t>(u)], predv[static_cast<std::size_t>(v)]))
          lsucc[static_cast<std::size_t>(u)] |= std::uint64_t{1} << v;
    std::vector<int> a_local;
    for (int x : a.nodes)
      a_local.push_back(static_cast<int>(std::lower_bound(predv.begin(), predv.end(), x) - predv.begin()));

    std::uint64_t full = psz == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << psz) - 1;
    int sz = a.size();
    for (std::uint32_t sub = 0; sub < (1u << sz); ++sub) {
      if (std::popcount(sub) > m) continue;
      std::uint64_t rest = full;
      bool released = true;
      for (int b = 0; b < sz; ++b)
        if (sub & (1u << b)) {
          if (g.rho(a.nodes[static_cast<std::size_t>(b)]) > t) released = false;
          rest &= ~(std::uint64_t{1} << a_local[static_cast<std::size_t>(b)]);
        }
      if (!released) continue;
      Antichain next;
      for (int u = 0; u < psz; ++u) {
        if (!(rest & (std::uint64_t{1} << u))) continue;
        if ((lsucc[static_cast<std::size_t>(u)] & rest) == (std::uint64_t{1} << u))
          next.nodes.push_back(predv[static_cast<std::size_t>(u)]);
      }
      if (!is_true(prev_t, next)) continue;

      Cell cell;
      cell.prev_t = prev_t;
      cell.prev_id = next.empty() ? -1 : intern(next);
      for (int b = 0; b < sz; ++b)
        if (sub & (1u << b)) cell.x.push_back(a.nodes[static_cast<std::size_t>(b)]);
      rows[t].emplace(intern(a), std::move(cell));
      return true;
    }
    return false;
  }

  std::vector<ScheduleEntry> reconstruct(const Antichain& a, Time t) {
    std::vector<ScheduleEntry> out;
    int id = intern(a);
    Time at = t;
    while (id != -1 && !chains[static_cast<std::size_t>(id)].empty()) {
      const Cell& cell = rows.at(at).at(id);
      int machine = 0;
      for (int j : cell.x) out.push_back({g.id_of(j), machine++, at - 1});
      id = cell.prev_id;
      at = cell.prev_t;
    }
    return out;
  }

  std::size_t entries() const {
    std::size_t n = 0;
    for (const auto& [t, row] : rows) n += row.size();
    return n;
  }
};

}  // namespace

std::optional<Schedule> decide(const Instance& inst, Time cmax, const Options& opts) {
  check_variant(inst);
  if (inst.k <= 0) return Schedule{};
  if (inst.k > inst.job_count() || cmax <= 0) return std::nullopt;

  if (opts.mode == Mode::Lazy) {
    DpContext ctx(inst, cmax);
    const PrecedenceGraph& g = ctx.graph();
    NodeSet horizon = g.time_mask(cmax);
    if (horizon.count() < inst.k) return std::nullopt;
    std::vector<Time> slots = event_slots(g, horizon, inst.k, cmax);
    int last_mask_size = -1;
    std::vector<Antichain> antichains;
    for (Time t : slots) {
      NodeSet mask = g.time_mask(t);
      if (mask.count() != last_mask_size) {
        antichains = g.enumerate_antichains_in_mask(mask, inst.k);
        last_mask_size = mask.count();
      }
      if (opts.stats)
        opts.stats->antichains_per_t.emplace_back(t, static_cast<int>(antichains.size()));
      for (const Antichain& a : antichains) {
        if (!ctx.compute_S(a, t)) continue;
        if (auto tail = ctx.fill(a, t)) {
          Schedule s;
          s.entries = ctx.witness_entries(a);
          s.entries.insert(s.entries.end(), tail->begin(), tail->end());
          if (opts.stats) opts.stats->memo_entries = ctx.memo_entries();
          return s;
        }
      }
    }
    if (opts.stats) opts.stats->memo_entries = ctx.memo_entries();
    return std::nullopt;
  }

  PrecedenceGraph g = PrecedenceGraph::build(inst);
  NodeSet horizon = g.time_mask(cmax);
  if (horizon.count() < inst.k) return std::nullopt;
  ForwardTable table(g, inst.machine_count());
  std::vector<Time> slots = event_slots(g, horizon, inst.k, cmax);

  int last_mask_size = -1;
  std::vector<Antichain> antichains;
  Time prev_t = -1;
  for (Time t : slots) {
    NodeSet mask = g.time_mask(t);
    if (mask.count() != last_mask_size) {
      antichains = g.enumerate_antichains_in_mask(mask, inst.k);
      last_mask_size = mask.count();
    }
    if (opts.stats) opts.stats->antichains_per_t.emplace_back(t, static_cast<int>(antichains.size()));
    for (const Antichain& a : antichains) {
      if (!table.evaluate(a, t, prev_t)) continue;
      NodeSet preds = g.pred_set(a);
      int need = inst.k - preds.count();
      NodeSet remaining = horizon;
      remaining.subtract(preds);
      if (auto tail = greedy_tail(g, g.minimals(remaining), need, inst.machine_count(), t, cmax)) {
        Schedule s;
        s.entries = table.reconstruct(a, t);
        s.entries.insert(s.entries.end(), tail->begin(), tail->end());
        if (opts.stats) opts.stats->memo_entries = table.entries();
        return s;
      }
    }
    prev_t = t;
  }
  if (opts.stats) opts.stats->memo_entries = table.entries();
  return std::nullopt;
}

std::optional<std::pair<Time, Schedule>> minimize_makespan(const Instance& inst, const Options& opts) {
  check_variant(inst);
  if (inst.k <= 0) return std::pair<Time, Schedule>{0, Schedule{}};
  if (inst.k > inst.job_count()) return std::nullopt;

  auto upper = polysolvers::greedy_prec_unit(inst, inst.k);
  if (!upper) return std::nullopt;
  Time ub = upper->first;

  PrecedenceGraph g = PrecedenceGraph::build(inst);
  std::vector<Time> candidates = event_slots(g, g.time_mask(ub), inst.k, ub);
  candidates.erase(std::remove(candidates.begin(), candidates.end(), Time{0}), candidates.end());
  if (std::find(candidates.begin(), candidates.end(), ub) == candidates.end()) candidates.push_back(ub);
  std::sort(candidates.begin(), candidates.end());

  // decide() is monotone over the candidate slots; binary search the
  // smallest feasible one. The greedy upper bound keeps the range finite.
  Options probe{opts.mode, nullptr};
  std::size_t lo = 0, hi = candidates.size() - 1;
  if (!decide(inst, candidates[hi], probe)) return std::nullopt;
  while (lo < hi) {
    std::size_t mid = lo + (hi - lo) / 2;
    if (decide(inst, candidates[mid], probe))
      hi = mid;
    else
      lo = mid + 1;
  }
  std::optional<Schedule> best = decide(inst, candidates[hi], opts);
  if (!best) return std::nullopt;
  return std::pair<Time, Schedule>{candidates[hi], std::move(*best)};
}

}  // namespace antichain_dp
}  // namespace parsched
