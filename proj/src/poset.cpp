#include "parsched/poset.hpp"

#include <algorithm>
#include <set>

namespace parsched {

PrecedenceGraph PrecedenceGraph::build(const Instance& inst) {
  PrecedenceGraph g;
  g.n_ = inst.job_count();
  g.ids_.reserve(static_cast<std::size_t>(g.n_));
  for (const Job& j : inst.jobs) {
    g.index_.emplace(j.id, static_cast<int>(g.ids_.size()));
    g.ids_.push_back(j.id);
  }

  g.adj_.assign(static_cast<std::size_t>(g.n_), {});
  std::vector<int> indeg(static_cast<std::size_t>(g.n_), 0);
  std::set<std::pair<int, int>> seen_edges;
  for (const auto& [u, v] : inst.prec) {
    auto iu = g.index_.find(u);
    auto iv = g.index_.find(v);
    if (iu == g.index_.end() || iv == g.index_.end())
      throw DispatchError("precedence edge references unknown job");
    if (!seen_edges.emplace(iu->second, iv->second).second) continue;
    g.adj_[static_cast<std::size_t>(iu->second)].push_back(iv->second);
    ++indeg[static_cast<std::size_t>(iv->second)];
  }
  for (auto& row : g.adj_) std::sort(row.begin(), row.end());

  std::vector<int> topo;
  topo.reserve(static_cast<std::size_t>(g.n_));
  for (int i = 0; i < g.n_; ++i)
    if (indeg[static_cast<std::size_t>(i)] == 0) topo.push_back(i);
  for (std::size_t head = 0; head < topo.size(); ++head)
    for (int v : g.adj_[static_cast<std::size_t>(topo[head])])
      if (--indeg[static_cast<std::size_t>(v)] == 0) topo.push_back(v);
  if (static_cast<int>(topo.size()) != g.n_)
    throw DispatchError("precedence constraints contain a cycle");

  g.succ_.assign(static_cast<std::size_t>(g.n_), NodeSet(g.n_));
  for (auto it = topo.rbegin(); it != topo.rend(); ++it) {
    int u = *it;
    NodeSet& row = g.succ_[static_cast<std::size_t>(u)];
    row.set(u);
    for (int v : g.adj_[static_cast<std::size_t>(u)]) row |= g.succ_[static_cast<std::size_t>(v)];
  }
  g.pred_.assign(static_cast<std::size_t>(g.n_), NodeSet(g.n_));
  for (int u = 0; u < g.n_; ++u)
    g.succ_[static_cast<std::size_t>(u)].for_each([&](int v) { g.pred_[static_cast<std::size_t>(v)].set(u); });

  // rho = release + 1, then longest-path closure so rho is strictly
  // monotone along the order.
  g.rho_.resize(static_cast<std::size_t>(g.n_));
  for (int i = 0; i < g.n_; ++i) g.rho_[static_cast<std::size_t>(i)] = inst.jobs[static_cast<std::size_t>(i)].release + 1;
  for (int u : topo)
    for (int v : g.adj_[static_cast<std::size_t>(u)])
      g.rho_[static_cast<std::size_t>(v)] =
          std::max(g.rho_[static_cast<std::size_t>(v)], g.rho_[static_cast<std::size_t>(u)] + 1);

  return g;
}

int PrecedenceGraph::index_of(const JobId& id) const {
  auto it = index_.find(id);
  return it == index_.end() ? -1 : it->second;
}

Time PrecedenceGraph::max_rho() const {
  Time m = 0;
  for (Time r : rho_) m = std::max(m, r);
  return m;
}

NodeSet PrecedenceGraph::full_set() const {
  NodeSet s(n_);
  for (int i = 0; i < n_; ++i) s.set(i);
  return s;
}

NodeSet PrecedenceGraph::time_mask(Time t) const {
  NodeSet s(n_);
  for (int i = 0; i < n_; ++i)
    if (rho_[static_cast<std::size_t>(i)] <= t) s.set(i);
  return s;
}

bool PrecedenceGraph::is_antichain(const std::vector<int>& nodes) const {
  for (std::size_t i = 0; i < nodes.size(); ++i)
    for (std::size_t j = i + 1; j < nodes.size(); ++j)
      if (comparable(nodes[i], nodes[j])) return false;
  return true;
}

NodeSet PrecedenceGraph::pred_set(const Antichain& a) const {
  NodeSet s(n_);
  for (int x : a.nodes) s |= pred_row(x);
  return s;
}

NodeSet PrecedenceGraph::comp_set(const Antichain& a) const {
  NodeSet s(n_);
  for (int x : a.nodes) {
    s |= pred_row(x);
    s |= succ_row(x);
  }
  return s;
}

NodeSet PrecedenceGraph::minimals(const NodeSet& s) const {
  NodeSet out(n_);
  s.for_each([&](int x) {
    if (pred_row(x).intersection_is_single(s, x)) out.set(x);
  });
  return out;
}

NodeSet PrecedenceGraph::maximals(const NodeSet& s) const {
  NodeSet out(n_);
  s.for_each([&](int x) {
    if (succ_row(x).intersection_is_single(s, x)) out.set(x);
  });
  return out;
}

Antichain PrecedenceGraph::maximals_antichain(const NodeSet& s) const {
  return Antichain{maximals(s).to_vector()};
}

int PrecedenceGraph::depth_in_mask(const NodeSet& mask, const Antichain& a) const {
  NodeSet preds(n_);
  NodeSet comps(n_);
  for (int x : a.nodes) {
    preds |= pred_row(x);
    comps |= succ_row(x);
  }
  comps |= preds;
  preds &= mask;
  NodeSet rest = mask;
  rest.subtract(comps);
  return preds.count() + minimals(rest).count();
}

int PrecedenceGraph::depth(Time t, const Antichain& a) const { return depth_in_mask(time_mask(t), a); }

PrecedenceGraph PrecedenceGraph::restrict_to_time(Time t) const {
  NodeSet mask = time_mask(t);
  std::vector<int> old_of;
  std::vector<int> new_of(static_cast<std::size_t>(n_), -1);
  mask.for_each([&](int x) {
    new_of[static_cast<std::size_t>(x)] = static_cast<int>(old_of.size());
    old_of.push_back(x);
  });

  PrecedenceGraph g;
  g.n_ = static_cast<int>(old_of.size());
  for (int x : old_of) {
    g.index_.emplace(ids_[static_cast<std::size_t>(x)], static_cast<int>(g.ids_.size()));
    g.ids_.push_back(ids_[static_cast<std::size_t>(x)]);
    g.rho_.push_back(rho_[static_cast<std::size_t>(x)]);
  }
  g.adj_.assign(static_cast<std::size_t>(g.n_), {});
  g.succ_.assign(static_cast<std::size_t>(g.n_), NodeSet(g.n_));
  g.pred_.assign(static_cast<std::size_t>(g.n_), NodeSet(g.n_));
  for (int i = 0; i < g.n_; ++i) {
    int x = old_of[static_cast<std::size_t>(i)];
    for (int v : adj_[static_cast<std::size_t>(x)])
      if (mask.test(v)) g.adj_[static_cast<std::size_t>(i)].push_back(new_of[static_cast<std::size_t>(v)]);
    succ_row(x).for_each([&](int v) {
      if (mask.test(v)) g.succ_[static_cast<std::size_t>(i)].set(new_of[static_cast<std::size_t>(v)]);
    });
    pred_row(x).for_each([&](int v) {
      if (mask.test(v)) g.pred_[static_cast<std::size_t>(i)].set(new_of[static_cast<std::size_t>(v)]);
    });
  }
  return g;
}

namespace {

/// Recursive partition by minimal elements: branch i keeps s_1..s_{i-1},
/// deletes s_i, and charges i units of depth; keeping all minimal elements
/// closes a maximal antichain. Candidates may be non-maximal in the root
/// poset and are filtered by the caller.
void enumerate_max_candidates(const PrecedenceGraph& g, const NodeSet& mask, int budget,
                              std::vector<int>& kept, std::vector<Antichain>& out) {
  std::vector<int> mins = g.minimals(mask).to_vector();
  int l = static_cast<int>(mins.size());
  if (l > budget) return;  // every maximal antichain here has depth >= l

  Antichain leaf;
  leaf.nodes = kept;
  leaf.nodes.insert(leaf.nodes.end(), mins.begin(), mins.end());
  std::sort(leaf.nodes.begin(), leaf.nodes.end());
  out.push_back(std::move(leaf));

  NodeSet child = mask;
  for (int i = 1; i <= l; ++i) {
    int s_i = mins[static_cast<std::size_t>(i - 1)];
    NodeSet branch_mask = child;
    branch_mask.reset(s_i);  // delete s_i but keep its successors
    enumerate_max_candidates(g, branch_mask, budget - i, kept, out);
    // From branch i+1 on, s_i is kept in the antichain: drop it and all
    // of its successors from the remaining poset.
    child.subtract(g.succ_row(s_i));
    kept.push_back(s_i);
  }
  kept.resize(kept.size() - static_cast<std::size_t>(l));
}

}  // namespace

std::vector<Antichain> PrecedenceGraph::enumerate_max_antichains_in_mask(const NodeSet& mask, int k) const {
  std::vector<Antichain> candidates;
  std::vector<int> kept;
  if (k >= 0) enumerate_max_candidates(*this, mask, k, kept, candidates);

  std::set<Antichain> out;
  for (Antichain& a : candidates) {
    NodeSet comp(n_);
    for (int x : a.nodes) {
      comp |= pred_row(x);
      comp |= succ_row(x);
    }
    if (!mask.subset_of(comp)) continue;  // not maximal within the mask
    if (depth_in_mask(mask, a) > k) continue;
    out.insert(std::move(a));
  }
  return {out.begin(), out.end()};
}

std::vector<Antichain> PrecedenceGraph::enumerate_max_antichains(int k) const {
  return enumerate_max_antichains_in_mask(full_set(), k);
}

std::vector<Antichain> PrecedenceGraph::enumerate_antichains_in_mask(const NodeSet& mask, int k) const {
  std::set<Antichain> out;
  for (const Antichain& m : enumerate_max_antichains_in_mask(mask, k)) {
    int sz = m.size();
    for (std::uint32_t sub = 0; sub < (1u << sz); ++sub) {
      Antichain a;
      for (int b = 0; b < sz; ++b)
        if (sub & (1u << b)) a.nodes.push_back(m.nodes[static_cast<std::size_t>(b)]);
      if (out.count(a)) continue;
      if (depth_in_mask(mask, a) <= k) out.insert(std::move(a));
    }
  }
  return {out.begin(), out.end()};
}

std::vector<Antichain> PrecedenceGraph::enumerate_antichains(Time t, int k) const {
  return enumerate_antichains_in_mask(time_mask(t), k);
}

}  // namespace parsched
