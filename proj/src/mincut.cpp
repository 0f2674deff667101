#include "treepack/mincut.hpp"

#include <algorithm>
#include <cassert>
#include <functional>
#include <limits>
#include <stdexcept>

#include "treepack/oracles.hpp"
#include "treepack/rng.hpp"

namespace treepack {
namespace mincut {

namespace {
constexpr std::int64_t kInf = std::numeric_limits<std::int64_t>::max();

struct TreeArc {
  VertexId u, v;
  EdgeId id;
};

struct OneRespScratch {
  std::vector<std::int32_t> head, nxt;
  std::vector<VertexId> to;
  std::vector<std::uint32_t> arc_of;
  std::vector<int> depth, comp;
  std::vector<std::int32_t> par_arc;
  std::vector<VertexId> par, order, roots;
  std::vector<std::int64_t> w;
  std::vector<char> in_tree;
};

// min over tree arcs f of the number of graph edges with exactly one endpoint
// below f; graph edges may touch vertices outside the forest
OneRespecting one_resp_impl(VertexId n, const std::vector<TreeArc>& arcs,
                            const std::vector<std::pair<VertexId, VertexId>>& ge,
                            OneRespScratch& sc) {
  OneRespecting out;
  if (arcs.empty()) return out;
  sc.head.assign(n, -1);
  sc.nxt.resize(2 * arcs.size());
  sc.to.resize(2 * arcs.size());
  sc.arc_of.resize(2 * arcs.size());
  std::size_t k = 0;
  for (std::uint32_t a = 0; a < arcs.size(); ++a) {
    for (int dir = 0; dir < 2; ++dir) {
      VertexId x = dir ? arcs[a].v : arcs[a].u;
      VertexId y = dir ? arcs[a].u : arcs[a].v;
      sc.nxt[k] = sc.head[x];
      sc.head[x] = std::int32_t(k);
      sc.to[k] = y;
      sc.arc_of[k] = a;
      ++k;
    }
  }
  sc.depth.assign(n, -1);
  sc.comp.assign(n, -1);
  sc.par_arc.assign(n, -1);
  sc.par.assign(n, 0);
  sc.order.clear();
  sc.roots.clear();
  sc.in_tree.assign(n, 0);
  for (const auto& a : arcs) sc.in_tree[a.u] = sc.in_tree[a.v] = 1;
  int ncomp = 0;
  for (VertexId s = 0; s < n; ++s) {
    if (!sc.in_tree[s] || sc.depth[s] >= 0) continue;
    sc.depth[s] = 0;
    sc.comp[s] = ncomp;
    sc.roots.push_back(s);
    std::size_t h = sc.order.size();
    sc.order.push_back(s);
    for (; h < sc.order.size(); ++h) {
      VertexId x = sc.order[h];
      for (std::int32_t e = sc.head[x]; e >= 0; e = sc.nxt[e]) {
        VertexId y = sc.to[e];
        if (sc.depth[y] >= 0) continue;
        sc.depth[y] = sc.depth[x] + 1;
        sc.comp[y] = ncomp;
        sc.par_arc[y] = std::int32_t(sc.arc_of[e]);
        sc.par[y] = x;
        sc.order.push_back(y);
      }
    }
    ++ncomp;
  }
  sc.w.assign(n, 0);
  for (const auto& [x0, y0] : ge) {
    VertexId x = x0, y = y0;
    if (x == y) continue;  // loops never cross
    bool tx = sc.in_tree[x], ty = sc.in_tree[y];
    if (tx && ty && sc.comp[x] == sc.comp[y]) {
      sc.w[x] += 1;
      sc.w[y] += 1;
      VertexId a = x, b = y;
      while (sc.depth[a] > sc.depth[b]) a = sc.par[a];
      while (sc.depth[b] > sc.depth[a]) b = sc.par[b];
      while (a != b) {
        a = sc.par[a];
        b = sc.par[b];
      }
      sc.w[a] -= 2;
    } else {
      if (tx) {
        sc.w[x] += 1;
        sc.w[sc.roots[sc.comp[x]]] -= 1;
      }
      if (ty) {
        sc.w[y] += 1;
        sc.w[sc.roots[sc.comp[y]]] -= 1;
      }
    }
  }
  for (std::size_t i = sc.order.size(); i-- > 0;) {
    VertexId v = sc.order[i];
    if (sc.par_arc[v] < 0) continue;
    const TreeArc& a = arcs[std::size_t(sc.par_arc[v])];
    std::int64_t cut = sc.w[v];
    if (!out.valid || cut < out.value || (cut == out.value && a.id < out.tree_edge)) {
      out.valid = true;
      out.value = cut;
      out.tree_edge = a.id;
    }
    sc.w[sc.par[v]] += sc.w[v];
  }
  return out;
}

std::vector<TreeArc> arcs_of(const MultiGraph& g, const std::vector<EdgeId>& tree) {
  std::vector<TreeArc> arcs;
  arcs.reserve(tree.size());
  for (EdgeId id : tree) {
    auto e = g.endpoints(id);
    arcs.push_back({e.u, e.v, id});
  }
  return arcs;
}

std::vector<std::pair<VertexId, VertexId>> edge_pairs(const MultiGraph& g) {
  std::vector<std::pair<VertexId, VertexId>> ge;
  ge.reserve(g.m());
  for (const auto& [id, e] : g.edges()) {
    (void)id;
    ge.push_back({e.u, e.v});
  }
  return ge;
}

}  // namespace

void MinCutConfig::validate() const {
  if (lambda_max < 1) throw std::invalid_argument("lambda_max must be >= 1");
  if (packing_constant < 1) throw std::invalid_argument("packing constant must be >= 1");
  if (2 * proof_c < 3) throw std::invalid_argument("proof constant c must be >= 3/2");
  if (proof_gamma < 4 * proof_c) throw std::invalid_argument("gamma >= 4c required");
}

Rational a_threshold(std::int64_t mu) {
  Rational a(16 * mu - 3, 8 * mu * mu);
  a.canonicalize();
  return a;
}

OneRespecting one_respecting_min(const MultiGraph& g, const std::vector<EdgeId>& tree) {
  if (tree.size() + 1 != g.n())
    throw std::invalid_argument("one_respecting_min: non-spanning tree");
  auto arcs = arcs_of(g, tree);
  OneRespScratch sc;
  auto out = one_resp_impl(g.n(), arcs, edge_pairs(g), sc);
  if (!out.valid) throw std::invalid_argument("one_respecting_min: empty tree");
  for (VertexId v = 0; v < g.n(); ++v)
    if (!sc.in_tree[v] || sc.comp[v] != 0)
      throw std::invalid_argument("one_respecting_min: non-spanning tree");
  return out;
}

std::vector<EdgeId> one_respecting_cut_edges(const MultiGraph& g, const std::vector<EdgeId>& tree,
                                             EdgeId tree_edge) {
  std::vector<std::vector<VertexId>> adj(g.n());
  EdgeEnds cut_ends{0, 0};
  bool found = false;
  for (EdgeId id : tree) {
    auto e = g.endpoints(id);
    if (id == tree_edge) {
      cut_ends = e;
      found = true;
      continue;
    }
    adj[e.u].push_back(e.v);
    adj[e.v].push_back(e.u);
  }
  if (!found) throw std::invalid_argument("cut edge not in tree");
  std::vector<char> side(g.n(), 0);
  std::vector<VertexId> q{cut_ends.u};
  side[cut_ends.u] = 1;
  for (std::size_t h = 0; h < q.size(); ++h)
    for (VertexId y : adj[q[h]])
      if (!side[y]) {
        side[y] = 1;
        q.push_back(y);
      }
  std::vector<EdgeId> out;
  for (const auto& [id, e] : g.edges())
    if (e.u != e.v && side[e.u] != side[e.v]) out.push_back(id);
  return out;
}

// ---------------------------------------------------------------------------
// ContractionView

ContractionView::ContractionView(VertexId n, Rational a)
    : n_(n), a_(std::move(a)), gamma_(n), wf_(n) {
  for (VertexId v = 0; v < n_; ++v) heap_insert(v);
}

void ContractionView::heap_remove(VertexId any_vertex) {
  VertexId rep = gamma_.component_rep(any_vertex);
  auto it = heap_entry_.find(rep);
  if (it == heap_entry_.end()) return;
  auto hit = heap_.find(it->second);
  assert(hit != heap_.end());
  heap_.erase(hit);
  heap_entry_.erase(it);
}

void ContractionView::heap_insert(VertexId any_vertex) {
  VertexId rep = gamma_.component_rep(any_vertex);
  if (heap_entry_.count(rep)) return;
  std::pair<std::int64_t, VertexId> entry{wf_.total_weight(rep), rep};
  heap_.insert(entry);
  heap_entry_[rep] = entry;
}

void ContractionView::make_low(EdgeId id, const Rec& r) {
  auto delta = gamma_.insert_edge(id, r.u, r.v);
  if (delta.added) wf_.link(r.u, r.v, *delta.added);
}

void ContractionView::make_high(EdgeId id, const Rec& r) {
  (void)r;
  auto delta = gamma_.delete_edge(id);
  if (delta.removed) {
    wf_.cut(*delta.removed);
    if (delta.added) {
      auto ends = gamma_.edge_ends(*delta.added);
      wf_.link(ends.first, ends.second, *delta.added);
    }
  }
}

void ContractionView::edge_inserted(EdgeId id, VertexId u, VertexId v, bool low) {
  if (edges_.count(id)) throw std::invalid_argument("view: edge already tracked");
  heap_remove(u);
  heap_remove(v);
  Rec r{u, v, low};
  edges_[id] = r;
  side_[id] = low;
  if (low) {
    make_low(id, r);
  } else {
    high_at_[u].insert(id);
    wf_.increment_weight(u);
    high_at_[v].insert(id);  // loops keep one set entry but weight +2
    wf_.increment_weight(v);
  }
  heap_insert(u);
  heap_insert(v);
}

void ContractionView::edge_deleted(EdgeId id) {
  auto it = edges_.find(id);
  if (it == edges_.end()) throw std::invalid_argument("view: unknown edge");
  Rec r = it->second;
  heap_remove(r.u);
  heap_remove(r.v);
  if (r.low) {
    make_high(id, r);
  } else {
    high_at_[r.u].erase(id);
    wf_.decrement_weight(r.u);
    high_at_[r.v].erase(id);
    wf_.decrement_weight(r.v);
  }
  edges_.erase(it);
  side_.erase(id);
  heap_insert(r.u);
  heap_insert(r.v);
}

void ContractionView::load_crossed(EdgeId id, bool now_low) {
  auto it = edges_.find(id);
  if (it == edges_.end()) throw std::invalid_argument("view: unknown edge");
  Rec& r = it->second;
  if (r.low == now_low) throw std::invalid_argument("view: edge already on that side");
  heap_remove(r.u);
  heap_remove(r.v);
  if (now_low) {
    high_at_[r.u].erase(id);
    wf_.decrement_weight(r.u);
    high_at_[r.v].erase(id);
    wf_.decrement_weight(r.v);
    make_low(id, r);
  } else {
    make_high(id, r);
    high_at_[r.u].insert(id);
    wf_.increment_weight(r.u);
    high_at_[r.v].insert(id);
    wf_.increment_weight(r.v);
  }
  r.low = now_low;
  side_[id] = now_low;
  heap_insert(r.u);
  heap_insert(r.v);
}

std::optional<std::int64_t> ContractionView::minimum() const {
  if (heap_.size() <= 1) return std::nullopt;
  return heap_.begin()->first;
}

VertexId ContractionView::min_component_rep() const {
  if (heap_.size() <= 1) throw std::logic_error("view: single class has no minimum");
  return heap_.begin()->second;
}

std::int64_t ContractionView::external_of(VertexId v) const { return wf_.total_weight(v); }

std::vector<EdgeId> ContractionView::cut_edges_of(VertexId v) const {
  std::vector<EdgeId> out;
  wf_.for_each_positive(v, [&](VertexId x) {
    auto it = high_at_.find(x);
    if (it != high_at_.end())
      for (EdgeId id : it->second) {
        out.push_back(id);
        const Rec& r = edges_.at(id);
        if (r.u == r.v) out.push_back(id);  // loops are listed twice
      }
    return true;
  });
  std::sort(out.begin(), out.end());
  return out;
}

bool ContractionView::component_has_ga_loop(VertexId v) const {
  bool loop = false;
  wf_.for_each_positive(v, [&](VertexId x) {
    auto it = high_at_.find(x);
    if (it != high_at_.end())
      for (EdgeId id : it->second) {
        const Rec& r = edges_.at(id);
        if (r.u == r.v || gamma_.connected(r.u, r.v)) {
          loop = true;
          return false;
        }
      }
    return true;
  });
  return loop;
}

// ---------------------------------------------------------------------------
// Sparsification

SparsifyResult ni_sparsify(const MultiGraph& g, std::int64_t k) {
  if (k < 1) throw std::invalid_argument("ni_sparsify: k must be >= 1");
  SparsifyResult res{MultiGraph(g.n()), {}};
  std::set<EdgeId> taken;
  for (std::int64_t round = 0; round < k; ++round) {
    std::vector<VertexId> parent(g.n());
    for (VertexId v = 0; v < g.n(); ++v) parent[v] = v;
    std::function<VertexId(VertexId)> find = [&](VertexId x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    std::vector<EdgeId> forest;
    for (const auto& [id, e] : g.edges()) {
      if (taken.count(id) || e.u == e.v) continue;
      VertexId a = find(e.u), b = find(e.v);
      if (a == b) continue;
      parent[a] = b;
      forest.push_back(id);
      taken.insert(id);
      res.graph.add_edge_with_id(id, e.u, e.v);
    }
    res.forests.push_back(std::move(forest));
  }
  return res;
}

DynamicSparsifier::DynamicSparsifier(VertexId n, std::int64_t k) : n_(n), k_(k) {
  if (k < 1) throw std::invalid_argument("sparsifier: k must be >= 1");
  forests_.resize(std::size_t(k));
}

bool DynamicSparsifier::in_union(EdgeId id) const { return union_view_.count(id) != 0; }

bool DynamicSparsifier::connected_in(int j, VertexId a, VertexId b) const {
  if (a == b) return true;
  std::vector<std::vector<VertexId>> adj(n_);
  for (const auto& [id, e] : forests_[std::size_t(j)]) {
    (void)id;
    adj[e.u].push_back(e.v);
    adj[e.v].push_back(e.u);
  }
  std::vector<char> seen(n_, 0);
  std::vector<VertexId> q{a};
  seen[a] = 1;
  for (std::size_t h = 0; h < q.size(); ++h) {
    if (q[h] == b) return true;
    for (VertexId y : adj[q[h]])
      if (!seen[y]) {
        seen[y] = 1;
        q.push_back(y);
      }
  }
  return false;
}

DynamicSparsifier::Delta DynamicSparsifier::insert_edge(EdgeId id, VertexId u, VertexId v) {
  Delta d;
  for (int j = 0; j < int(k_); ++j) {
    if (!connected_in(j, u, v)) {
      forests_[std::size_t(j)][id] = {u, v};
      where_[id] = j;
      union_view_[id] = {u, v};
      d.added = id;
      return d;
    }
  }
  spares_[id] = {u, v};
  where_[id] = -1;
  return d;
}

void DynamicSparsifier::repair(int j, VertexId a, VertexId b, Delta& d) {
  std::vector<std::vector<VertexId>> adj(n_);
  for (const auto& [id, e] : forests_[std::size_t(j)]) {
    (void)id;
    adj[e.u].push_back(e.v);
    adj[e.v].push_back(e.u);
  }
  std::vector<char> side(n_, 0);
  std::vector<VertexId> q{a};
  side[a] = 1;
  for (std::size_t h = 0; h < q.size(); ++h)
    for (VertexId y : adj[q[h]])
      if (!side[y]) {
        side[y] = 1;
        q.push_back(y);
      }
  if (side[b]) return;  // reconnected through a parallel path
  EdgeId best = 0;
  int best_src = -2;
  bool have = false;
  auto consider = [&](EdgeId id, const EdgeEnds& e, int src) {
    if (e.u == e.v || side[e.u] == side[e.v]) return;
    if (!have || id < best) {
      best = id;
      best_src = src;
      have = true;
    }
  };
  for (const auto& [id, e] : spares_) consider(id, e, -1);
  for (int l = j + 1; l < int(k_); ++l)
    for (const auto& [id, e] : forests_[std::size_t(l)]) consider(id, e, l);
  if (!have) return;
  if (best_src == -1) {
    EdgeEnds e = spares_[best];
    spares_.erase(best);
    forests_[std::size_t(j)][best] = e;
    where_[best] = j;
    union_view_[best] = e;
    d.added = best;
  } else {
    EdgeEnds e = forests_[std::size_t(best_src)][best];
    forests_[std::size_t(best_src)].erase(best);
    forests_[std::size_t(j)][best] = e;
    where_[best] = j;
    repair(best_src, e.u, e.v, d);
  }
}

DynamicSparsifier::Delta DynamicSparsifier::delete_edge(EdgeId id) {
  Delta d;
  auto wit = where_.find(id);
  if (wit == where_.end()) throw std::invalid_argument("sparsifier: unknown edge");
  int j = wit->second;
  where_.erase(wit);
  if (j < 0) {
    spares_.erase(id);
    return d;
  }
  EdgeEnds e = forests_[std::size_t(j)][id];
  forests_[std::size_t(j)].erase(id);
  union_view_.erase(id);
  d.removed = id;
  repair(j, e.u, e.v, d);
  return d;
}

// ---------------------------------------------------------------------------
// Static existence disjunction

ExistenceVerdict cut_existence_check(const MultiGraph& g, const MinCutConfig& cfg) {
  cfg.validate();
  ExistenceVerdict v;
  auto mc = oracle::mincut_exact(g);
  if (mc.infinite || mc.value < 1)
    throw std::invalid_argument("cut_existence_check: need a connected graph");
  v.lambda = mc.value;
  std::size_t n_trees = std::size_t(cfg.packing_constant) *
                        std::size_t(v.lambda * v.lambda * v.lambda) *
                        std::size_t(ceil_log2(g.m()));
  v.trees = n_trees;
  TreePacking p(g, n_trees);

  // branch (i): some tree 1-respects a cut of value lambda
  OneRespScratch sc;
  auto ge = edge_pairs(g);
  for (std::size_t t = 0; t < p.size() && !v.one_respecting; ++t) {
    std::vector<TreeArc> arcs;
    for (std::uint32_t s : p.tree_slots(t))
      arcs.push_back({p.slot_u(s), p.slot_v(s), p.slot_id(s)});
    auto r = one_resp_impl(g.n(), arcs, ge, sc);
    if (r.valid && r.value == v.lambda) v.one_respecting = true;
  }

  // branch (ii): a loop-free class of G_a with external degree exactly lambda
  Rational a = a_threshold(v.lambda);
  std::vector<VertexId> parent(g.n());
  for (VertexId x = 0; x < g.n(); ++x) parent[x] = x;
  std::function<VertexId(VertexId)> find = [&](VertexId x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  std::int64_t nt = std::int64_t(p.size());
  auto is_low = [&](EdgeId id) {
    Rational l(p.load(id), nt);
    l.canonicalize();
    return l < a;
  };
  for (const auto& [id, e] : g.edges()) {
    if (!is_low(id)) continue;
    VertexId ra = find(e.u), rb = find(e.v);
    if (ra != rb) parent[std::max(ra, rb)] = std::min(ra, rb);
  }
  std::map<VertexId, std::int64_t> ext;
  std::map<VertexId, bool> has_loop;
  std::set<VertexId> classes;
  for (VertexId x = 0; x < g.n(); ++x) classes.insert(find(x));
  for (const auto& [id, e] : g.edges()) {
    if (is_low(id)) continue;
    VertexId ra = find(e.u), rb = find(e.v);
    ext[ra] += 1;
    ext[rb] += 1;
    if (ra == rb) has_loop[ra] = true;
  }
  if (classes.size() >= 2)
    for (VertexId c : classes)
      if (ext[c] == v.lambda && !has_loop[c]) v.trivial = true;
  return v;
}

// ---------------------------------------------------------------------------
// Estimator

MinCutEstimator::MinCutEstimator(const MinCutConfig& cfg, const MultiGraph& g0)
    : cfg_(cfg), g_(g0.n()), real_(g0) {
  cfg_.validate();
  if (cfg_.sparsify) {
    sparsifier_ = std::make_unique<DynamicSparsifier>(g0.n(), cfg_.lambda_max);
    for (const auto& [id, e] : g0.edges()) {
      auto d = sparsifier_->insert_edge(id, e.u, e.v);
      if (d.added) g_.add_edge_with_id(id, e.u, e.v);
    }
  } else {
    for (const auto& [id, e] : g0.edges()) g_.add_edge_with_id(id, e.u, e.v);
  }
  log_m_ = ceil_log2(g_.m());
  int nlevels = 0;
  while ((std::int64_t(1) << nlevels) <= cfg_.lambda_max) ++nlevels;
  for (int i = 0; i < nlevels; ++i)
    levels_.push_back(
        std::make_unique<LeveledPacking>(LevelFlavor::MinCut, i, target_for(i), g_.n(), g_));
  tree_value_.resize(std::size_t(nlevels));
  tree_witness_.resize(std::size_t(nlevels));
  tree_heap_.resize(std::size_t(nlevels));
  for (int i = 0; i < nlevels; ++i) rebuild_tree_values(i);
  views_.resize(std::size_t(cfg_.lambda_max));
  for (int i = 0; i < nlevels; ++i) rebuild_views(i);
}

std::size_t MinCutEstimator::target_for(int li) const {
  std::int64_t mu_max = std::min((std::int64_t(1) << (li + 1)) - 1, cfg_.lambda_max);
  return std::size_t(cfg_.packing_constant) * std::size_t(mu_max * mu_max * mu_max) *
         std::size_t(log_m_);
}

bool MinCutEstimator::load_is_low(int li, EdgeId id, std::int64_t load, std::int64_t mu) const {
  (void)id;
  std::int64_t n_trees = std::int64_t(levels_[std::size_t(li)]->packing().size());
  return (__int128)load * 8 * mu * mu < (__int128)n_trees * (16 * mu - 3);
}

void MinCutEstimator::rebuild_views(int li) {
  for (std::int64_t mu = 1; mu <= cfg_.lambda_max; ++mu) {
    int owner = 0;
    while ((std::int64_t(1) << (owner + 1)) <= mu) ++owner;
    if (owner != li) continue;
    auto view = std::make_unique<ContractionView>(g_.n(), a_threshold(mu));
    const auto& pack = levels_[std::size_t(li)]->packing();
    for (const auto& [id, e] : g_.edges()) {
      std::int64_t L = pack.load(id);
      view->edge_inserted(id, e.u, e.v, load_is_low(li, id, L, mu));
    }
    views_[std::size_t(mu - 1)] = std::move(view);
  }
}

void MinCutEstimator::eval_tree(int li, std::size_t t) {
  const auto& pack = levels_[std::size_t(li)]->packing();
  auto& vals = tree_value_[std::size_t(li)];
  auto& wits = tree_witness_[std::size_t(li)];
  auto& heap = tree_heap_[std::size_t(li)];
  const auto& slots = pack.tree_slots(t);
  std::uint64_t h = 0xabcd1234u;
  for (std::uint32_t s : slots) h = mix64(h, pack.slot_id(s));
  std::int64_t value;
  EdgeId witness;
  auto mit = memo_.find(h);
  if (mit != memo_.end()) {
    value = mit->second.first;
    witness = mit->second.second;
  } else {
    std::vector<TreeArc> arcs;
    arcs.reserve(slots.size());
    for (std::uint32_t s : slots)
      arcs.push_back({pack.slot_u(s), pack.slot_v(s), pack.slot_id(s)});
    static thread_local OneRespScratch sc;
    static thread_local std::vector<std::pair<VertexId, VertexId>> ge;
    ge.clear();
    for (const auto& [id, e] : g_.edges()) {
      (void)id;
      ge.push_back({e.u, e.v});
    }
    auto r = one_resp_impl(g_.n(), arcs, ge, sc);
    value = r.valid ? r.value : kInf;
    witness = r.valid ? r.tree_edge : 0;
    memo_[h] = {value, witness};
  }
  heap.erase(heap.find({vals[t], t}));
  vals[t] = value;
  wits[t] = witness;
  heap.insert({value, t});
}

void MinCutEstimator::rebuild_tree_values(int li) {
  const auto& pack = levels_[std::size_t(li)]->packing();
  auto& vals = tree_value_[std::size_t(li)];
  auto& wits = tree_witness_[std::size_t(li)];
  auto& heap = tree_heap_[std::size_t(li)];
  vals.assign(pack.size(), kInf);
  wits.assign(pack.size(), 0);
  heap.clear();
  for (std::size_t t = 0; t < pack.size(); ++t) heap.insert({kInf, t});
  for (std::size_t t = 0; t < pack.size(); ++t) eval_tree(li, t);
}

void MinCutEstimator::process_report(int li, const LeveledPacking::SettleReport& rep,
                                     std::optional<EdgeId> inserted,
                                     std::optional<EdgeId> deleted) {
  for (auto t : rep.changed_trees)
    if (t < tree_value_[std::size_t(li)].size()) eval_tree(li, t);
  for (std::int64_t mu = 1; mu <= cfg_.lambda_max; ++mu) {
    int owner = 0;
    while ((std::int64_t(1) << (owner + 1)) <= mu) ++owner;
    if (owner != li) continue;
    auto& view = *views_[std::size_t(mu - 1)];
    if (deleted && view.tracks(*deleted)) view.edge_deleted(*deleted);
    for (const auto& c : rep.load_changes) {
      if (c.edge >= kVirtualIdBase) continue;
      if (inserted && c.edge == *inserted) continue;
      if (deleted && c.edge == *deleted) continue;
      if (!view.tracks(c.edge)) continue;
      bool before_low = load_is_low(li, c.edge, c.before, mu);
      bool after_low = load_is_low(li, c.edge, c.after, mu);
      if (before_low != after_low) view.load_crossed(c.edge, after_low);
    }
    if (inserted) {
      auto e = g_.endpoints(*inserted);
      std::int64_t L = levels_[std::size_t(li)]->packing().load(*inserted);
      view.edge_inserted(*inserted, e.u, e.v, load_is_low(li, *inserted, L, mu));
    }
  }
}

void MinCutEstimator::apply(const Update& up) {
  memo_.clear();
  EdgeId id;
  std::vector<std::pair<bool, EdgeId>> machine_ops;
  if (up.insert) {
    id = real_.add_edge(up.u, up.v);
    if (sparsifier_) {
      auto d = sparsifier_->insert_edge(id, up.u, up.v);
      if (d.added) machine_ops.push_back({true, *d.added});
    } else {
      machine_ops.push_back({true, id});
    }
  } else {
    id = real_.remove_one(up.u, up.v);
    if (sparsifier_) {
      auto d = sparsifier_->delete_edge(id);
      if (d.removed) machine_ops.push_back({false, *d.removed});
      if (d.added) machine_ops.push_back({true, *d.added});
    } else {
      machine_ops.push_back({false, id});
    }
  }
  for (auto [ins, mid] : machine_ops) {
    if (ins) {
      EdgeEnds e = sparsifier_ ? sparsifier_->union_edges().at(mid) : real_.endpoints(mid);
      g_.add_edge_with_id(mid, e.u, e.v);
      for (int li = 0; li < int(levels_.size()); ++li) {
        auto rep = levels_[std::size_t(li)]->apply_insert(mid, e.u, e.v);
        process_report(li, rep, mid, std::nullopt);
      }
    } else {
      g_.remove_edge(mid);
      for (int li = 0; li < int(levels_.size()); ++li) {
        auto rep = levels_[std::size_t(li)]->apply_delete(mid);
        process_report(li, rep, std::nullopt, mid);
      }
    }
  }
  int lm = ceil_log2(g_.m());
  if (lm != log_m_) {
    log_m_ = lm;
    for (int li = 0; li < int(levels_.size()); ++li) {
      levels_[std::size_t(li)]->set_target_trees(target_for(li));
      rebuild_tree_values(li);
      rebuild_views(li);
    }
  }
}

std::int64_t MinCutEstimator::value() const {
  if (!is_connected(real_)) return 0;
  std::int64_t best = kInf;
  for (const auto& heap : tree_heap_)
    if (!heap.empty()) best = std::min(best, heap.begin()->first);
  for (const auto& view : views_) {
    if (!view) continue;
    auto mu = view->minimum();
    if (mu) best = std::min(best, *mu);
  }
  if (best > cfg_.lambda_max) return cfg_.lambda_max + 1;
  return best;
}

CutReport MinCutEstimator::cut() const {
  CutReport rep;
  if (!is_connected(real_)) {
    rep.value = 0;
    rep.source = CutReport::Source::Disconnected;
    return rep;
  }
  std::int64_t v = value();
  rep.value = v;
  if (v > cfg_.lambda_max) {
    rep.source = CutReport::Source::Sentinel;
    return rep;
  }
  for (int li = 0; li < int(levels_.size()); ++li) {
    const auto& heap = tree_heap_[std::size_t(li)];
    if (heap.empty() || heap.begin()->first != v) continue;
    std::size_t t = heap.begin()->second;
    rep.source = CutReport::Source::OneRespecting;
    rep.level = li;
    rep.tree_index = t;
    rep.tree_edge = tree_witness_[std::size_t(li)][t];
    const auto& pack = levels_[std::size_t(li)]->packing();
    const auto& slots = pack.tree_slots(t);
    std::vector<std::vector<VertexId>> adj(g_.n());
    EdgeEnds we{0, 0};
    for (std::uint32_t s : slots) {
      if (pack.slot_id(s) == rep.tree_edge) {
        we = {pack.slot_u(s), pack.slot_v(s)};
        continue;
      }
      adj[pack.slot_u(s)].push_back(pack.slot_v(s));
      adj[pack.slot_v(s)].push_back(pack.slot_u(s));
    }
    std::vector<char> side(g_.n(), 0);
    std::vector<VertexId> q{we.u};
    side[we.u] = 1;
    for (std::size_t h = 0; h < q.size(); ++h)
      for (VertexId y : adj[q[h]])
        if (!side[y]) {
          side[y] = 1;
          q.push_back(y);
        }
    for (const auto& [eid, e] : g_.edges())
      if (e.u != e.v && side[e.u] != side[e.v]) rep.edges.push_back(eid);
    if (std::int64_t(rep.edges.size()) != v)
      throw std::logic_error("one-respecting witness does not recount");
    return rep;
  }
  for (std::int64_t mu = 1; mu <= cfg_.lambda_max; ++mu) {
    const auto& view = views_[std::size_t(mu - 1)];
    if (!view) continue;
    auto m = view->minimum();
    if (!m || *m != v) continue;
    rep.source = CutReport::Source::Trivial;
    rep.mu = mu;
    VertexId witness = view->min_component_rep();
    if (view->component_has_ga_loop(witness))
      throw std::logic_error("trivial witness has a loop in G_a");
    rep.edges = view->cut_edges_of(witness);
    return rep;
  }
  throw std::logic_error("no candidate matched the reported value");
}

std::int64_t MinCutEstimator::current_lambda_window(int i) const { return std::int64_t(1) << i; }

}  // namespace mincut
}  // namespace treepack
