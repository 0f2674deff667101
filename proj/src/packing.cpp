#include "treepack/packing.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>

namespace treepack {

namespace {
struct Dsu {
  std::vector<std::uint32_t> p;
  explicit Dsu(std::uint32_t n) : p(n) {
    for (std::uint32_t i = 0; i < n; ++i) p[i] = i;
  }
  std::uint32_t find(std::uint32_t x) {
    while (p[x] != x) x = p[x] = p[p[x]];
    return x;
  }
  bool unite(std::uint32_t a, std::uint32_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    p[b] = a;
    return true;
  }
};
}  // namespace

bool tree_extends_greedily(const MultiGraph& g, const std::vector<EdgeId>& tree,
                           const std::map<EdgeId, std::int64_t>& loads_before,
                           GreedyWitness* witness) {
  auto lb = [&](EdgeId id) {
    auto it = loads_before.find(id);
    return it == loads_before.end() ? 0 : it->second;
  };
  // adjacency of the tree
  std::vector<std::vector<std::pair<VertexId, EdgeId>>> adj(g.n());
  for (EdgeId id : tree) {
    auto e = g.endpoints(id);
    adj[e.u].push_back({e.v, id});
    adj[e.v].push_back({e.u, id});
  }
  std::vector<int> seen(g.n(), -1);
  std::vector<std::pair<VertexId, EdgeId>> par(g.n());
  int epoch = 0;
  for (const auto& [eid, e] : g.edges()) {
    if (e.u == e.v) continue;
    bool in_tree = std::find(tree.begin(), tree.end(), eid) != tree.end();
    if (in_tree) continue;
    // BFS path e.u -> e.v in the tree
    ++epoch;
    std::vector<VertexId> q{e.u};
    seen[e.u] = epoch;
    bool reached = false;
    for (std::size_t h = 0; h < q.size() && !reached; ++h) {
      VertexId x = q[h];
      for (auto [y, id2] : adj[x]) {
        if (seen[y] == epoch) continue;
        seen[y] = epoch;
        par[y] = {x, id2};
        if (y == e.v) {
          reached = true;
          break;
        }
        q.push_back(y);
      }
    }
    if (!reached) {
      if (witness) *witness = {0, eid, eid};
      return false;  // tree fails to span the edge's endpoints
    }
    for (VertexId x = e.v; x != e.u; x = par[x].first) {
      EdgeId f = par[x].second;
      if (lb(f) > lb(eid)) {
        if (witness) *witness = {0, eid, f};
        return false;
      }
    }
  }
  return true;
}

bool is_greedy(const MultiGraph& g, const std::vector<std::vector<EdgeId>>& trees,
               GreedyWitness* witness) {
  std::map<EdgeId, std::int64_t> loads;
  for (std::size_t j = 0; j < trees.size(); ++j) {
    GreedyWitness w;
    if (!tree_extends_greedily(g, trees[j], loads, &w)) {
      if (witness) {
        w.tree = j;
        *witness = w;
      }
      return false;
    }
    for (EdgeId id : trees[j]) loads[id] += 1;
  }
  return true;
}

TreePacking::TreePacking(const MultiGraph& g, std::size_t n_trees) {
  n_ = g.n();
  if (n_trees > 0 && edge_bearing_components(g) > 1)
    throw std::invalid_argument("build_greedy: graph must be connected");
  for (const auto& [id, e] : g.edges()) alloc_slot(id, e.u, e.v);
  for (std::size_t t = 0; t < n_trees; ++t) append_greedy_tree();
}

std::uint32_t TreePacking::alloc_slot(EdgeId id, VertexId u, VertexId v) {
  if (id2slot_.count(id)) throw std::invalid_argument("packing: edge id already present");
  std::uint32_t s;
  if (!free_slots_.empty()) {
    s = free_slots_.back();
    free_slots_.pop_back();
    slot_id_[s] = id;
    su_[s] = u;
    sv_[s] = v;
    alive_[s] = 1;
    load_[s] = 0;
  } else {
    s = std::uint32_t(slot_id_.size());
    slot_id_.push_back(id);
    su_.push_back(u);
    sv_.push_back(v);
    alive_.push_back(1);
    load_.push_back(0);
  }
  id2slot_[id] = s;
  ++alive_count_;
  return s;
}

void TreePacking::release_slot(std::uint32_t s) {
  id2slot_.erase(slot_id_[s]);
  free_slots_.push_back(s);
}

std::optional<std::uint32_t> TreePacking::slot_of(EdgeId id) const {
  auto it = id2slot_.find(id);
  if (it == id2slot_.end()) return std::nullopt;
  return it->second;
}

void TreePacking::append_greedy_tree() {
  std::vector<std::uint32_t> cand;
  cand.reserve(alive_count_);
  for (std::uint32_t s = 0; s < slot_id_.size(); ++s)
    if (alive_[s] && su_[s] != sv_[s]) cand.push_back(s);
  std::sort(cand.begin(), cand.end(), [&](std::uint32_t a, std::uint32_t b) {
    if (load_[a] != load_[b]) return load_[a] < load_[b];
    return slot_id_[a] < slot_id_[b];
  });
  Dsu dsu(n_);
  std::vector<std::uint32_t> tree;
  for (std::uint32_t s : cand)
    if (dsu.unite(su_[s], sv_[s])) tree.push_back(s);
  for (std::uint32_t s : tree) load_[s] += 1;
  std::sort(tree.begin(), tree.end());
  trees_.push_back(std::move(tree));
}

std::int64_t TreePacking::load(EdgeId id) const {
  auto it = id2slot_.find(id);
  if (it == id2slot_.end()) throw std::invalid_argument("packing: unknown edge");
  return load_[it->second];
}

std::int64_t TreePacking::min_load_value() const {
  std::int64_t best = -1;
  for (std::uint32_t s = 0; s < slot_id_.size(); ++s)
    if (alive_[s] && (best < 0 || load_[s] < best)) best = load_[s];
  return best;
}

std::int64_t TreePacking::max_load_value() const {
  std::int64_t best = -1;
  for (std::uint32_t s = 0; s < slot_id_.size(); ++s)
    if (alive_[s] && load_[s] > best) best = load_[s];
  return best;
}

std::pair<Rational, EdgeId> TreePacking::min_load() const {
  if (trees_.empty()) throw std::invalid_argument("packing: empty (size 0)");
  std::int64_t best = -1;
  EdgeId bid = 0;
  for (std::uint32_t s = 0; s < slot_id_.size(); ++s) {
    if (!alive_[s]) continue;
    if (best < 0 || load_[s] < best || (load_[s] == best && slot_id_[s] < bid)) {
      best = load_[s];
      bid = slot_id_[s];
    }
  }
  if (best < 0) throw std::invalid_argument("packing: no live edges");
  return {rat(best, std::int64_t(trees_.size())), bid};
}

std::pair<Rational, EdgeId> TreePacking::max_load() const {
  if (trees_.empty()) throw std::invalid_argument("packing: empty (size 0)");
  std::int64_t best = -1;
  EdgeId bid = 0;
  for (std::uint32_t s = 0; s < slot_id_.size(); ++s) {
    if (!alive_[s]) continue;
    if (load_[s] > best || (load_[s] == best && slot_id_[s] < bid)) {
      best = load_[s];
      bid = slot_id_[s];
    }
  }
  if (best < 0) throw std::invalid_argument("packing: no live edges");
  return {rat(best, std::int64_t(trees_.size())), bid};
}

std::map<EdgeId, Rational> TreePacking::loads() const {
  std::map<EdgeId, Rational> out;
  for (const auto& [id, s] : id2slot_)
    if (alive_[s]) out[id] = rat(load_[s], std::max<std::int64_t>(1, trees_.size()));
  return out;
}

std::map<EdgeId, std::int64_t> TreePacking::loads_int() const {
  std::map<EdgeId, std::int64_t> out;
  for (const auto& [id, s] : id2slot_)
    if (alive_[s]) out[id] = load_[s];
  return out;
}

std::vector<EdgeId> TreePacking::tree(std::size_t j) const {
  std::vector<EdgeId> out;
  out.reserve(trees_[j].size());
  for (std::uint32_t s : trees_[j]) out.push_back(slot_id_[s]);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::vector<EdgeId>> TreePacking::tree_list() const {
  std::vector<std::vector<EdgeId>> out;
  out.reserve(trees_.size());
  for (std::size_t j = 0; j < trees_.size(); ++j) out.push_back(tree(j));
  return out;
}

bool TreePacking::tree_has(std::size_t j, std::uint32_t s) const {
  const auto& t = trees_[j];
  auto it = std::lower_bound(t.begin(), t.end(), s);
  return it != t.end() && *it == s;
}

void TreePacking::tree_insert(std::size_t j, std::uint32_t s) {
  auto& t = trees_[j];
  t.insert(std::lower_bound(t.begin(), t.end(), s), s);
}

void TreePacking::tree_erase(std::size_t j, std::uint32_t s) {
  auto& t = trees_[j];
  auto it = std::lower_bound(t.begin(), t.end(), s);
  assert(it != t.end() && *it == s);
  t.erase(it);
}

std::pair<std::int64_t, EdgeId> TreePacking::key(std::uint32_t s) const {
  std::int64_t w = w_[s];
  if (pending_[s]) w -= delta_[s];
  return {w, slot_id_[s]};
}

void TreePacking::build_tree_adj(std::size_t j) const {
  if (adj_head_.size() < n_) adj_head_.assign(n_, -1);
  std::fill(adj_head_.begin(), adj_head_.end(), -1);
  const auto& t = trees_[j];
  std::size_t need = 2 * t.size();
  adj_next_.resize(need);
  adj_slot_.resize(need);
  adj_to_.resize(need);
  std::size_t k = 0;
  for (std::uint32_t s : t) {
    adj_next_[k] = adj_head_[su_[s]];
    adj_head_[su_[s]] = std::int32_t(k);
    adj_slot_[k] = s;
    adj_to_[k] = sv_[s];
    ++k;
    adj_next_[k] = adj_head_[sv_[s]];
    adj_head_[sv_[s]] = std::int32_t(k);
    adj_slot_[k] = s;
    adj_to_[k] = su_[s];
    ++k;
  }
}

bool TreePacking::find_path(std::size_t j, VertexId from, VertexId to,
                            std::vector<std::uint32_t>& out) const {
  out.clear();
  if (from == to) return true;
  build_tree_adj(j);
  if (par_edge_.size() < n_) {
    par_edge_.resize(n_);
    par_vert_.resize(n_);
    side_.resize(n_);
  }
  std::fill(side_.begin(), side_.end(), 0);
  bfs_q_.clear();
  bfs_q_.push_back(from);
  side_[from] = 1;
  bool reached = false;
  for (std::size_t h = 0; h < bfs_q_.size() && !reached; ++h) {
    VertexId x = bfs_q_[h];
    for (std::int32_t k = adj_head_[x]; k >= 0; k = adj_next_[k]) {
      VertexId y = adj_to_[k];
      if (side_[y]) continue;
      side_[y] = 1;
      par_edge_[y] = std::int32_t(adj_slot_[k]);
      par_vert_[y] = x;
      if (y == to) {
        reached = true;
        break;
      }
      bfs_q_.push_back(y);
    }
  }
  if (!reached) return false;
  for (VertexId x = to; x != from; x = par_vert_[x]) out.push_back(std::uint32_t(par_edge_[x]));
  return true;
}

// fills side_: 1 = reachable from start, 2 = reachable from the other end of
// removed_slot, 0 = elsewhere
void TreePacking::mark_side(std::size_t j, std::uint32_t removed_slot, VertexId start) const {
  build_tree_adj(j);
  if (side_.size() < n_) side_.resize(n_);
  std::fill(side_.begin(), side_.end(), 0);
  auto bfs = [&](VertexId s0, char tag) {
    bfs_q_.clear();
    bfs_q_.push_back(s0);
    side_[s0] = tag;
    for (std::size_t h = 0; h < bfs_q_.size(); ++h) {
      VertexId x = bfs_q_[h];
      for (std::int32_t k = adj_head_[x]; k >= 0; k = adj_next_[k]) {
        if (adj_slot_[k] == removed_slot) continue;
        VertexId y = adj_to_[k];
        if (side_[y]) continue;
        side_[y] = tag;
        bfs_q_.push_back(y);
      }
    }
  };
  bfs(start, 1);
  VertexId other = (su_[removed_slot] == start) ? sv_[removed_slot] : su_[removed_slot];
  if (!side_[other]) bfs(other, 2);
}

void TreePacking::do_swap(std::size_t j, std::int32_t out_slot, std::int32_t in_slot) {
  journal_.push_back({std::uint32_t(j), out_slot, in_slot});
  if (out_slot >= 0) {
    tree_erase(j, std::uint32_t(out_slot));
    load_[out_slot] -= 1;
  }
  if (in_slot >= 0) {
    tree_insert(j, std::uint32_t(in_slot));
    load_[in_slot] += 1;
  }
}

void TreePacking::rollback() {
  for (auto it = journal_.rbegin(); it != journal_.rend(); ++it) {
    if (it->added >= 0) {
      tree_erase(it->tree, std::uint32_t(it->added));
      load_[it->added] -= 1;
    }
    if (it->removed >= 0) {
      tree_insert(it->tree, std::uint32_t(it->removed));
      load_[it->removed] += 1;
    }
  }
  journal_.clear();
}

bool TreePacking::run_pass(std::int32_t inserted, std::int32_t deleted, std::int64_t cap) {
  std::size_t ns = slot_id_.size();
  w_.assign(ns, 0);
  delta_.assign(ns, 0);
  pending_.assign(ns, 0);
  dirty_.clear();
  journal_.clear();

  std::vector<std::uint32_t> path;
  std::vector<std::uint32_t> dirty_now;

  for (std::size_t j = 0; j < trees_.size(); ++j) {
    std::size_t jmark = journal_.size();

    // lock net load changes so untouched changes still compare at their old
    // value; they are unlocked one edge at a time below
    dirty_now.clear();
    for (std::uint32_t s : dirty_)
      if (delta_[s] != 0 && alive_[s]) dirty_now.push_back(s);
    std::sort(dirty_now.begin(), dirty_now.end(),
              [&](std::uint32_t a, std::uint32_t b) { return slot_id_[a] < slot_id_[b]; });
    dirty_now.erase(std::unique(dirty_now.begin(), dirty_now.end()), dirty_now.end());
    for (std::uint32_t s : dirty_now) pending_[s] = 1;

    // forced removal of the dead edge
    if (deleted >= 0 && tree_has(j, std::uint32_t(deleted))) {
      mark_side(j, std::uint32_t(deleted), su_[deleted]);
      std::int32_t best = -1;
      for (std::uint32_t s = 0; s < ns; ++s) {
        if (!alive_[s] || std::int32_t(s) == deleted) continue;
        char a = side_[su_[s]], b = side_[sv_[s]];
        if (!((a == 1 && b == 2) || (a == 2 && b == 1))) continue;
        if (best < 0 || key(s) < key(std::uint32_t(best))) best = std::int32_t(s);
      }
      if (best < 0) {
        // legitimate shrink only when one side holds no live edge endpoint
        bool side_busy[3] = {false, false, false};
        for (std::uint32_t s = 0; s < ns; ++s) {
          if (!alive_[s]) continue;
          side_busy[int(side_[su_[s]])] = true;
          side_busy[int(side_[sv_[s]])] = true;
        }
        if (side_busy[1] && side_busy[2]) {
          rollback();
          return false;  // would disconnect the packed graph
        }
        do_swap(j, deleted, -1);
      } else {
        if (cap >= 0 && load_[best] + 1 > cap) {
          rollback();
          return false;
        }
        do_swap(j, deleted, best);
      }
    }

    // unlock in deterministic id order, one exact MST repair per edge
    for (std::uint32_t s : dirty_now) {
      pending_[s] = 0;
      if (delta_[s] < 0) {
        // got lighter: may enter the tree
        if (tree_has(j, s) || su_[s] == sv_[s]) continue;
        if (!find_path(j, su_[s], sv_[s], path)) {
          if (cap >= 0 && load_[s] + 1 > cap) {
            rollback();
            return false;
          }
          do_swap(j, -1, s);
          continue;
        }
        std::uint32_t worst = path[0];
        for (std::uint32_t f : path)
          if (key(worst) < key(f)) worst = f;
        if (key(s) < key(worst)) {
          if (cap >= 0 && load_[s] + 1 > cap) {
            rollback();
            return false;
          }
          do_swap(j, worst, s);
        }
      } else if (delta_[s] > 0) {
        // got heavier: may leave the tree
        if (!tree_has(j, s)) continue;
        mark_side(j, s, su_[s]);
        std::int32_t best = -1;
        for (std::uint32_t r = 0; r < ns; ++r) {
          if (!alive_[r] || r == s) continue;
          char a = side_[su_[r]], b = side_[sv_[r]];
          if (!((a == 1 && b == 2) || (a == 2 && b == 1))) continue;
          if (best < 0 || key(r) < key(std::uint32_t(best))) best = std::int32_t(r);
        }
        if (best >= 0 && key(std::uint32_t(best)) < key(s)) {
          if (cap >= 0 && load_[best] + 1 > cap) {
            rollback();
            return false;
          }
          do_swap(j, s, best);
        }
      }
    }

    // the brand-new edge is a candidate for every tree
    if (inserted >= 0 && su_[inserted] != sv_[inserted] && !tree_has(j, std::uint32_t(inserted))) {
      if (!find_path(j, su_[inserted], sv_[inserted], path)) {
        do_swap(j, -1, inserted);
      } else {
        std::uint32_t worst = path[0];
        for (std::uint32_t f : path)
          if (key(worst) < key(f)) worst = f;
        if (key(std::uint32_t(inserted)) < key(worst)) do_swap(j, worst, inserted);
      }
    }

    // propagate this tree's membership changes to downstream prefixes; the
    // inserted edge is special-cased per tree and never joins the dirty set
    for (std::size_t k = jmark; k < journal_.size(); ++k) {
      const auto& e = journal_[k];
      if (e.removed >= 0 && e.removed != inserted) {
        if (delta_[e.removed] == 0) dirty_.push_back(std::uint32_t(e.removed));
        delta_[e.removed] -= 1;
      }
      if (e.added >= 0 && e.added != inserted) {
        if (delta_[e.added] == 0) dirty_.push_back(std::uint32_t(e.added));
        delta_[e.added] += 1;
      }
    }
    for (std::uint32_t s : trees_[j]) w_[s] += 1;
  }
  return true;
}

TreePacking::UpdateReport TreePacking::finish_report() {
  UpdateReport rep;
  std::map<std::uint32_t, std::int64_t> net;
  for (const auto& e : journal_) {
    if (e.removed >= 0) {
      net[std::uint32_t(e.removed)] -= 1;
      ++rep.recourse;
    }
    if (e.added >= 0) {
      net[std::uint32_t(e.added)] += 1;
      ++rep.recourse;
    }
    if (rep.changed_trees.empty() || rep.changed_trees.back() != e.tree)
      rep.changed_trees.push_back(e.tree);
  }
  std::sort(rep.changed_trees.begin(), rep.changed_trees.end());
  rep.changed_trees.erase(std::unique(rep.changed_trees.begin(), rep.changed_trees.end()),
                          rep.changed_trees.end());
  for (auto [s, d] : net) {
    if (d == 0) continue;
    rep.load_changes.push_back({slot_id_[s], load_[s] - d, load_[s]});
  }
  journal_.clear();
  return rep;
}

TreePacking::UpdateReport TreePacking::insert_edge(EdgeId id, VertexId u, VertexId v) {
  if (u >= n_ || v >= n_) throw std::out_of_range("packing: vertex out of range");
  std::uint32_t s = alloc_slot(id, u, v);
  bool ok = run_pass(std::int32_t(s), -1, -1);
  assert(ok);
  (void)ok;
  return finish_report();
}

TreePacking::UpdateReport TreePacking::delete_edge(EdgeId id, std::int64_t cap_load) {
  auto it = id2slot_.find(id);
  if (it == id2slot_.end()) throw std::invalid_argument("packing: unknown edge");
  std::uint32_t s = it->second;
  alive_[s] = 0;
  --alive_count_;
  if (!run_pass(-1, std::int32_t(s), cap_load)) {
    alive_[s] = 1;
    ++alive_count_;
    UpdateReport rep;
    rep.committed = false;
    return rep;
  }
  assert(load_[s] == 0);
  auto rep = finish_report();
  release_slot(s);
  return rep;
}

TreePacking::UpdateReport TreePacking::resize(std::size_t n_trees) {
  UpdateReport rep;
  std::map<std::uint32_t, std::int64_t> net;
  while (trees_.size() > n_trees) {
    for (std::uint32_t s : trees_.back()) {
      load_[s] -= 1;
      net[s] -= 1;
    }
    trees_.pop_back();
  }
  while (trees_.size() < n_trees) {
    append_greedy_tree();
    rep.changed_trees.push_back(std::uint32_t(trees_.size() - 1));
    for (std::uint32_t s : trees_.back()) net[s] += 1;
  }
  for (auto [s, d] : net) {
    if (d == 0) continue;
    rep.load_changes.push_back({slot_id_[s], load_[s] - d, load_[s]});
    rep.recourse += std::size_t(d < 0 ? -d : d);
  }
  return rep;
}

}  // namespace treepack
