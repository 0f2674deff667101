#include "treepack/dynforest.hpp"

#include <algorithm>
#include <cassert>
#include <memory>
#include <stdexcept>

namespace treepack {
namespace detail {

namespace {

void pull(EttNode* x) {
  x->sub = 1;
  x->cnt_vertex = (x->is_vertex ? 1u : 0u);
  x->wsum = x->is_vertex ? x->w : 0;
  x->wpos = (x->is_vertex && x->w > 0) ? 1u : 0u;
  x->agg_tree = x->flag_tree;
  x->agg_adj = x->flag_adj;
  for (EttNode* c : {x->left, x->right}) {
    if (!c) continue;
    x->sub += c->sub;
    x->cnt_vertex += c->cnt_vertex;
    x->wsum += c->wsum;
    x->wpos += c->wpos;
    x->agg_tree = x->agg_tree || c->agg_tree;
    x->agg_adj = x->agg_adj || c->agg_adj;
  }
}

void fix_up(EttNode* x) {
  while (x) {
    pull(x);
    x = x->parent;
  }
}

EttNode* top(EttNode* x) {
  while (x->parent) x = x->parent;
  return x;
}

EttNode* merge_roots(EttNode* a, EttNode* b) {
  if (!a) return b;
  if (!b) return a;
  if (a->pri > b->pri) {
    EttNode* r = merge_roots(a->right, b);
    a->right = r;
    r->parent = a;
    pull(a);
    return a;
  }
  EttNode* l = merge_roots(a, b->left);
  b->left = l;
  l->parent = b;
  pull(b);
  return b;
}

std::uint64_t position_of(const EttNode* x) {
  std::uint64_t pos = x->left ? x->left->sub : 0;
  const EttNode* cur = x;
  const EttNode* p = x->parent;
  while (p) {
    if (cur == p->right) pos += (p->left ? p->left->sub : 0) + 1;
    cur = p;
    p = p->parent;
  }
  return pos;
}

// split into (strictly before x, x and after)
std::pair<EttNode*, EttNode*> split_before(EttNode* x) {
  EttNode* L = x->left;
  if (L) {
    L->parent = nullptr;
    x->left = nullptr;
  }
  EttNode* R = x;
  EttNode* cur = x;
  EttNode* p = x->parent;
  x->parent = nullptr;
  pull(x);
  while (p) {
    EttNode* gp = p->parent;
    bool from_left = (p->left == cur);
    if (from_left)
      p->left = nullptr;
    else
      p->right = nullptr;
    p->parent = nullptr;
    pull(p);
    if (from_left)
      R = merge_roots(R, p);
    else
      L = merge_roots(p, L);
    cur = p;
    p = gp;
  }
  return {L, R};
}

// split into (x and before, strictly after x)
std::pair<EttNode*, EttNode*> split_after(EttNode* x) {
  EttNode* R = x->right;
  if (R) {
    R->parent = nullptr;
    x->right = nullptr;
  }
  EttNode* L = x;
  EttNode* cur = x;
  EttNode* p = x->parent;
  x->parent = nullptr;
  pull(x);
  while (p) {
    EttNode* gp = p->parent;
    bool from_left = (p->left == cur);
    if (from_left)
      p->left = nullptr;
    else
      p->right = nullptr;
    p->parent = nullptr;
    pull(p);
    if (from_left)
      R = merge_roots(R, p);
    else
      L = merge_roots(p, L);
    cur = p;
    p = gp;
  }
  return {L, R};
}

}  // namespace

EulerForest::EulerForest(VertexId n, std::uint64_t seed) : rng_(seed) {
  vnode_.resize(n);
  for (VertexId v = 0; v < n; ++v) {
    EttNode* x = new_node();
    x->u = x->v = v;
    x->is_vertex = true;
    pull(x);
    vnode_[v] = x;
  }
}

EulerForest::~EulerForest() {
  for (EttNode* x : pool_) delete x;
}

EttNode* EulerForest::new_node() {
  EttNode* x;
  if (!free_.empty()) {
    x = free_.back();
    free_.pop_back();
    *x = EttNode();
  } else {
    x = new EttNode();
    pool_.push_back(x);
  }
  x->pri = rng_.next();
  return x;
}

void EulerForest::free_node(EttNode* x) {
  x->left = x->right = x->parent = nullptr;
  free_.push_back(x);
}

EttNode* EulerForest::root_of(VertexId v) const { return top(vnode_[v]); }

std::uint32_t EulerForest::tree_size(VertexId v) const { return root_of(v)->cnt_vertex; }

void EulerForest::reroot(VertexId v) {
  EttNode* x = vnode_[v];
  auto [a, b] = split_before(x);
  merge_roots(b, a);
}

std::pair<EttNode*, EttNode*> EulerForest::link(VertexId a, VertexId b) {
  if (connected(a, b)) throw std::invalid_argument("link would create a cycle");
  reroot(a);
  reroot(b);
  EttNode* ab = new_node();
  ab->u = a;
  ab->v = b;
  pull(ab);
  EttNode* ba = new_node();
  ba->u = b;
  ba->v = a;
  pull(ba);
  EttNode* t = merge_roots(top(vnode_[a]), ab);
  t = merge_roots(t, top(vnode_[b]));
  merge_roots(t, ba);
  return {ab, ba};
}

void EulerForest::cut(EttNode* arc_ab, EttNode* arc_ba) {
  EttNode* first = arc_ab;
  EttNode* second = arc_ba;
  if (position_of(first) > position_of(second)) std::swap(first, second);
  auto [p, q] = split_before(first);
  (void)q;
  auto [qa, z] = split_after(second);
  (void)qa;
  auto [f_only, rest] = split_after(first);
  (void)f_only;
  (void)rest;
  auto [mid, s_only] = split_before(second);
  (void)mid;
  (void)s_only;
  merge_roots(p, z);
  free_node(first);
  free_node(second);
}

void EulerForest::add_weight(VertexId v, std::int64_t delta) {
  EttNode* x = vnode_[v];
  x->w += delta;
  fix_up(x);
}

std::int64_t EulerForest::total_weight(VertexId v) const { return root_of(v)->wsum; }

std::uint32_t EulerForest::positive_count(VertexId v) const { return root_of(v)->wpos; }

void EulerForest::for_each_positive(VertexId v, const std::function<bool(VertexId)>& fn) const {
  std::function<bool(EttNode*)> go = [&](EttNode* x) -> bool {
    if (!x || x->wpos == 0) return true;
    if (!go(x->left)) return false;
    if (x->is_vertex && x->w > 0)
      if (!fn(x->u)) return false;
    return go(x->right);
  };
  go(root_of(v));
}

VertexId EulerForest::min_vertex(VertexId v) const {
  VertexId best = v;
  std::function<void(EttNode*)> go = [&](EttNode* x) {
    if (!x) return;
    go(x->left);
    if (x->is_vertex && x->u < best) best = x->u;
    go(x->right);
  };
  go(root_of(v));
  return best;
}

void EulerForest::set_tree_flag(EttNode* arc, bool on) {
  arc->flag_tree = on;
  fix_up(arc);
}

void EulerForest::set_adj_flag(VertexId v, bool on) {
  EttNode* x = vnode_[v];
  x->flag_adj = on;
  fix_up(x);
}

void EulerForest::for_each_flagged_arc(VertexId v, const std::function<bool(EttNode*)>& fn) const {
  std::function<bool(EttNode*)> go = [&](EttNode* x) -> bool {
    if (!x || !x->agg_tree) return true;
    if (!go(x->left)) return false;
    if (x->flag_tree)
      if (!fn(x)) return false;
    return go(x->right);
  };
  go(root_of(v));
}

void EulerForest::for_each_flagged_vertex(VertexId v, const std::function<bool(VertexId)>& fn) const {
  std::function<bool(EttNode*)> go = [&](EttNode* x) -> bool {
    if (!x || !x->agg_adj) return true;
    if (!go(x->left)) return false;
    if (x->flag_adj)
      if (!fn(x->u)) return false;
    return go(x->right);
  };
  go(root_of(v));
}

}  // namespace detail

namespace {
int levels_for(VertexId n) {
  int l = 1;
  while ((VertexId(1) << l) < std::max<VertexId>(n, 2)) ++l;
  return l + 1;
}
}  // namespace

SpanningForest::SpanningForest(VertexId n) : n_(n), max_level_(levels_for(n)) {
  forests_.reserve(max_level_ + 1);
  for (int i = 0; i <= max_level_; ++i)
    forests_.push_back(std::make_unique<detail::EulerForest>(n, 0x9E1Fu * (i + 1)));
  adj_.resize(max_level_ + 1);
}

bool SpanningForest::connected(VertexId a, VertexId b) const {
  return forests_[0]->connected(a, b);
}

std::uint32_t SpanningForest::component_size(VertexId v) const {
  return forests_[0]->tree_size(v);
}

VertexId SpanningForest::component_rep(VertexId v) const { return forests_[0]->min_vertex(v); }

bool SpanningForest::is_tree_edge(EdgeId id) const {
  auto it = edges_.find(id);
  return it != edges_.end() && it->second.tree;
}

std::pair<VertexId, VertexId> SpanningForest::edge_ends(EdgeId id) const {
  const auto& e = edges_.at(id);
  return {e.u, e.v};
}

void SpanningForest::make_tree_edge(EdgeId id, EdgeRec& e, int level) {
  e.tree = true;
  e.level = level;
  e.arcs.clear();
  for (int j = 0; j <= level; ++j) {
    auto pr = forests_[j]->link(e.u, e.v);
    pr.first->edge_id = id;
    pr.second->edge_id = id;
    e.arcs.push_back(pr);
  }
  forests_[level]->set_tree_flag(e.arcs[level].first, true);
}

void SpanningForest::add_nontree(EdgeId id, EdgeRec& e) {
  int j = e.level;
  for (VertexId x : {e.u, e.v}) {
    auto& s = adj_[j][x];
    s.insert(id);
    forests_[j]->set_adj_flag(x, true);
    if (e.u == e.v) break;
  }
}

void SpanningForest::remove_nontree(EdgeId id, EdgeRec& e) {
  int j = e.level;
  for (VertexId x : {e.u, e.v}) {
    auto it = adj_[j].find(x);
    if (it != adj_[j].end()) {
      it->second.erase(id);
      if (it->second.empty()) {
        adj_[j].erase(it);
        forests_[j]->set_adj_flag(x, false);
      }
    }
    if (e.u == e.v) break;
  }
}

ForestDelta SpanningForest::insert_edge(EdgeId id, VertexId u, VertexId v) {
  if (edges_.count(id)) throw std::invalid_argument("edge id already present");
  if (u >= n_ || v >= n_) throw std::out_of_range("vertex id out of range");
  EdgeRec e;
  e.u = u;
  e.v = v;
  e.level = 0;
  ForestDelta d;
  auto [it, ok] = edges_.emplace(id, e);
  (void)ok;
  if (u == v) {
    it->second.loop = true;  // loops never affect connectivity
    return d;
  }
  if (!forests_[0]->connected(u, v)) {
    make_tree_edge(id, it->second, 0);
    d.added = id;
  } else {
    add_nontree(id, it->second);
  }
  return d;
}

std::optional<EdgeId> SpanningForest::search_replacement(VertexId eu, VertexId ev, int level) {
  for (int j = level; j >= 0; --j) {
    auto& fj = *forests_[j];
    VertexId side = fj.tree_size(eu) <= fj.tree_size(ev) ? eu : ev;
    // raise the level of the smaller side's level-j tree edges
    std::vector<detail::EttNode*> arcs;
    fj.for_each_flagged_arc(side, [&](detail::EttNode* a) {
      arcs.push_back(a);
      return true;
    });
    for (detail::EttNode* a : arcs) {
      EdgeId fid = a->edge_id;
      EdgeRec& f = edges_.at(fid);
      assert(f.tree && f.level == j);
      if (j + 1 > max_level_) {
        assert(false && "level cap exceeded");
        continue;
      }
      fj.set_tree_flag(a, false);
      f.level = j + 1;
      auto pr = forests_[j + 1]->link(f.u, f.v);
      pr.first->edge_id = fid;
      pr.second->edge_id = fid;
      f.arcs.push_back(pr);
      forests_[j + 1]->set_tree_flag(pr.first, true);
    }
    // scan the smaller side's level-j non-tree edges for a reconnecting one
    for (;;) {
      VertexId x = VertexId(-1);
      fj.for_each_flagged_vertex(side, [&](VertexId cand) {
        x = cand;
        return false;
      });
      if (x == VertexId(-1)) break;
      auto ids = adj_[j].at(x);  // copy: mutated below
      std::optional<EdgeId> rep;
      for (EdgeId fid : ids) {
        EdgeRec& f = edges_.at(fid);
        VertexId y = (f.u == x) ? f.v : f.u;
        if (fj.root_of(y) != fj.root_of(x)) {
          rep = fid;
          break;
        }
        remove_nontree(fid, f);
        assert(j + 1 <= max_level_ && "level cap exceeded");
        f.level = std::min(j + 1, max_level_);
        add_nontree(fid, f);
      }
      if (rep) {
        EdgeRec& f = edges_.at(*rep);
        remove_nontree(*rep, f);
        make_tree_edge(*rep, f, j);
        return rep;
      }
    }
  }
  return std::nullopt;
}

ForestDelta SpanningForest::delete_edge(EdgeId id) {
  auto it = edges_.find(id);
  if (it == edges_.end()) throw std::invalid_argument("unknown edge id");
  ForestDelta d;
  if (it->second.loop) {
    edges_.erase(it);
    return d;
  }
  if (!it->second.tree) {
    remove_nontree(id, it->second);
    edges_.erase(it);
    return d;
  }
  VertexId eu = it->second.u, ev = it->second.v;
  int level = it->second.level;
  for (int j = level; j >= 0; --j) {
    forests_[j]->set_tree_flag(it->second.arcs[j].first, false);
    forests_[j]->cut(it->second.arcs[j].first, it->second.arcs[j].second);
  }
  edges_.erase(it);
  d.removed = id;
  d.added = search_replacement(eu, ev, level);
  return d;
}

WeightedForest::WeightedForest(VertexId n) : ett_(n, 0x57F0u) {}

void WeightedForest::link(VertexId u, VertexId v, EdgeId id) {
  if (arcs_.count(id)) throw std::invalid_argument("edge id already linked");
  arcs_[id] = ett_.link(u, v);
  ends_[id] = {u, v};
}

void WeightedForest::cut(EdgeId id) {
  auto it = arcs_.find(id);
  if (it == arcs_.end()) throw std::invalid_argument("cut of non-forest edge");
  ett_.cut(it->second.first, it->second.second);
  arcs_.erase(it);
  ends_.erase(id);
}

void WeightedForest::increment_weight(VertexId v) { ett_.add_weight(v, 1); }

void WeightedForest::decrement_weight(VertexId v) {
  if (ett_.weight(v) < 1) throw std::invalid_argument("decrement below zero");
  ett_.add_weight(v, -1);
}

std::vector<VertexId> WeightedForest::list_positive(VertexId v) const {
  std::vector<VertexId> out;
  ett_.for_each_positive(v, [&](VertexId x) {
    out.push_back(x);
    return true;
  });
  return out;
}

}  // namespace treepack
