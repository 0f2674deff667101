#include "treepack/multigraph.hpp"

#include <algorithm>
#include <queue>

namespace treepack {

void MultiGraph::check_vertex(VertexId v) const {
  if (v >= n_) throw std::out_of_range("vertex id out of range");
}

EdgeId MultiGraph::add_edge(VertexId u, VertexId v) {
  check_vertex(u);
  check_vertex(v);
  EdgeId id = next_id_++;
  add_edge_with_id(id, u, v);
  return id;
}

void MultiGraph::add_edge_with_id(EdgeId id, VertexId u, VertexId v) {
  check_vertex(u);
  check_vertex(v);
  if (edges_.count(id)) throw std::invalid_argument("edge id already live");
  if (id >= next_id_ && id < kVirtualIdBase) next_id_ = id + 1;
  edges_[id] = {u, v};
  degree_[u] += (u == v) ? 2 : 1;
  if (u != v) degree_[v] += 1;
}

std::pair<VertexId, VertexId> MultiGraph::remove_edge(EdgeId id) {
  auto it = edges_.find(id);
  if (it == edges_.end()) throw std::invalid_argument("unknown or dead edge id");
  auto [u, v] = it->second;
  degree_[u] -= (u == v) ? 2 : 1;
  if (u != v) degree_[v] -= 1;
  edges_.erase(it);
  return {u, v};
}

EdgeId MultiGraph::remove_one(VertexId u, VertexId v) {
  check_vertex(u);
  check_vertex(v);
  for (const auto& [id, e] : edges_) {
    if ((e.u == u && e.v == v) || (e.u == v && e.v == u)) {
      remove_edge(id);
      return id;
    }
  }
  throw std::invalid_argument("no live edge between the given endpoints");
}

EdgeEnds MultiGraph::endpoints(EdgeId id) const {
  auto it = edges_.find(id);
  if (it == edges_.end()) throw std::invalid_argument("unknown or dead edge id");
  return it->second;
}

std::int64_t MultiGraph::degree(VertexId v) const {
  check_vertex(v);
  return degree_[v];
}

namespace {
struct Dsu {
  std::vector<VertexId> p;
  explicit Dsu(VertexId n) : p(n) {
    for (VertexId i = 0; i < n; ++i) p[i] = i;
  }
  VertexId find(VertexId x) {
    while (p[x] != x) x = p[x] = p[p[x]];
    return x;
  }
  bool unite(VertexId a, VertexId b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (a > b) std::swap(a, b);
    p[b] = a;  // smaller vertex is the representative
    return true;
  }
};
}  // namespace

std::pair<MultiGraph, QuotientMap> MultiGraph::contract(const std::set<EdgeId>& low) const {
  Dsu dsu(n_);
  for (EdgeId id : low) {
    auto e = endpoints(id);
    dsu.unite(e.u, e.v);
  }
  QuotientMap q;
  q.class_of.assign(n_, 0);
  std::map<VertexId, VertexId> rep_to_class;
  for (VertexId v = 0; v < n_; ++v) {
    VertexId r = dsu.find(v);
    auto it = rep_to_class.find(r);
    if (it == rep_to_class.end()) {
      it = rep_to_class.emplace(r, VertexId(q.classes.size())).first;
      q.classes.emplace_back();
    }
    q.class_of[v] = it->second;
    q.classes[it->second].push_back(v);
  }
  MultiGraph out(VertexId(q.classes.size()));
  for (const auto& [id, e] : edges_) {
    if (low.count(id)) continue;
    out.add_edge_with_id(id, q.class_of[e.u], q.class_of[e.v]);
  }
  return {std::move(out), std::move(q)};
}

MultiGraph MultiGraph::induced(const std::vector<VertexId>& s) const {
  std::vector<VertexId> sorted(s);
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  std::vector<VertexId> idx(n_, VertexId(-1));
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    check_vertex(sorted[i]);
    idx[sorted[i]] = VertexId(i);
  }
  MultiGraph out(VertexId(sorted.size()));
  for (const auto& [id, e] : edges_) {
    if (idx[e.u] != VertexId(-1) && idx[e.v] != VertexId(-1))
      out.add_edge_with_id(id, idx[e.u], idx[e.v]);
  }
  return out;
}

MultiGraph MultiGraph::duplicate_edges(std::uint32_t s) const {
  if (s < 1) throw std::invalid_argument("duplication factor must be >= 1");
  MultiGraph out(n_);
  for (const auto& [id, e] : edges_) out.add_edge_with_id(id, e.u, e.v);
  out.next_id_ = next_id_;
  for (const auto& [id, e] : edges_) {
    (void)id;
    for (std::uint32_t c = 1; c < s; ++c) out.add_edge(e.u, e.v);
  }
  return out;
}

std::vector<VertexId> components(const MultiGraph& g) {
  Dsu dsu(g.n());
  for (const auto& [id, e] : g.edges()) {
    (void)id;
    dsu.unite(e.u, e.v);
  }
  std::vector<VertexId> comp(g.n());
  std::map<VertexId, VertexId> rep_to_comp;
  for (VertexId v = 0; v < g.n(); ++v) {
    VertexId r = dsu.find(v);
    auto it = rep_to_comp.find(r);
    if (it == rep_to_comp.end()) it = rep_to_comp.emplace(r, VertexId(rep_to_comp.size())).first;
    comp[v] = it->second;
  }
  return comp;
}

bool is_connected(const MultiGraph& g) {
  if (g.n() <= 1) return true;
  auto comp = components(g);
  for (VertexId v = 1; v < g.n(); ++v)
    if (comp[v] != comp[0]) return false;
  return true;
}

std::size_t edge_bearing_components(const MultiGraph& g) {
  auto comp = components(g);
  std::set<VertexId> busy;
  for (const auto& [id, e] : g.edges()) {
    (void)id;
    busy.insert(comp[e.u]);
  }
  return busy.size();
}

}  // namespace treepack
