#include "treepack/ideal.hpp"

#include <algorithm>
#include <stdexcept>

#include "treepack/oracles.hpp"

namespace treepack {
namespace ideal {

namespace {

struct Enumerator {
  std::size_t n;
  std::vector<std::vector<VertexId>> lower;  // lower[v]: smaller endpoints of v's edges
  std::vector<int> rgs;
  std::vector<int> best_rgs;
  Rational best_val;
  int best_blocks = 0;
  bool found = false;
  std::int64_t cross = 0;

  void consider() {
    int blocks = *std::max_element(rgs.begin(), rgs.end()) + 1;
    if (blocks < 2) return;
    Rational val(cross, blocks - 1);
    val.canonicalize();
    if (!found || val < best_val || (val == best_val && blocks > best_blocks)) {
      // enumeration order is lexicographic, so the first hit at equal
      // (val, blocks) is the lexicographically smallest growth string
      found = true;
      best_val = val;
      best_blocks = blocks;
      best_rgs = rgs;
    }
  }

  void go(std::size_t i, int max_label) {
    if (i == n) {
      consider();
      return;
    }
    // cross edges only grow and the final partition has at most n blocks
    if (found) {
      Rational bound(cross, std::int64_t(n) - 1);
      bound.canonicalize();
      if (bound > best_val) return;
    }
    for (int b = 0; b <= max_label + 1 && b < int(n); ++b) {
      std::int64_t added = 0;
      for (VertexId u : lower[i])
        if (rgs[u] != b) ++added;
      rgs[i] = b;
      cross += added;
      go(i + 1, std::max(max_label, b));
      cross -= added;
      rgs[i] = -1;
    }
  }
};

}  // namespace

std::pair<Partition, Rational> min_partition(const MultiGraph& g, std::size_t max_n) {
  if (!is_connected(g)) throw std::invalid_argument("min_partition: graph must be connected");
  if (g.n() < 2) throw std::invalid_argument("min_partition: need at least 2 vertices");
  if (g.n() > max_n) throw std::invalid_argument("min_partition: n above enumeration bound");
  Enumerator en;
  en.n = g.n();
  en.lower.assign(en.n, {});
  for (const auto& [id, e] : g.edges()) {
    (void)id;
    if (e.u != e.v) en.lower[std::max(e.u, e.v)].push_back(std::min(e.u, e.v));
  }
  en.rgs.assign(en.n, -1);
  en.rgs[0] = 0;
  en.go(1, 0);
  if (!en.found) throw std::runtime_error("min_partition: enumeration failed");
  Partition p;
  p.part_val = en.best_val;
  p.blocks.assign(en.best_blocks, {});
  for (std::size_t v = 0; v < en.n; ++v) p.blocks[en.best_rgs[v]].push_back(VertexId(v));
  return {p, p.part_val};
}

Rational phi(const MultiGraph& g, std::size_t max_n) { return min_partition(g, max_n).second; }

namespace {

void recurse(const MultiGraph& g, const std::vector<VertexId>& verts, int parent, std::size_t max_n,
             IdealLoads& out) {
  // build the induced subgraph with a local index, keeping edge ids
  std::vector<int> idx(g.n(), -1);
  for (std::size_t i = 0; i < verts.size(); ++i) idx[verts[i]] = int(i);
  MultiGraph sub(VertexId(verts.size()));
  for (const auto& [id, e] : g.edges())
    if (idx[e.u] >= 0 && idx[e.v] >= 0) sub.add_edge_with_id(id, VertexId(idx[e.u]), VertexId(idx[e.v]));
  if (sub.m() == 0) return;

  auto [part, phi_val] = min_partition(sub, max_n);
  IdealNode node;
  node.vertices = verts;
  node.phi = phi_val;
  node.parent = parent;
  std::vector<int> block_of(verts.size(), 0);
  for (std::size_t b = 0; b < part.blocks.size(); ++b) {
    std::vector<VertexId> orig;
    for (VertexId lv : part.blocks[b]) {
      orig.push_back(verts[lv]);
      block_of[lv] = int(b);
    }
    node.blocks.push_back(std::move(orig));
  }
  int me = int(out.nodes.size());
  auto blocks = node.blocks;  // nodes vector reallocates during recursion
  out.nodes.push_back(std::move(node));

  Rational inv = rat(1) / phi_val;
  for (const auto& [id, e] : sub.edges())
    if (block_of[e.u] != block_of[e.v]) out.ell[id] = inv;

  for (const auto& blk : blocks)
    if (blk.size() >= 2) recurse(g, blk, me, max_n, out);
}

}  // namespace

IdealLoads ideal_loads(const MultiGraph& g, std::size_t max_n) {
  if (!is_connected(g)) throw std::invalid_argument("ideal_loads: graph must be connected");
  for (const auto& [id, e] : g.edges()) {
    (void)id;
    if (e.u == e.v) throw std::invalid_argument("ideal_loads: self-loops are not assigned a load");
  }
  IdealLoads out;
  std::vector<VertexId> all(g.n());
  for (VertexId v = 0; v < g.n(); ++v) all[v] = v;
  recurse(g, all, -1, max_n, out);
  if (out.ell.size() != g.m()) throw std::runtime_error("ideal_loads: some edge missed by the recursion");
  return out;
}

Rational alpha_exact_via_loads(const MultiGraph& g, std::size_t max_n) {
  auto loads = ideal_loads(g, max_n);
  bool first = true;
  Rational mn;
  for (const auto& [id, l] : loads.ell) {
    (void)id;
    if (first || l < mn) {
      mn = l;
      first = false;
    }
  }
  if (first) throw std::invalid_argument("alpha_exact_via_loads: graph has no edges");
  return rat(1) / mn;
}

bool phi_lambda_check(const MultiGraph& g, std::size_t max_n) {
  auto mc = oracle::mincut_exact(g);
  if (mc.infinite || mc.value == 0) throw std::invalid_argument("phi_lambda_check: need a connected graph");
  Rational lam = rat(mc.value);
  Rational p = phi(g, max_n);
  return lam / 2 < p && p <= lam;
}

}  // namespace ideal
}  // namespace treepack
