#include "treepack/oracles.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <stdexcept>

namespace treepack {
namespace oracle {

MinCutResult mincut_exact(const MultiGraph& g) {
  MinCutResult res;
  if (g.n() <= 1) {
    res.infinite = true;
    res.value = std::numeric_limits<std::int64_t>::max();
    return res;
  }
  if (!is_connected(g)) {
    res.value = 0;
    return res;
  }
  std::size_t n = g.n();
  // adjacency weights; loops never cross a cut and are ignored
  std::vector<std::vector<std::int64_t>> w(n, std::vector<std::int64_t>(n, 0));
  for (const auto& [id, e] : g.edges()) {
    (void)id;
    if (e.u == e.v) continue;
    w[e.u][e.v] += 1;
    w[e.v][e.u] += 1;
  }
  // groups[i] = original vertices merged into supervertex i
  std::vector<std::vector<VertexId>> groups(n);
  for (std::size_t i = 0; i < n; ++i) groups[i] = {VertexId(i)};
  std::vector<bool> gone(n, false);
  std::int64_t best = std::numeric_limits<std::int64_t>::max();
  std::vector<VertexId> best_side;

  for (std::size_t phase = n; phase > 1; --phase) {
    std::vector<std::int64_t> key(n, 0);
    std::vector<bool> in_a(n, false);
    std::size_t prev = 0, last = 0;
    for (std::size_t it = 0; it < phase; ++it) {
      std::size_t sel = SIZE_MAX;
      for (std::size_t v = 0; v < n; ++v)
        if (!gone[v] && !in_a[v] && (sel == SIZE_MAX || key[v] > key[sel])) sel = v;
      in_a[sel] = true;
      prev = last;
      last = sel;
      for (std::size_t v = 0; v < n; ++v)
        if (!gone[v] && !in_a[v]) key[v] += w[sel][v];
    }
    // cut of the phase: last supervertex against the rest
    std::int64_t cut = key[last];
    if (cut < best) {
      best = cut;
      best_side = groups[last];
    }
    // merge last into prev
    gone[last] = true;
    for (VertexId v : groups[last]) groups[prev].push_back(v);
    for (std::size_t v = 0; v < n; ++v) {
      if (gone[v] || v == prev) continue;
      w[prev][v] += w[last][v];
      w[v][prev] += w[v][last];
    }
  }

  res.value = best;
  std::vector<bool> side(n, false);
  for (VertexId v : best_side) side[v] = true;
  for (const auto& [id, e] : g.edges())
    if (e.u != e.v && side[e.u] != side[e.v]) res.edges.push_back(id);
  return res;
}

std::int64_t mincut_subsets(const MultiGraph& g) {
  std::size_t n = g.n();
  if (n <= 1) return std::numeric_limits<std::int64_t>::max();
  if (n > 20) throw std::invalid_argument("mincut_subsets: n too large");
  std::int64_t best = std::numeric_limits<std::int64_t>::max();
  for (std::uint32_t mask = 1; mask < (1u << (n - 1)); ++mask) {
    // vertex n-1 always on the 0 side: each split counted once
    std::int64_t cut = 0;
    for (const auto& [id, e] : g.edges()) {
      (void)id;
      if (e.u == e.v) continue;
      bool su = (e.u < n - 1) && ((mask >> e.u) & 1u);
      bool sv = (e.v < n - 1) && ((mask >> e.v) & 1u);
      if (su != sv) ++cut;
    }
    best = std::min(best, cut);
  }
  return best;
}

namespace {
Rational best_subset_ratio(const MultiGraph& g, int denom_offset, std::size_t min_size) {
  std::size_t n = g.n();
  if (n > 20) throw std::invalid_argument("subset oracle: n too large");
  std::vector<std::pair<VertexId, VertexId>> es;
  es.reserve(g.m());
  for (const auto& [id, e] : g.edges()) {
    (void)id;
    es.push_back({e.u, e.v});
  }
  Rational best = rat(0);
  bool any = false;
  for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
    std::size_t sz = __builtin_popcount(mask);
    if (sz < min_size) continue;
    std::int64_t inside = 0;
    for (auto [u, v] : es)
      if (((mask >> u) & 1u) && ((mask >> v) & 1u)) ++inside;
    Rational val(inside, std::int64_t(sz) + denom_offset);
    val.canonicalize();
    if (!any || val > best) {
      best = val;
      any = true;
    }
  }
  return best;
}
}  // namespace

Rational alpha_exact(const MultiGraph& g) { return best_subset_ratio(g, -1, 2); }

Rational density_exact(const MultiGraph& g) { return best_subset_ratio(g, 0, 1); }

std::map<VertexId, std::int64_t> ga_degrees_naive(const MultiGraph& g,
                                                  const std::map<EdgeId, Rational>& loads,
                                                  const Rational& a) {
  std::vector<VertexId> parent(g.n());
  for (VertexId v = 0; v < g.n(); ++v) parent[v] = v;
  std::function<VertexId(VertexId)> find = [&](VertexId x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& [id, e] : g.edges()) {
    if (loads.at(id) < a) {
      VertexId ra = find(e.u), rb = find(e.v);
      if (ra != rb) parent[std::max(ra, rb)] = std::min(ra, rb);
    }
  }
  std::map<VertexId, std::int64_t> s;
  for (VertexId v = 0; v < g.n(); ++v) s[find(v)] += 0;
  for (const auto& [id, e] : g.edges()) {
    if (loads.at(id) < a) continue;
    s[find(e.u)] += 1;
    s[find(e.v)] += 1;  // loops contribute twice to the same component
  }
  return s;
}

std::vector<std::vector<EdgeId>> greedy_reference(const MultiGraph& g, std::size_t n_trees) {
  if (!is_connected(g)) throw std::invalid_argument("greedy_reference: graph must be connected");
  std::map<EdgeId, std::int64_t> load;
  for (const auto& [id, e] : g.edges()) {
    (void)e;
    load[id] = 0;
  }
  std::vector<std::vector<EdgeId>> trees;
  trees.reserve(n_trees);
  std::size_t n = g.n();
  for (std::size_t t = 0; t < n_trees; ++t) {
    // Prim with (load, id) keys
    std::vector<bool> in(n, false);
    in[0] = true;
    std::vector<EdgeId> tree;
    while (tree.size() + 1 < n) {
      bool have = false;
      EdgeId pick = 0;
      std::int64_t pick_load = 0;
      VertexId grow = 0;
      for (const auto& [id, e] : g.edges()) {
        if (e.u == e.v) continue;
        if (in[e.u] == in[e.v]) continue;
        std::int64_t l = load[id];
        if (!have || l < pick_load || (l == pick_load && id < pick)) {
          have = true;
          pick = id;
          pick_load = l;
          grow = in[e.u] ? e.v : e.u;
        }
      }
      if (!have) throw std::runtime_error("greedy_reference: graph disconnected");
      in[grow] = true;
      tree.push_back(pick);
    }
    for (EdgeId id : tree) load[id] += 1;
    std::sort(tree.begin(), tree.end());
    trees.push_back(std::move(tree));
  }
  return trees;
}

}  // namespace oracle
}  // namespace treepack
