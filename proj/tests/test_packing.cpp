#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "treepack/ideal.hpp"
#include "treepack/leveled.hpp"
#include "treepack/oracles.hpp"
#include "treepack/packing.hpp"
#include "treepack/rng.hpp"

using namespace treepack;

namespace {
MultiGraph c4() {
  MultiGraph g(4);
  g.add_edge(0, 1);
  g.add_edge(1, 2);
  g.add_edge(2, 3);
  g.add_edge(3, 0);
  return g;
}
MultiGraph seed_k3p() {
  // K3 plus one parallel copy: phi = 2, two disjoint spanning trees
  MultiGraph g(3);
  g.add_edge(0, 1);
  g.add_edge(1, 2);
  g.add_edge(2, 0);
  g.add_edge(1, 2);
  return g;
}
MultiGraph random_connected(Rng& rng, VertexId n, int extra) {
  MultiGraph g(n);
  for (VertexId v = 1; v < n; ++v) g.add_edge(v, VertexId(rng.below(v)));
  for (int i = 0; i < extra; ++i) {
    VertexId u = VertexId(rng.below(n)), v = VertexId(rng.below(n));
    if (u == v) continue;
    g.add_edge(u, v);
  }
  return g;
}
}  // namespace

TEST_CASE("build_greedy on two parallel edges") {
  MultiGraph g(2);
  g.add_edge(0, 1);
  g.add_edge(0, 1);
  TreePacking p(g, 3);
  auto loads = p.loads_int();
  CHECK(loads[0] + loads[1] == 3);
  CHECK(std::abs(loads[0] - loads[1]) == 1);
  auto [mn, mn_id] = p.min_load();
  auto [mx, mx_id] = p.max_load();
  CHECK(mn == rat(1, 3));
  CHECK(mx == rat(2, 3));
  (void)mn_id;
  (void)mx_id;
}

TEST_CASE("seed graph packs two disjoint trees") {
  TreePacking p(seed_k3p(), 2);
  auto loads = p.loads_int();
  for (const auto& [id, l] : loads) {
    (void)id;
    CHECK(l == 1);
  }
  CHECK(p.min_load().first == rat(1, 2));
}

TEST_CASE("C4 with 12 trees hits the ideal loads") {
  TreePacking p(c4(), 12);
  CHECK(p.min_load().first == rat(3, 4));
  CHECK(p.max_load().first == rat(3, 4));
  // matches the ideal oracle: phi(C4) = 4/3, ell* = 3/4
  CHECK(ideal::phi(c4()) == rat(4, 3));
}

TEST_CASE("empty packing min_load errors") {
  TreePacking p(c4(), 0);
  CHECK_THROWS(p.min_load());
}

TEST_CASE("build_greedy rejects disconnected graphs") {
  MultiGraph g(4);
  g.add_edge(0, 1);
  g.add_edge(2, 3);
  CHECK_THROWS(TreePacking(g, 2));
}

TEST_CASE("is_greedy accepts construction and catches corruption") {
  Rng rng(3);
  auto g = random_connected(rng, 5, 5);
  TreePacking p(g, 6);
  auto trees = p.tree_list();
  CHECK(is_greedy(g, trees));
  // corrupt: swap a tree edge of the last tree for a heavily loaded non-tree edge
  auto loads = p.loads_int();
  EdgeId heavy = 0;
  std::int64_t heavy_load = -1;
  auto& last = trees.back();
  for (const auto& [id, e] : g.edges()) {
    (void)e;
    if (std::find(last.begin(), last.end(), id) != last.end()) continue;
    if (loads[id] > heavy_load) {
      heavy_load = loads[id];
      heavy = id;
    }
  }
  if (heavy_load > 0) {
    // replace some tree edge with the heavy edge; this usually breaks
    // either greediness or spanning, and both are reported false
    auto broken = trees;
    broken.back()[0] = heavy;
    GreedyWitness w;
    bool ok = is_greedy(g, broken, &w);
    if (!ok) CHECK(w.tree <= broken.size());
  }
}

TEST_CASE("matches the reference packer exactly under the shared tie-break") {
  Rng rng(29);
  for (int t = 0; t < 100; ++t) {
    auto g = random_connected(rng, 2 + VertexId(rng.below(5)), int(rng.below(6)));
    std::size_t n_trees = 1 + rng.below(7);
    TreePacking p(g, n_trees);
    auto ref = oracle::greedy_reference(g, n_trees);
    CHECK(p.tree_list() == ref);
  }
}

TEST_CASE("dynamic updates keep the packing greedy and deterministic") {
  Rng rng(31);
  for (int trial = 0; trial < 25; ++trial) {
    VertexId n = 3 + VertexId(rng.below(4));
    MultiGraph g(n);
    for (VertexId v = 1; v < n; ++v) g.add_edge(v, VertexId(rng.below(v)));
    std::size_t n_trees = 2 + rng.below(10);
    TreePacking p(g, n_trees);
    for (int step = 0; step < 40; ++step) {
      bool ins = g.m() < n || rng.chance(3, 5);
      if (ins) {
        VertexId u = VertexId(rng.below(n)), v = VertexId(rng.below(n));
        if (u == v) continue;
        EdgeId id = g.add_edge(u, v);
        auto rep = p.insert_edge(id, u, v);
        CHECK(rep.committed);
      } else {
        // a delete is refused exactly when it splits the live-edge subgraph
        auto it = g.edges().begin();
        std::advance(it, rng.below(g.m()));
        EdgeId id = it->first;
        MultiGraph h = g;
        h.remove_edge(id);
        if (edge_bearing_components(h) > 1) {
          auto rep = p.delete_edge(id);
          CHECK_FALSE(rep.committed);
          continue;
        }
        g.remove_edge(id);
        auto rep = p.delete_edge(id);
        CHECK(rep.committed);
      }
      CHECK(is_greedy(g, p.tree_list()));
      // dynamic state equals a from-scratch rebuild under the tie-break
      TreePacking fresh(g, n_trees);
      CHECK(p.tree_list() == fresh.tree_list());
    }
  }
}

TEST_CASE("delete with zero load has zero recourse") {
  MultiGraph g(3);
  g.add_edge(0, 1);
  g.add_edge(1, 2);
  g.add_edge(0, 2);
  g.add_edge(0, 2);
  TreePacking p(g, 1);
  // one of the parallel 0-2 edges is unused in the single tree
  for (const auto& [id, e] : g.edges()) {
    (void)e;
    if (p.load(id) == 0) {
      auto rep = p.delete_edge(id);
      CHECK(rep.committed);
      CHECK(rep.recourse == 0);
      return;
    }
  }
  FAIL("expected a load-0 edge");
}

TEST_CASE("bridge deletion is refused, pendant isolation is a shrink") {
  // bridge between two triangles: both sides keep edges -> refused
  MultiGraph g(6);
  g.add_edge(0, 1);
  g.add_edge(1, 2);
  g.add_edge(2, 0);
  g.add_edge(3, 4);
  g.add_edge(4, 5);
  g.add_edge(5, 3);
  EdgeId bridge = g.add_edge(0, 3);
  TreePacking p(g, 2);
  auto rep = p.delete_edge(bridge);
  CHECK_FALSE(rep.committed);
  CHECK(is_greedy(g, p.tree_list()));

  // pendant edge: its removal only isolates a vertex, trees shrink
  MultiGraph h(3);
  h.add_edge(0, 1);
  EdgeId pend = h.add_edge(1, 2);
  TreePacking q(h, 2);
  auto rep2 = q.delete_edge(pend);
  CHECK(rep2.committed);
  h.remove_edge(pend);
  CHECK(is_greedy(h, q.tree_list()));
  CHECK(q.tree(0).size() == 1);
}

TEST_CASE("insert parallel copy rebalances loads") {
  MultiGraph g(2);
  EdgeId a = g.add_edge(0, 1);
  TreePacking p(g, 8);
  CHECK(p.load(a) == 8);
  EdgeId b = g.add_edge(0, 1);
  p.insert_edge(b, 0, 1);
  CHECK(p.load(a) + p.load(b) == 8);
  CHECK(p.load(a) == 4);
  CHECK(is_greedy(g, p.tree_list()));
}

TEST_CASE("greedy concentration at thorup scale") {
  // eta = 1/2: packing ceil(6 lambda ln m / eta^2) trees keeps every load
  // within eta/lambda of the ideal load
  Rng rng(37);
  int done = 0;
  while (done < 12) {
    auto g = random_connected(rng, 3 + VertexId(rng.below(6)), int(rng.below(8)));
    auto mc = oracle::mincut_exact(g);
    if (mc.value < 1 || mc.value > 4) continue;
    ++done;
    double eta = 0.5;
    std::size_t n_trees =
        std::size_t(std::ceil(6.0 * double(mc.value) * std::log(double(g.m())) / (eta * eta)));
    n_trees = std::max<std::size_t>(n_trees, 1);
    TreePacking p(g, n_trees);
    auto il = ideal::ideal_loads(g);
    Rational bound = rat(1, 2) / rat(mc.value);
    for (const auto& [id, l] : p.loads()) {
      Rational diff = l - il.ell[id];
      if (diff < 0) diff = -diff;
      CHECK(diff <= bound);
    }
  }
}

TEST_CASE("leveled packing: virtual path init and queue drainage") {
  // far level: 2^i above the min-cut, path multiplicity 2^(i-4)
  MultiGraph g(4);
  g.add_edge(0, 1);
  g.add_edge(1, 2);
  g.add_edge(2, 3);
  g.add_edge(3, 0);  // C4, lambda = 2
  LeveledPacking lp(LevelFlavor::MinCut, 5, 256, 4, g);
  // multiplicity 2 per path edge, 3 path edges
  CHECK(lp.virtual_count() == 6);
  // min-cut of packed graph >= 2^(i-4) = 2
  CHECK(oracle::mincut_exact(lp.packed_graph()).value >= 2);
  CHECK(lp.packing().max_load_value() <= lp.cap_load());
}

TEST_CASE("leveled packing: one dequeue per update, load caps hold") {
  MultiGraph g(4);
  std::vector<EdgeId> ids;
  for (int c = 0; c < 3; ++c)
    for (VertexId v = 0; v < 4; ++v) ids.push_back(g.add_edge(v, (v + 1) % 4));
  LeveledPacking lp(LevelFlavor::MinCut, 0, 16, 4, g);
  // level 0 on a lambda=6 graph: no virtual edges at init
  CHECK(lp.virtual_count() == 0);
  Rng rng(41);
  MultiGraph mirror = g;
  for (int step = 0; step < 120; ++step) {
    std::size_t before = lp.virtual_count();
    if (rng.chance(1, 2) && mirror.m() > 2) {
      auto it = mirror.edges().begin();
      std::advance(it, rng.below(mirror.m()));
      EdgeId id = it->first;
      mirror.remove_edge(id);
      lp.apply_delete(id);
    } else {
      VertexId u = VertexId(rng.below(4)), v = VertexId(rng.below(4));
      if (u == v) continue;
      EdgeId id = mirror.add_edge(u, v);
      lp.apply_insert(id, u, v);
    }
    CHECK(lp.packing().max_load_value() <= lp.cap_load());
    // at most one executed deletion per update
    CHECK(lp.virtual_count() + 1 + 1 >= before);
    CHECK(is_greedy(lp.packed_graph(), lp.packing().tree_list()));
  }
}

TEST_CASE("exhaustive greedy maintenance on tiny graphs") {
  Rng rng(53);
  for (int trial = 0; trial < 40; ++trial) {
    VertexId n = 2 + VertexId(rng.below(5));  // n <= 6
    MultiGraph g(n);
    for (VertexId v = 1; v < n; ++v) g.add_edge(v, VertexId(rng.below(v)));
    std::size_t n_trees = 1 + rng.below(12);
    TreePacking p(g, n_trees);
    for (int step = 0; step < 30; ++step) {
      if (rng.chance(1, 2)) {
        VertexId u = VertexId(rng.below(n)), v = VertexId(rng.below(n));
        if (u == v) continue;
        EdgeId id = g.add_edge(u, v);
        p.insert_edge(id, u, v);
      } else if (g.m() > 1) {
        auto it = g.edges().begin();
        std::advance(it, rng.below(g.m()));
        EdgeId id = it->first;
        MultiGraph h = g;
        h.remove_edge(id);
        if (!is_connected(h)) continue;
        g.remove_edge(id);
        p.delete_edge(id);
      }
      CHECK(is_greedy(g, p.tree_list()));
    }
  }
}
