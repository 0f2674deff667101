#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

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
MultiGraph k4() {
  MultiGraph g(4);
  for (VertexId i = 0; i < 4; ++i)
    for (VertexId j = i + 1; j < 4; ++j) g.add_edge(i, j);
  return g;
}
MultiGraph bridge_triangles() {
  MultiGraph g(6);
  g.add_edge(0, 1);
  g.add_edge(1, 2);
  g.add_edge(2, 0);
  g.add_edge(3, 4);
  g.add_edge(4, 5);
  g.add_edge(5, 3);
  g.add_edge(0, 3);
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

TEST_CASE("mincut on staples") {
  CHECK(oracle::mincut_exact(c4()).value == 2);
  CHECK(oracle::mincut_exact(k4()).value == 3);
  auto b = oracle::mincut_exact(bridge_triangles());
  CHECK(b.value == 1);
  REQUIRE(b.edges.size() == 1);
  auto e = bridge_triangles().endpoints(b.edges[0]);
  CHECK(((e.u == 0 && e.v == 3) || (e.u == 3 && e.v == 0)));
}

TEST_CASE("stoer-wagner agrees with subset enumeration") {
  Rng rng(5);
  for (int t = 0; t < 120; ++t) {
    auto g = random_connected(rng, 3 + VertexId(rng.below(8)), int(rng.below(10)));
    CHECK(oracle::mincut_exact(g).value == oracle::mincut_subsets(g));
  }
}

TEST_CASE("mincut edges disconnect with exactly that many removals") {
  Rng rng(6);
  for (int t = 0; t < 60; ++t) {
    auto g = random_connected(rng, 3 + VertexId(rng.below(7)), int(rng.below(9)));
    auto mc = oracle::mincut_exact(g);
    MultiGraph h = g;
    for (EdgeId id : mc.edges) h.remove_edge(id);
    CHECK(std::int64_t(mc.edges.size()) == mc.value);
    CHECK_FALSE(is_connected(h));
  }
}

TEST_CASE("alpha and rho on staples") {
  CHECK(oracle::alpha_exact(c4()) == rat(4, 3));
  CHECK(oracle::density_exact(c4()) == rat(1));
  CHECK(oracle::alpha_exact(k4()) == rat(2));
  CHECK(oracle::density_exact(k4()) == rat(3, 2));
  MultiGraph single(2);
  single.add_edge(0, 1);
  CHECK(oracle::alpha_exact(single) == rat(1));
  CHECK(oracle::density_exact(single) == rat(1, 2));
  CHECK(oracle::alpha_exact(bridge_triangles()) == rat(3, 2));
}

TEST_CASE("rho <= alpha always; lambda <= 2 alpha") {
  Rng rng(9);
  for (int t = 0; t < 100; ++t) {
    auto g = random_connected(rng, 3 + VertexId(rng.below(6)), int(rng.below(8)));
    auto a = oracle::alpha_exact(g);
    CHECK(oracle::density_exact(g) <= a);
    CHECK(rat(oracle::mincut_exact(g).value) <= 2 * a);
  }
}

TEST_CASE("ga_degrees_naive conventions") {
  auto g = bridge_triangles();
  std::map<EdgeId, Rational> loads;
  for (const auto& [id, e] : g.edges()) {
    (void)e;
    loads[id] = rat(1, 4);
  }
  // everything below a: single component, no external edges
  auto all_low = oracle::ga_degrees_naive(g, loads, rat(1, 2));
  REQUIRE(all_low.size() == 1);
  CHECK(all_low.begin()->second == 0);
  // everything at/above a: original degree multiset
  auto all_high = oracle::ga_degrees_naive(g, loads, rat(1, 8));
  CHECK(all_high.size() == 6);
  // mixed: only the bridge above a -> components {0,1,2}, {3,4,5} with S = 1
  std::map<EdgeId, Rational> mixed = loads;
  mixed[6] = rat(3, 4);
  auto two = oracle::ga_degrees_naive(g, mixed, rat(1, 2));
  REQUIRE(two.size() == 2);
  for (auto& [rep, s] : two) {
    (void)rep;
    CHECK(s == 1);
  }
}

TEST_CASE("ga_degrees counts loops twice") {
  MultiGraph g(2);
  EdgeId a = g.add_edge(0, 1);
  EdgeId l = g.add_edge(1, 1);
  std::map<EdgeId, Rational> loads{{a, rat(0)}, {l, rat(1)}};
  auto s = oracle::ga_degrees_naive(g, loads, rat(1, 2));
  REQUIRE(s.size() == 1);
  CHECK(s.begin()->second == 2);
}

TEST_CASE("greedy_reference parallel pair") {
  MultiGraph g(2);
  g.add_edge(0, 1);
  g.add_edge(0, 1);
  auto trees = oracle::greedy_reference(g, 4);
  std::map<EdgeId, int> load;
  for (auto& t : trees)
    for (EdgeId id : t) load[id] += 1;
  CHECK(load[0] == 2);
  CHECK(load[1] == 2);
}

TEST_CASE("greedy_reference is greedy and N=1 on a tree returns the tree") {
  Rng rng(17);
  MultiGraph tree(5);
  for (VertexId v = 1; v < 5; ++v) tree.add_edge(v, VertexId(rng.below(v)));
  auto t = oracle::greedy_reference(tree, 1);
  REQUIRE(t.size() == 1);
  CHECK(t[0].size() == 4);
  for (int trial = 0; trial < 40; ++trial) {
    auto g = random_connected(rng, 3 + VertexId(rng.below(5)), int(rng.below(6)));
    auto trees = oracle::greedy_reference(g, 1 + rng.below(8));
    CHECK(is_greedy(g, trees));
  }
}
