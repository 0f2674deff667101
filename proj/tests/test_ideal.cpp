#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "treepack/ideal.hpp"
#include "treepack/oracles.hpp"
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

TEST_CASE("phi on staples") {
  MultiGraph single(2);
  single.add_edge(0, 1);
  CHECK(ideal::phi(single) == rat(1));
  CHECK(ideal::phi(k4()) == rat(2));
  CHECK(ideal::phi(c4()) == rat(4, 3));
}

TEST_CASE("min_partition rejects bad input") {
  MultiGraph dis(3);
  dis.add_edge(0, 1);
  CHECK_THROWS(ideal::min_partition(dis));
  MultiGraph big(13);
  for (VertexId v = 1; v < 13; ++v) big.add_edge(v, v - 1);
  CHECK_THROWS(ideal::min_partition(big));
}

TEST_CASE("ideal loads of a tree are all 1") {
  MultiGraph g(5);
  g.add_edge(0, 1);
  g.add_edge(1, 2);
  g.add_edge(1, 3);
  g.add_edge(3, 4);
  auto il = ideal::ideal_loads(g);
  for (const auto& [id, l] : il.ell) {
    (void)id;
    CHECK(l == rat(1));
  }
}

TEST_CASE("triangle with a pendant edge") {
  MultiGraph g(4);
  EdgeId t1 = g.add_edge(0, 1);
  EdgeId t2 = g.add_edge(1, 2);
  EdgeId t3 = g.add_edge(2, 0);
  EdgeId pend = g.add_edge(2, 3);
  auto il = ideal::ideal_loads(g);
  CHECK(il.ell[pend] == rat(1));
  CHECK(il.ell[t1] == rat(2, 3));
  CHECK(il.ell[t2] == rat(2, 3));
  CHECK(il.ell[t3] == rat(2, 3));
}

TEST_CASE("alpha via loads vs subset enumeration on staples") {
  CHECK(ideal::alpha_exact_via_loads(c4()) == rat(4, 3));
  CHECK(ideal::alpha_exact_via_loads(k4()) == rat(2));
  // two triangles joined by a bridge: alpha = 3/2 while phi < 3/2
  MultiGraph g(6);
  g.add_edge(0, 1);
  g.add_edge(1, 2);
  g.add_edge(2, 0);
  g.add_edge(3, 4);
  g.add_edge(4, 5);
  g.add_edge(5, 3);
  g.add_edge(0, 3);
  CHECK(ideal::alpha_exact_via_loads(g) == rat(3, 2));
  CHECK(ideal::phi(g) < rat(3, 2));
  CHECK(oracle::alpha_exact(g) == rat(3, 2));
}

TEST_CASE("phi lambda sandwich on staples") {
  MultiGraph single(2);
  single.add_edge(0, 1);
  CHECK(ideal::phi_lambda_check(single));
  CHECK(ideal::phi_lambda_check(c4()));
  CHECK(ideal::phi_lambda_check(k4()));
}

TEST_CASE("structure identity and invariants on random multigraphs") {
  Rng rng(23);
  for (int t = 0; t < 150; ++t) {
    auto g = random_connected(rng, 2 + VertexId(rng.below(6)), int(rng.below(7)));
    auto il = ideal::ideal_loads(g);
    // sum of ideal loads = n - 1
    Rational sum = rat(0);
    Rational mn = il.ell.begin()->second, mx = mn;
    for (const auto& [id, l] : il.ell) {
      (void)id;
      sum += l;
      if (l < mn) mn = l;
      if (l > mx) mx = l;
    }
    CHECK(sum == rat(std::int64_t(g.n()) - 1));
    // max ideal load = 1/phi
    CHECK(mx == rat(1) / ideal::phi(g));
    // structure identity: 1/min = alpha
    CHECK(rat(1) / mn == oracle::alpha_exact(g));
    // phi non-decreasing along the decomposition tree
    for (const auto& node : il.nodes)
      if (node.parent >= 0) CHECK(node.phi >= il.nodes[node.parent].phi);
    // sandwich
    CHECK(ideal::phi_lambda_check(g));
  }
}

TEST_CASE("loads reject self-loops") {
  MultiGraph g(2);
  g.add_edge(0, 1);
  g.add_edge(1, 1);
  CHECK_THROWS(ideal::ideal_loads(g));
}
