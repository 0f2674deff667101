#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>
#include <sstream>

#include "treepack/io.hpp"
#include "treepack/multigraph.hpp"
#include "treepack/rng.hpp"

using namespace treepack;

TEST_CASE("add_edge basics") {
  MultiGraph g(2);
  CHECK(g.add_edge(0, 1) == 0);
  CHECK(g.m() == 1);
  CHECK(g.add_edge(0, 1) == 1);
  CHECK(g.degree(0) == 2);
  CHECK_THROWS(g.add_edge(0, 2));
}

TEST_CASE("self-loop doubles degree") {
  MultiGraph g(4);
  g.add_edge(3, 3);
  g.add_edge(3, 3);
  CHECK(g.degree(3) == 4);
}

TEST_CASE("remove_edge") {
  MultiGraph g(2);
  EdgeId a = g.add_edge(0, 1);
  g.remove_edge(a);
  CHECK(g.m() == 0);
  CHECK_THROWS(g.remove_edge(a));

  EdgeId b = g.add_edge(0, 1);
  EdgeId c = g.add_edge(0, 1);
  CHECK(b != a);  // ids never reused
  g.remove_edge(b);
  CHECK(g.m() == 1);
  CHECK(g.alive(c));
}

TEST_CASE("remove_one picks lowest id copy") {
  MultiGraph g(2);
  EdgeId a = g.add_edge(0, 1);
  g.add_edge(1, 0);
  CHECK(g.remove_one(0, 1) == a);
}

TEST_CASE("contract K3") {
  MultiGraph g(3);
  g.add_edge(0, 1);
  g.add_edge(1, 2);
  g.add_edge(2, 0);
  auto [h, q] = g.contract({});
  CHECK(h.n() == 3);
  CHECK(h.m() == 3);
  CHECK(q.classes.size() == 3);
}

TEST_CASE("contract C4 edge gives triangle") {
  MultiGraph g(4);
  EdgeId ab = g.add_edge(0, 1);
  g.add_edge(1, 2);
  g.add_edge(2, 3);
  g.add_edge(3, 0);
  auto [h, q] = g.contract({ab});
  CHECK(h.n() == 3);
  CHECK(h.m() == 3);
  for (const auto& [id, e] : h.edges()) {
    (void)id;
    CHECK(e.u != e.v);
  }
}

TEST_CASE("contract both parallel copies of the K3+parallel seed") {
  MultiGraph g(3);
  g.add_edge(0, 1);
  EdgeId orig = g.add_edge(1, 2);
  g.add_edge(2, 0);
  EdgeId p = g.add_edge(1, 2);
  auto [h, q] = g.contract({orig, p});
  (void)q;
  CHECK(h.n() == 2);
  CHECK(h.m() == 2);  // two surviving parallel edges between the classes
  for (const auto& [id, e] : h.edges()) {
    (void)id;
    CHECK(e.u != e.v);
  }
}

TEST_CASE("contraction keeps within-class edges as loops") {
  MultiGraph g(3);
  EdgeId a = g.add_edge(0, 1);
  g.add_edge(0, 1);  // parallel survivor becomes a loop
  g.add_edge(1, 2);
  auto [h, q] = g.contract({a});
  bool loop_seen = false;
  for (const auto& [id, e] : h.edges()) {
    (void)id;
    if (e.u == e.v) loop_seen = true;
  }
  CHECK(loop_seen);
  CHECK(h.degree(q.class_of[0]) == 3);  // loop counts twice, cross edge once
}

TEST_CASE("induced") {
  MultiGraph k4(4);
  for (VertexId i = 0; i < 4; ++i)
    for (VertexId j = i + 1; j < 4; ++j) k4.add_edge(i, j);
  auto h = k4.induced({0, 1, 2});
  CHECK(h.n() == 3);
  CHECK(h.m() == 3);

  MultiGraph path(3);
  path.add_edge(0, 1);
  path.add_edge(1, 2);
  auto h2 = path.induced({0, 2});
  CHECK(h2.n() == 2);
  CHECK(h2.m() == 0);
}

TEST_CASE("duplicate_edges") {
  MultiGraph g(2);
  g.add_edge(0, 1);
  auto h1 = g.duplicate_edges(1);
  CHECK(h1.m() == 1);
  auto h3 = g.duplicate_edges(3);
  CHECK(h3.m() == 3);
  CHECK(h3.degree(0) == 3);
}

TEST_CASE("degree sum is 2m under random churn") {
  Rng rng(7);
  MultiGraph g(6);
  std::vector<EdgeId> live;
  for (int step = 0; step < 2000; ++step) {
    if (live.empty() || rng.chance(3, 5)) {
      VertexId u = VertexId(rng.below(6)), v = VertexId(rng.below(6));
      live.push_back(g.add_edge(u, v));
    } else {
      std::size_t k = rng.below(live.size());
      g.remove_edge(live[k]);
      live.erase(live.begin() + k);
    }
    std::int64_t total = 0;
    for (VertexId v = 0; v < 6; ++v) total += g.degree(v);
    CHECK(total == 2 * std::int64_t(g.m()));
  }
}

TEST_CASE("contract of a union equals contract then contract") {
  Rng rng(11);
  for (int trial = 0; trial < 60; ++trial) {
    VertexId n = 3 + VertexId(rng.below(6));
    MultiGraph g(n);
    int m = 4 + int(rng.below(8));
    for (int i = 0; i < m; ++i) g.add_edge(VertexId(rng.below(n)), VertexId(rng.below(n)));
    std::set<EdgeId> a, b, both;
    for (const auto& [id, e] : g.edges()) {
      (void)e;
      if (rng.chance(1, 4)) {
        a.insert(id);
        both.insert(id);
      } else if (rng.chance(1, 4)) {
        b.insert(id);
        both.insert(id);
      }
    }
    auto [g1, q1] = g.contract(a);
    (void)q1;
    std::set<EdgeId> b_in_g1;
    for (EdgeId id : b)
      if (g1.alive(id)) b_in_g1.insert(id);
    auto [g2, q2] = g1.contract(b_in_g1);
    (void)q2;
    auto [gu, qu] = g.contract(both);
    (void)qu;
    CHECK(g2.n() == gu.n());
    CHECK(g2.m() == gu.m());
    for (const auto& [id, e] : gu.edges()) {
      (void)e;
      CHECK(g2.alive(id));
    }
  }
}

TEST_CASE("induced subgraphs plus cross edges partition E") {
  Rng rng(13);
  for (int trial = 0; trial < 40; ++trial) {
    VertexId n = 4 + VertexId(rng.below(4));
    MultiGraph g(n);
    for (int i = 0; i < 10; ++i) g.add_edge(VertexId(rng.below(n)), VertexId(rng.below(n)));
    std::vector<VertexId> s, t;
    for (VertexId v = 0; v < n; ++v) (rng.chance(1, 2) ? s : t).push_back(v);
    auto gs = g.induced(s);
    auto gt = g.induced(t);
    std::size_t cross = 0;
    std::vector<char> in_s(n, 0);
    for (VertexId v : s) in_s[v] = 1;
    for (const auto& [id, e] : g.edges()) {
      (void)id;
      if (in_s[e.u] != in_s[e.v]) ++cross;
    }
    CHECK(gs.m() + gt.m() + cross == g.m());
  }
}

TEST_CASE("graph file round trip") {
  MultiGraph g(4);
  g.add_edge(0, 1);
  g.add_edge(1, 2);
  g.add_edge(2, 2);
  std::ostringstream os;
  write_graph(os, g);
  std::istringstream is("# a comment\n" + os.str());
  auto h = read_graph(is);
  CHECK(h.n() == 4);
  CHECK(h.m() == 3);
  CHECK(h.degree(2) == 3);
}

TEST_CASE("stream parsing") {
  std::istringstream is("+ 0 1\n# note\n- 1 0\n\n+ 2 3\n");
  auto ups = read_stream(is);
  REQUIRE(ups.size() == 3);
  CHECK(ups[0].insert);
  CHECK_FALSE(ups[1].insert);
  CHECK(ups[2].u == 2);
}
