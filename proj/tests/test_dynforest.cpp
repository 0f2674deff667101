#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>
#include <set>

#include "treepack/dynforest.hpp"
#include "treepack/rng.hpp"

using namespace treepack;

namespace {

// reference connectivity by BFS over a live edge list
std::vector<int> ref_components(VertexId n, const std::map<EdgeId, std::pair<VertexId, VertexId>>& edges) {
  std::vector<std::vector<VertexId>> adj(n);
  for (const auto& [id, e] : edges) {
    (void)id;
    if (e.first == e.second) continue;
    adj[e.first].push_back(e.second);
    adj[e.second].push_back(e.first);
  }
  std::vector<int> comp(n, -1);
  int c = 0;
  for (VertexId s = 0; s < n; ++s) {
    if (comp[s] >= 0) continue;
    comp[s] = c;
    std::vector<VertexId> q{s};
    for (std::size_t h = 0; h < q.size(); ++h)
      for (VertexId y : adj[q[h]])
        if (comp[y] < 0) {
          comp[y] = c;
          q.push_back(y);
        }
    ++c;
  }
  return comp;
}

}  // namespace

TEST_CASE("weighted forest basics") {
  WeightedForest f(4);
  f.increment_weight(0);
  f.increment_weight(1);
  f.link(0, 1, 100);
  CHECK(f.total_weight(0) == 2);
  CHECK(f.total_weight(1) == 2);
  f.cut(100);
  CHECK(f.total_weight(0) == 1);
  CHECK(f.total_weight(1) == 1);
  f.link(0, 1, 101);
  CHECK_THROWS(f.link(0, 1, 102));  // cycle
  CHECK_THROWS(f.cut(555));
}

TEST_CASE("weight increments and errors") {
  WeightedForest f(2);
  CHECK(f.weight(0) == 0);
  CHECK_THROWS(f.decrement_weight(0));
  f.increment_weight(0);
  f.increment_weight(0);
  f.increment_weight(0);
  f.decrement_weight(0);
  CHECK(f.weight(0) == 2);
}

TEST_CASE("list_positive on a path") {
  WeightedForest f(3);
  f.link(0, 1, 1);
  f.link(1, 2, 2);
  f.increment_weight(1);
  f.increment_weight(1);
  f.increment_weight(2);
  CHECK(f.total_weight(0) == 3);
  auto pos = f.list_positive(0);
  CHECK(pos == std::vector<VertexId>{1, 2});
  f.cut(2);
  CHECK(f.total_weight(0) == 2);
  CHECK(f.total_weight(2) == 1);
}

TEST_CASE("spanning forest small deltas") {
  SpanningForest sf(4);
  auto d = sf.insert_edge(0, 0, 1);
  CHECK(d.added == EdgeId(0));
  d = sf.insert_edge(1, 2, 3);
  CHECK(d.added == EdgeId(1));
  d = sf.insert_edge(2, 1, 2);
  CHECK(d.added == EdgeId(2));
  d = sf.insert_edge(3, 0, 3);  // closes a cycle
  CHECK_FALSE(d.added.has_value());
  d = sf.delete_edge(3);  // non-tree delete
  CHECK_FALSE(d.removed.has_value());
  sf.insert_edge(4, 0, 3);
  d = sf.delete_edge(2);  // tree edge, replacement exists
  CHECK(d.removed == EdgeId(2));
  CHECK(d.added == EdgeId(4));
  CHECK(sf.connected(1, 2));
}

TEST_CASE("spanning forest randomized stress vs BFS") {
  Rng rng(42);
  const VertexId n = 64;
  SpanningForest sf(n);
  std::map<EdgeId, std::pair<VertexId, VertexId>> live;
  EdgeId next = 0;
  int ops = 20000;
  for (int step = 0; step < ops; ++step) {
    bool ins = live.empty() || rng.chance(11, 20);
    if (ins) {
      VertexId u = VertexId(rng.below(n)), v = VertexId(rng.below(n));
      auto d = sf.insert_edge(next, u, v);
      live[next] = {u, v};
      ++next;
      int cnt = (d.removed ? 1 : 0) + (d.added ? 1 : 0);
      CHECK(cnt <= 2);
    } else {
      auto it = live.begin();
      std::advance(it, rng.below(live.size()));
      auto d = sf.delete_edge(it->first);
      int cnt = (d.removed ? 1 : 0) + (d.added ? 1 : 0);
      CHECK(cnt <= 2);
      live.erase(it);
    }
    if (step % 7 == 0) {
      auto comp = ref_components(n, live);
      for (int probe = 0; probe < 16; ++probe) {
        VertexId a = VertexId(rng.below(n)), b = VertexId(rng.below(n));
        CHECK(sf.connected(a, b) == (comp[a] == comp[b]));
      }
    }
  }
}

TEST_CASE("weighted forest aggregates vs direct sums under churn") {
  Rng rng(43);
  const VertexId n = 32;
  WeightedForest wf(n);
  std::map<EdgeId, std::pair<VertexId, VertexId>> forest;
  std::vector<std::int64_t> w(n, 0);
  EdgeId next = 0;
  for (int step = 0; step < 6000; ++step) {
    int what = int(rng.below(4));
    if (what == 0) {
      VertexId u = VertexId(rng.below(n)), v = VertexId(rng.below(n));
      if (u != v && !wf.connected(u, v)) {
        wf.link(u, v, next);
        forest[next] = {u, v};
        ++next;
      }
    } else if (what == 1 && !forest.empty()) {
      auto it = forest.begin();
      std::advance(it, rng.below(forest.size()));
      wf.cut(it->first);
      forest.erase(it);
    } else if (what == 2) {
      VertexId v = VertexId(rng.below(n));
      wf.increment_weight(v);
      ++w[v];
    } else {
      VertexId v = VertexId(rng.below(n));
      if (w[v] > 0) {
        wf.decrement_weight(v);
        --w[v];
      }
    }
    if (step % 11 == 0) {
      auto comp = ref_components(n, forest);
      std::map<int, std::int64_t> sums;
      std::map<int, std::set<VertexId>> pos;
      for (VertexId v = 0; v < n; ++v) {
        sums[comp[v]] += w[v];
        if (w[v] > 0) pos[comp[v]].insert(v);
      }
      VertexId probe = VertexId(rng.below(n));
      CHECK(wf.total_weight(probe) == sums[comp[probe]]);
      auto lst = wf.list_positive(probe);
      std::set<VertexId> got(lst.begin(), lst.end());
      CHECK(got == pos[comp[probe]]);
    }
  }
}
