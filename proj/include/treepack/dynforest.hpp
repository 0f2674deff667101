#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <vector>

#include "treepack/multigraph.hpp"
#include "treepack/rng.hpp"

namespace treepack {
namespace detail {

// Euler-tour forest over a treap with parent pointers. The tour holds one
// designated node per vertex plus two arc nodes per forest edge. Subtree
// aggregates carry vertex weights and the flag bits the connectivity levels
// search on.
struct EttNode {
  std::uint64_t pri = 0;
  EttNode* left = nullptr;
  EttNode* right = nullptr;
  EttNode* parent = nullptr;
  VertexId u = 0, v = 0;  // u == v for vertex nodes
  EdgeId edge_id = 0;
  bool is_vertex = false;

  std::int64_t w = 0;      // vertex weight (vertex nodes only)
  bool flag_tree = false;  // arc of an edge whose level equals this forest's
  bool flag_adj = false;   // vertex with >= 1 non-tree edge at this level

  std::uint32_t sub = 1;  // total tour nodes in subtree
  std::uint32_t cnt_vertex = 0;
  std::int64_t wsum = 0;
  std::uint32_t wpos = 0;
  bool agg_tree = false;
  bool agg_adj = false;
};

class EulerForest {
 public:
  EulerForest(VertexId n, std::uint64_t seed);
  ~EulerForest();
  EulerForest(const EulerForest&) = delete;
  EulerForest& operator=(const EulerForest&) = delete;

  EttNode* vertex_node(VertexId v) const { return vnode_[v]; }
  EttNode* root_of(VertexId v) const;
  bool connected(VertexId a, VertexId b) const { return root_of(a) == root_of(b); }
  std::uint32_t tree_size(VertexId v) const;
  VertexId min_vertex(VertexId v) const;

  // returns the two arc nodes (u->v, v->u)
  std::pair<EttNode*, EttNode*> link(VertexId a, VertexId b);
  void cut(EttNode* arc_ab, EttNode* arc_ba);

  void add_weight(VertexId v, std::int64_t delta);
  std::int64_t weight(VertexId v) const { return vnode_[v]->w; }
  std::int64_t total_weight(VertexId v) const;
  std::uint32_t positive_count(VertexId v) const;
  void for_each_positive(VertexId v, const std::function<bool(VertexId)>& fn) const;

  void set_tree_flag(EttNode* arc, bool on);
  void set_adj_flag(VertexId v, bool on);
  void for_each_flagged_arc(VertexId v, const std::function<bool(EttNode*)>& fn) const;
  void for_each_flagged_vertex(VertexId v, const std::function<bool(VertexId)>& fn) const;

 private:
  EttNode* new_node();
  void free_node(EttNode* x);
  void reroot(VertexId v);

  std::vector<EttNode*> vnode_;
  std::vector<EttNode*> pool_;
  std::vector<EttNode*> free_;
  Rng rng_;
};

}  // namespace detail

struct ForestDelta {
  std::optional<EdgeId> removed;
  std::optional<EdgeId> added;
};

// Fully dynamic spanning forest (hierarchical amortized scheme). Each update
// changes the forest by at most one removed and one added edge.
class SpanningForest {
 public:
  explicit SpanningForest(VertexId n);

  ForestDelta insert_edge(EdgeId id, VertexId u, VertexId v);
  ForestDelta delete_edge(EdgeId id);

  bool connected(VertexId a, VertexId b) const;
  std::uint32_t component_size(VertexId v) const;
  bool is_tree_edge(EdgeId id) const;
  bool has_edge(EdgeId id) const { return edges_.count(id) != 0; }
  std::pair<VertexId, VertexId> edge_ends(EdgeId id) const;
  // stable component representative: smallest vertex of the component
  VertexId component_rep(VertexId v) const;

 private:
  struct EdgeRec {
    VertexId u = 0, v = 0;
    int level = 0;
    bool tree = false;
    bool loop = false;
    std::vector<std::pair<detail::EttNode*, detail::EttNode*>> arcs;
  };

  void make_tree_edge(EdgeId id, EdgeRec& e, int level);
  void add_nontree(EdgeId id, EdgeRec& e);
  void remove_nontree(EdgeId id, EdgeRec& e);
  std::optional<EdgeId> search_replacement(VertexId eu, VertexId ev, int level);

  VertexId n_;
  int max_level_;
  std::vector<std::unique_ptr<detail::EulerForest>> forests_;
  std::vector<std::map<VertexId, std::set<EdgeId>>> adj_;
  std::map<EdgeId, EdgeRec> edges_;
};

// Dynamic forest with vertex weights and per-tree aggregates: total weight
// and lazy enumeration of positive-weight vertices.
class WeightedForest {
 public:
  explicit WeightedForest(VertexId n);

  void link(VertexId u, VertexId v, EdgeId id);
  void cut(EdgeId id);
  bool connected(VertexId a, VertexId b) const { return ett_.connected(a, b); }

  void increment_weight(VertexId v);
  void decrement_weight(VertexId v);
  std::int64_t weight(VertexId v) const { return ett_.weight(v); }
  std::int64_t total_weight(VertexId v) const { return ett_.total_weight(v); }
  std::vector<VertexId> list_positive(VertexId v) const;
  void for_each_positive(VertexId v, const std::function<bool(VertexId)>& fn) const {
    ett_.for_each_positive(v, fn);
  }

 private:
  detail::EulerForest ett_;
  std::map<EdgeId, std::pair<detail::EttNode*, detail::EttNode*>> arcs_;
  std::map<EdgeId, std::pair<VertexId, VertexId>> ends_;
};

}  // namespace treepack
