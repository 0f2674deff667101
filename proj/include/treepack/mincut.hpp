#pragma once

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <unordered_map>
#include <vector>

#include "treepack/dynforest.hpp"
#include "treepack/io.hpp"
#include "treepack/leveled.hpp"
#include "treepack/multigraph.hpp"
#include "treepack/packing.hpp"
#include "treepack/rational.hpp"

namespace treepack {
namespace mincut {

struct MinCutConfig {
  std::int64_t lambda_max = 4;
  std::int64_t packing_constant = 1536;  // trees per level: const * mu^3 * ceil(log2 m)
  std::int64_t proof_c = 2;              // fixed by the analysis; validated below
  std::int64_t proof_gamma = 8;
  bool sparsify = false;

  void validate() const;
};

// a_mu = 2/mu - 3/(8 mu^2)
Rational a_threshold(std::int64_t mu);

inline int ceil_log2(std::size_t m) {
  std::size_t x = m < 2 ? 2 : m;
  int l = 0;
  while ((std::size_t(1) << l) < x) ++l;
  return l;
}

struct OneRespecting {
  bool valid = false;
  std::int64_t value = 0;
  EdgeId tree_edge = 0;
};

// Minimum over tree edges f of the number of real edges with exactly one
// endpoint in the side below f. Loops never cross. Works on spanning forests;
// ties broken by smallest tree-edge id.
OneRespecting one_respecting_min(const MultiGraph& g, const std::vector<EdgeId>& tree);
std::vector<EdgeId> one_respecting_cut_edges(const MultiGraph& g, const std::vector<EdgeId>& tree,
                                             EdgeId tree_edge);

// Implicit G_a: components of the low-load subgraph with external degree sums
// S(C), kept in a min-heap. Events mirror packing load transitions.
class ContractionView {
 public:
  ContractionView(VertexId n, Rational a);

  void edge_inserted(EdgeId id, VertexId u, VertexId v, bool low);
  void edge_deleted(EdgeId id);
  void load_crossed(EdgeId id, bool now_low);

  const Rational& a() const { return a_; }
  bool tracks(EdgeId id) const { return side_.count(id) != 0; }
  bool is_low(EdgeId id) const { return side_.at(id); }
  std::size_t class_count() const { return heap_.size(); }
  // nullopt = infinity (single class)
  std::optional<std::int64_t> minimum() const;
  VertexId min_component_rep() const;
  std::int64_t external_of(VertexId v) const;
  // external edges of v's component; loops of G_a are listed twice
  std::vector<EdgeId> cut_edges_of(VertexId v) const;
  bool component_has_ga_loop(VertexId v) const;

 private:
  struct Rec {
    VertexId u, v;
    bool low;
  };
  void heap_remove(VertexId any_vertex);
  void heap_insert(VertexId any_vertex);
  void make_low(EdgeId id, const Rec& r);
  void make_high(EdgeId id, const Rec& r);

  VertexId n_;
  Rational a_;
  SpanningForest gamma_;
  WeightedForest wf_;
  std::map<EdgeId, Rec> edges_;
  std::map<EdgeId, bool> side_;  // true = low (contracted side)
  std::map<VertexId, std::set<EdgeId>> high_at_;
  std::multiset<std::pair<std::int64_t, VertexId>> heap_;
  std::map<VertexId, std::pair<std::int64_t, VertexId>> heap_entry_;  // rep -> entry
};

// Nagamochi-Ibaraki style sparsification: union of k edge-disjoint spanning
// forests, iteratively peeled; preserves every cut of value <= k exactly.
struct SparsifyResult {
  MultiGraph graph;
  std::vector<std::vector<EdgeId>> forests;  // certificate
};
SparsifyResult ni_sparsify(const MultiGraph& g, std::int64_t k);

// Dynamic variant: maintains the k-forest decomposition; the forest union
// changes by at most one added and one removed edge per update.
class DynamicSparsifier {
 public:
  DynamicSparsifier(VertexId n, std::int64_t k);
  struct Delta {
    std::optional<EdgeId> added;    // edge that entered the union
    std::optional<EdgeId> removed;  // edge that left the union
  };
  Delta insert_edge(EdgeId id, VertexId u, VertexId v);
  Delta delete_edge(EdgeId id);
  bool in_union(EdgeId id) const;
  const std::map<EdgeId, EdgeEnds>& union_edges() const { return union_view_; }

 private:
  int forest_of(EdgeId id) const;
  bool connected_in(int j, VertexId a, VertexId b) const;
  void repair(int j, VertexId a, VertexId b, Delta& d);

  VertexId n_;
  std::int64_t k_;
  std::vector<std::map<EdgeId, EdgeEnds>> forests_;  // 0..k-1
  std::map<EdgeId, EdgeEnds> spares_;
  std::map<EdgeId, int> where_;  // forest index, -1 = spare
  std::map<EdgeId, EdgeEnds> union_view_;
};

struct ExistenceVerdict {
  std::int64_t lambda = 0;
  std::size_t trees = 0;
  bool one_respecting = false;
  bool trivial = false;
  bool holds() const { return one_respecting || trivial; }
};

// Builds a greedy packing of packing_constant * lambda^3 * ceil(log2 m) trees
// and evaluates both branches of the existence disjunction.
ExistenceVerdict cut_existence_check(const MultiGraph& g, const MinCutConfig& cfg);

struct CutReport {
  std::int64_t value = 0;
  bool infinite = false;
  enum class Source { OneRespecting, Trivial, Disconnected, Sentinel } source = Source::Sentinel;
  int level = -1;
  std::size_t tree_index = 0;
  EdgeId tree_edge = 0;
  std::int64_t mu = 0;
  std::vector<EdgeId> edges;
};

// The bounded-lambda dynamic estimator: leveled packings, per-tree
// 1-respecting minima, per-mu contraction views, and the global minimum.
class MinCutEstimator {
 public:
  MinCutEstimator(const MinCutConfig& cfg, const MultiGraph& g0);

  void apply(const Update& up);
  // exact lambda while lambda <= lambda_max; lambda_max+1 sentinel above;
  // 0 while the graph is disconnected
  std::int64_t value() const;
  CutReport cut() const;
  const MultiGraph& graph() const { return g_; }

  // introspection for the acceptance suite
  int level_count() const { return int(levels_.size()); }
  const LeveledPacking& level(int i) const { return *levels_[i]; }
  std::int64_t current_lambda_window(int i) const;

 private:
  void rebuild_views(int li);
  void rebuild_tree_values(int li);
  void process_report(int li, const LeveledPacking::SettleReport& rep,
                      std::optional<EdgeId> inserted, std::optional<EdgeId> deleted);
  void eval_tree(int li, std::size_t t);
  bool load_is_low(int li, EdgeId id, std::int64_t load, std::int64_t mu) const;
  std::size_t target_for(int li) const;

  MinCutConfig cfg_;
  MultiGraph g_;  // the graph the machinery runs on (sparsified when enabled)
  MultiGraph real_;  // the true graph (differs from g_ only when sparsifying)
  std::unique_ptr<DynamicSparsifier> sparsifier_;
  int log_m_;
  std::vector<std::unique_ptr<LeveledPacking>> levels_;
  // per level: per-tree 1-respecting values and witnesses
  std::vector<std::vector<std::int64_t>> tree_value_;
  std::vector<std::vector<EdgeId>> tree_witness_;
  std::vector<std::multiset<std::pair<std::int64_t, std::size_t>>> tree_heap_;
  // per mu in 1..lambda_max: view fed by level floor(log2 mu)
  std::vector<std::unique_ptr<ContractionView>> views_;
  // memo for identical trees within one update
  std::unordered_map<std::uint64_t, std::pair<std::int64_t, EdgeId>> memo_;
};

}  // namespace mincut
}  // namespace treepack
