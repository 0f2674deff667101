#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <unordered_map>
#include <vector>

#include "treepack/multigraph.hpp"
#include "treepack/rational.hpp"

namespace treepack {

struct GreedyWitness {
  std::size_t tree = 0;
  EdgeId nontree = 0;
  EdgeId treeedge = 0;
};

// Load-order greedy check: for every tree, every non-tree edge e and every
// tree edge f on e's tree path, load_before(f) <= load_before(e).
bool is_greedy(const MultiGraph& g, const std::vector<std::vector<EdgeId>>& trees,
               GreedyWitness* witness = nullptr);

// One tree appended to an existing packing; loads_before are the packing's
// loads prior to this tree.
bool tree_extends_greedily(const MultiGraph& g, const std::vector<EdgeId>& tree,
                           const std::map<EdgeId, std::int64_t>& loads_before,
                           GreedyWitness* witness = nullptr);

// Dynamic greedy tree-packing. Trees are successive minimum spanning trees
// under (load, id) keys; insert/delete repair every tree with exact
// single-change MST updates, so the state always equals a from-scratch build.
class TreePacking {
 public:
  struct LoadChange {
    EdgeId edge;
    std::int64_t before, after;
  };
  struct UpdateReport {
    bool committed = true;
    std::size_t recourse = 0;  // changed tree slots
    std::vector<std::uint32_t> changed_trees;
    std::vector<LoadChange> load_changes;
  };

  TreePacking() = default;
  // build_greedy: N successive MSTs of g
  TreePacking(const MultiGraph& g, std::size_t n_trees);

  std::size_t size() const { return trees_.size(); }
  std::size_t live_edges() const { return alive_count_; }
  VertexId vertex_count() const { return n_; }

  UpdateReport insert_edge(EdgeId id, VertexId u, VertexId v);
  // cap_load < 0 disables the cap. Fails (committed=false, state unchanged)
  // if removal would disconnect the packed graph or push a load past cap.
  UpdateReport delete_edge(EdgeId id, std::int64_t cap_load = -1);
  UpdateReport resize(std::size_t n_trees);

  bool has_edge(EdgeId id) const { return id2slot_.count(id) != 0; }
  std::int64_t load(EdgeId id) const;
  std::int64_t min_load_value() const;  // over live edges
  std::int64_t max_load_value() const;
  std::pair<Rational, EdgeId> min_load() const;  // relative load + witness id
  std::pair<Rational, EdgeId> max_load() const;
  std::map<EdgeId, Rational> loads() const;
  std::map<EdgeId, std::int64_t> loads_int() const;

  std::vector<EdgeId> tree(std::size_t j) const;
  std::vector<std::vector<EdgeId>> tree_list() const;

  // fast view for cut evaluations
  const std::vector<std::uint32_t>& tree_slots(std::size_t j) const { return trees_[j]; }
  EdgeId slot_id(std::uint32_t s) const { return slot_id_[s]; }
  VertexId slot_u(std::uint32_t s) const { return su_[s]; }
  VertexId slot_v(std::uint32_t s) const { return sv_[s]; }
  bool slot_alive(std::uint32_t s) const { return alive_[s]; }
  std::uint32_t slot_count() const { return std::uint32_t(slot_id_.size()); }
  std::optional<std::uint32_t> slot_of(EdgeId id) const;

 private:
  struct Journal {
    std::uint32_t tree;
    std::int32_t removed;  // slot or -1
    std::int32_t added;    // slot or -1
  };

  std::uint32_t alloc_slot(EdgeId id, VertexId u, VertexId v);
  void release_slot(std::uint32_t s);
  void build_tree_adj(std::size_t j) const;
  bool tree_has(std::size_t j, std::uint32_t s) const;
  void tree_insert(std::size_t j, std::uint32_t s);
  void tree_erase(std::size_t j, std::uint32_t s);
  // key under mixed weights: pending dirty edges still use their old value
  std::pair<std::int64_t, EdgeId> key(std::uint32_t s) const;
  bool find_path(std::size_t j, VertexId from, VertexId to, std::vector<std::uint32_t>& out) const;
  void mark_side(std::size_t j, std::uint32_t removed_slot, VertexId start) const;
  void do_swap(std::size_t j, std::int32_t out_slot, std::int32_t in_slot);
  void rollback();
  // run one pass over all trees; returns false on abort
  bool run_pass(std::int32_t inserted, std::int32_t deleted, std::int64_t cap);
  UpdateReport finish_report();
  void append_greedy_tree();

  VertexId n_ = 0;
  std::vector<EdgeId> slot_id_;
  std::vector<VertexId> su_, sv_;
  std::vector<char> alive_;
  std::vector<std::int64_t> load_;
  std::unordered_map<EdgeId, std::uint32_t> id2slot_;
  std::vector<std::uint32_t> free_slots_;
  std::size_t alive_count_ = 0;
  std::vector<std::vector<std::uint32_t>> trees_;  // slots, sorted

  // scratch (sized lazily per update)
  mutable std::vector<std::int64_t> w_;       // prefix loads during a pass
  mutable std::vector<std::int32_t> delta_;   // net prefix change vs pre-update
  mutable std::vector<char> pending_;         // dirty edge not yet unlocked
  std::vector<std::uint32_t> dirty_;
  std::vector<Journal> journal_;
  // tree adjacency scratch
  mutable std::vector<std::int32_t> adj_head_;
  mutable std::vector<std::int32_t> adj_next_;
  mutable std::vector<std::uint32_t> adj_slot_;
  mutable std::vector<VertexId> adj_to_;
  mutable std::vector<char> side_;
  mutable std::vector<std::int32_t> par_edge_;
  mutable std::vector<VertexId> par_vert_;
  mutable std::vector<VertexId> bfs_q_;
};

}  // namespace treepack
