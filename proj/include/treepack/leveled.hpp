#pragma once

#include <deque>
#include <map>
#include <set>
#include <vector>

#include "treepack/multigraph.hpp"
#include "treepack/packing.hpp"

namespace treepack {

enum class LevelFlavor { MinCut, Arboricity };

// One level of the leveled maintenance scheme: a greedy packing over the
// packed graph (real edges plus virtual edges), the 8/16 load thresholds,
// the virtual-edge deletion queue, and for the arboricity flavor the
// low-degree vertex buffering.
class LeveledPacking {
 public:
  struct SettleReport {
    std::size_t recourse = 0;
    std::vector<std::uint32_t> changed_trees;
    // net per-edge load transitions over the whole settled update
    std::vector<TreePacking::LoadChange> load_changes;
    bool virtualized = false;  // the deleted edge was retained as virtual
  };

  LeveledPacking(LevelFlavor flavor, int level, std::size_t target_trees, VertexId n,
                 const MultiGraph& g0);

  SettleReport apply_insert(EdgeId id, VertexId u, VertexId v);
  SettleReport apply_delete(EdgeId id);
  SettleReport set_target_trees(std::size_t n_trees);

  const TreePacking& packing() const { return pack_; }
  const MultiGraph& packed_graph() const { return packed_; }
  int level() const { return level_; }
  std::size_t target_trees() const { return target_; }
  bool edge_is_virtual(EdgeId id) const { return virtual_.count(id) != 0; }
  std::size_t virtual_count() const { return virtual_.size(); }
  std::size_t queue_size() const { return queued_.size(); }
  bool is_active_vertex(VertexId v) const { return flavor_ == LevelFlavor::MinCut || active_[v]; }

  // load cap 16*N/2^i and deletion threshold 8*N/2^i as integer load bounds
  std::int64_t cap_load() const { return threshold(16); }
  std::int64_t enqueue_load() const { return threshold(8); }

 private:
  std::int64_t threshold(std::int64_t num) const;
  EdgeId fresh_virtual_id() { return next_virtual_id_++; }
  void insert_packed(EdgeId id, VertexId u, VertexId v, bool is_virtual);
  void flush_buffered_at(VertexId w);
  void pad_vertex(VertexId w);
  void ensure_active_connected();
  void scan_thresholds(const std::vector<TreePacking::LoadChange>& changes);
  void touch_threshold(EdgeId id);
  void scan_all_thresholds();
  void pop_queue_once();
  void absorb(const TreePacking::UpdateReport& rep);
  SettleReport take_report();

  LevelFlavor flavor_;
  int level_;
  std::size_t target_;
  MultiGraph packed_;  // physical edges: mirrored real + virtual
  TreePacking pack_;
  bool built_ = false;
  std::set<EdgeId> virtual_;
  std::deque<EdgeId> queue_;
  std::set<EdgeId> queued_;
  EdgeId next_virtual_id_ = kVirtualIdBase;
  std::size_t pad_cursor_ = 0;

  // arboricity flavor: vertex activation with buffered edges
  std::int64_t activation_degree_ = 0;
  std::vector<char> active_;
  std::vector<std::int64_t> true_degree_;
  std::map<EdgeId, EdgeEnds> buffered_;
  std::vector<VertexId> activation_order_;

  // per-settle accumulation
  std::map<EdgeId, std::pair<std::int64_t, std::int64_t>> acc_loads_;
  std::set<std::uint32_t> acc_trees_;
  std::size_t acc_recourse_ = 0;
  bool acc_virtualized_ = false;
};

}  // namespace treepack
