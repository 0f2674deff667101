#include "treepack/leveled.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>

#include "treepack/oracles.hpp"

namespace treepack {

namespace {
std::int64_t path_multiplicity(int level) {
  return level >= 4 ? (std::int64_t(1) << (level - 4)) : 1;
}
}  // namespace

std::int64_t LeveledPacking::threshold(std::int64_t num) const {
  return (num * std::int64_t(target_)) >> level_;
}

LeveledPacking::LeveledPacking(LevelFlavor flavor, int level, std::size_t target_trees, VertexId n,
                               const MultiGraph& g0)
    : flavor_(flavor), level_(level), target_(target_trees), packed_(n) {
  if (flavor_ == LevelFlavor::MinCut) {
    for (const auto& [id, e] : g0.edges()) packed_.add_edge_with_id(id, e.u, e.v);
    auto mc = oracle::mincut_exact(g0);
    std::int64_t lam0 = (mc.infinite || !is_connected(g0)) ? 0 : mc.value;
    if ((std::int64_t(1) << level_) > lam0 && n >= 2) {
      std::int64_t q = path_multiplicity(level_);
      for (VertexId v = 0; v + 1 < n; ++v)
        for (std::int64_t c = 0; c < q; ++c) insert_packed(fresh_virtual_id(), v, v + 1, true);
    }
  } else {
    activation_degree_ = level_ >= 1 ? (std::int64_t(1) << (level_ - 1)) : 1;
    active_.assign(n, 0);
    true_degree_.assign(n, 0);
    for (const auto& [id, e] : g0.edges()) {
      true_degree_[e.u] += (e.u == e.v) ? 2 : 1;
      if (e.u != e.v) true_degree_[e.v] += 1;
      buffered_[id] = e;
    }
    for (VertexId v = 0; v < n; ++v)
      if (true_degree_[v] >= activation_degree_) {
        active_[v] = 1;
        activation_order_.push_back(v);
      }
    std::vector<EdgeId> flush;
    for (const auto& [id, e] : buffered_)
      if (active_[e.u] && active_[e.v]) flush.push_back(id);
    for (EdgeId id : flush) {
      auto e = buffered_[id];
      buffered_.erase(id);
      insert_packed(id, e.u, e.v, false);
    }
    for (VertexId v : activation_order_) pad_vertex(v);
    ensure_active_connected();
  }
  pack_ = TreePacking(packed_, 0);
  built_ = true;
  absorb(pack_.resize(target_));
  scan_all_thresholds();
  acc_loads_.clear();
  acc_trees_.clear();
  acc_recourse_ = 0;
}

void LeveledPacking::insert_packed(EdgeId id, VertexId u, VertexId v, bool is_virtual) {
  packed_.add_edge_with_id(id, u, v);
  if (is_virtual) virtual_.insert(id);
  if (built_) {
    auto rep = pack_.insert_edge(id, u, v);
    absorb(rep);
    scan_thresholds(rep.load_changes);
  }
}

void LeveledPacking::flush_buffered_at(VertexId w) {
  std::vector<EdgeId> flush;
  for (const auto& [id, e] : buffered_)
    if ((e.u == w || e.v == w) && active_[e.u] && active_[e.v]) flush.push_back(id);
  for (EdgeId id : flush) {
    auto e = buffered_[id];
    buffered_.erase(id);
    insert_packed(id, e.u, e.v, false);
  }
}

void LeveledPacking::pad_vertex(VertexId w) {
  if (activation_order_.size() < 2) return;
  while (packed_.degree(w) < activation_degree_) {
    // deterministic round-robin over the activation order, skipping w
    VertexId target = w;
    std::size_t tries = 0;
    while (tries < activation_order_.size()) {
      VertexId cand = activation_order_[pad_cursor_ % activation_order_.size()];
      ++pad_cursor_;
      ++tries;
      if (cand != w) {
        target = cand;
        break;
      }
    }
    if (target == w) return;
    insert_packed(fresh_virtual_id(), w, target, true);
  }
}

void LeveledPacking::ensure_active_connected() {
  if (activation_order_.empty()) return;
  auto comp = components(packed_);
  VertexId root = activation_order_.front();
  std::set<VertexId> seen{comp[root]};
  for (VertexId v : activation_order_) {
    if (seen.count(comp[v])) continue;
    seen.insert(comp[v]);
    insert_packed(fresh_virtual_id(), root, v, true);
  }
}

void LeveledPacking::scan_thresholds(const std::vector<TreePacking::LoadChange>& changes) {
  for (const auto& c : changes) touch_threshold(c.edge);
}

void LeveledPacking::touch_threshold(EdgeId id) {
  if (!virtual_.count(id)) return;
  if (!pack_.has_edge(id)) return;
  std::int64_t l = pack_.load(id);
  bool in_q = queued_.count(id) != 0;
  if (l <= enqueue_load() && !in_q) {
    queued_.insert(id);
    queue_.push_back(id);
  } else if (l > enqueue_load() && in_q) {
    queued_.erase(id);  // stale deque entries are skipped on pop
  }
}

void LeveledPacking::scan_all_thresholds() {
  for (EdgeId id : std::vector<EdgeId>(virtual_.begin(), virtual_.end())) touch_threshold(id);
}

void LeveledPacking::pop_queue_once() {
  std::size_t attempts = queue_.size();
  while (attempts-- > 0 && !queue_.empty()) {
    EdgeId id = queue_.front();
    queue_.pop_front();
    if (!queued_.count(id)) continue;  // evicted earlier
    if (!virtual_.count(id) || pack_.load(id) > enqueue_load()) {
      queued_.erase(id);
      continue;
    }
    auto rep = pack_.delete_edge(id, cap_load());
    if (rep.committed) {
      queued_.erase(id);
      virtual_.erase(id);
      packed_.remove_edge(id);
      absorb(rep);
      scan_thresholds(rep.load_changes);
      return;  // at most one executed deletion per update
    }
    queue_.push_back(id);  // still queued; retries at the tail
  }
}

void LeveledPacking::absorb(const TreePacking::UpdateReport& rep) {
  acc_recourse_ += rep.recourse;
  for (auto t : rep.changed_trees) acc_trees_.insert(t);
  for (const auto& c : rep.load_changes) {
    auto it = acc_loads_.find(c.edge);
    if (it == acc_loads_.end())
      acc_loads_[c.edge] = {c.before, c.after};
    else
      it->second.second = c.after;
  }
}

LeveledPacking::SettleReport LeveledPacking::take_report() {
  SettleReport out;
  out.recourse = acc_recourse_;
  out.changed_trees.assign(acc_trees_.begin(), acc_trees_.end());
  for (const auto& [id, be] : acc_loads_)
    if (be.first != be.second || !pack_.has_edge(id))
      out.load_changes.push_back({id, be.first, be.second});
  out.virtualized = acc_virtualized_;
  acc_loads_.clear();
  acc_trees_.clear();
  acc_recourse_ = 0;
  acc_virtualized_ = false;
  return out;
}

LeveledPacking::SettleReport LeveledPacking::apply_insert(EdgeId id, VertexId u, VertexId v) {
  if (flavor_ == LevelFlavor::Arboricity) {
    true_degree_[u] += (u == v) ? 2 : 1;
    if (u != v) true_degree_[v] += 1;
    std::vector<VertexId> newly;
    for (VertexId w : {u, v}) {
      if (!active_[w] && true_degree_[w] >= activation_degree_) {
        active_[w] = 1;
        activation_order_.push_back(w);
        newly.push_back(w);
      }
      if (u == v) break;
    }
    for (VertexId w : newly) flush_buffered_at(w);
    if (active_[u] && active_[v])
      insert_packed(id, u, v, false);
    else
      buffered_[id] = {u, v};
    for (VertexId w : newly) pad_vertex(w);
    ensure_active_connected();
  } else {
    insert_packed(id, u, v, false);
  }
  pop_queue_once();
  return take_report();
}

LeveledPacking::SettleReport LeveledPacking::apply_delete(EdgeId id) {
  if (flavor_ == LevelFlavor::Arboricity) {
    auto it = buffered_.find(id);
    if (it != buffered_.end()) {
      auto e = it->second;
      true_degree_[e.u] -= (e.u == e.v) ? 2 : 1;
      if (e.u != e.v) true_degree_[e.v] -= 1;
      buffered_.erase(it);
      pop_queue_once();
      return take_report();
    }
    auto e = packed_.endpoints(id);
    true_degree_[e.u] -= (e.u == e.v) ? 2 : 1;
    if (e.u != e.v) true_degree_[e.v] -= 1;
  }
  auto rep = pack_.delete_edge(id, cap_load());
  if (rep.committed) {
    packed_.remove_edge(id);
    absorb(rep);
    scan_thresholds(rep.load_changes);
  } else {
    // retained as a virtual edge; the packing is untouched
    virtual_.insert(id);
    acc_virtualized_ = true;
    touch_threshold(id);
  }
  pop_queue_once();
  return take_report();
}

LeveledPacking::SettleReport LeveledPacking::set_target_trees(std::size_t n_trees) {
  if (n_trees == target_) return take_report();
  target_ = n_trees;
  auto rep = pack_.resize(n_trees);
  absorb(rep);
  scan_all_thresholds();
  return take_report();
}

}  // namespace treepack
