#pragma once

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <vector>

#include "treepack/io.hpp"
#include "treepack/leveled.hpp"
#include "treepack/multigraph.hpp"
#include "treepack/packing.hpp"
#include "treepack/rational.hpp"
#include "treepack/rng.hpp"

namespace treepack {
namespace arb {

struct ArbConfig {
  Rational epsilon = rat(1, 4);  // in (0,1)
  std::int64_t alpha_max = 8;    // deterministic-mode output bound
  std::int64_t sampling_c = 2;   // >= 1
  std::int64_t level_constant = 24;  // trees per level: const * 2^i * log m / eps^2
  std::uint64_t seed = 1;
  std::size_t m_hint = 0;  // sampler probabilities use ceil(log2(max(m_hint, m0, 2)))

  void validate() const;
};

// (min relative load)^-1; nullopt when some live edge has load 0 (the caller
// treats that as "pack more trees")
std::optional<Rational> estimate_from_packing(const TreePacking& p);

// Bounded-alpha deterministic estimator: one leveled packing per window
// [2^i, 2^(i+1)), output read from the window the previous estimate selects.
class DetEstimator {
 public:
  DetEstimator(const ArbConfig& cfg, const MultiGraph& g0);

  void apply(const Update& up);
  void insert_edge(EdgeId id, VertexId u, VertexId v);
  void delete_edge(EdgeId id);

  Rational value() const { return value_; }
  int selected_level() const { return selected_; }
  int level_count() const { return int(levels_.size()); }
  const LeveledPacking& level(int i) const { return *levels_[std::size_t(i)]; }
  const MultiGraph& graph() const { return g_; }

 private:
  Rational level_estimate(int i) const;
  int level_for(const Rational& v) const;
  std::size_t target_for(int i) const;
  void after_update();

  ArbConfig cfg_;
  MultiGraph g_;
  int log_m_;
  std::vector<std::unique_ptr<LeveledPacking>> levels_;
  int selected_ = 0;
  Rational value_ = rat(0);
};

// Exact minimum-max out-orientation with ownership, refined to optimal after
// every update; reports the set of vertices whose out-edge set changed.
class Orientation {
 public:
  explicit Orientation(const MultiGraph& g0);

  std::set<VertexId> insert(EdgeId id, VertexId u, VertexId v);
  std::set<VertexId> remove(EdgeId id);

  VertexId owner(EdgeId id) const { return owner_.at(id); }
  std::int64_t outdeg(VertexId v) const { return std::int64_t(out_[v].size()); }
  std::int64_t max_outdeg() const;
  const std::set<EdgeId>& out_edges(VertexId v) const { return out_[v]; }
  VertexId n() const { return VertexId(out_.size()); }

 private:
  void refine(std::set<VertexId>& changed);

  std::map<EdgeId, EdgeEnds> ends_;
  std::map<EdgeId, VertexId> owner_;
  std::vector<std::set<EdgeId>> out_;
};

// Simple-graph combinator: deterministic estimate in the low regime, exact
// density in the high regime, switched on the previous output.
class SimpleCombinator {
 public:
  SimpleCombinator(const ArbConfig& cfg, const MultiGraph& g0);
  void apply(const Update& up);
  Rational value() const { return value_; }
  bool high_regime() const { return high_; }
  const MultiGraph& graph() const { return g_; }

 private:
  ArbConfig cfg_;
  MultiGraph g_;
  std::unique_ptr<DetEstimator> det_;
  Rational switch_at_;
  bool high_ = false;
  Rational value_ = rat(0);
};

// Oblivious downsampler: H_i membership is a pure coin of (seed, level, edge),
// so levels are materialized on demand and replay identically.
class ObliviousSampler {
 public:
  ObliviousSampler(const ArbConfig& cfg, const MultiGraph& g0);
  void apply(const Update& up);
  Rational value() const { return value_; }
  int selected_level() const { return selected_; }  // 0 = the graph itself
  Rational level_probability(int i) const;
  bool level_active(int i) const;
  std::vector<EdgeId> sampled_edges(int i) const;
  const MultiGraph& graph() const { return g_; }

 private:
  bool coin(int i, EdgeId id) const;
  void materialize(int i);
  void after_update();

  ArbConfig cfg_;
  MultiGraph g_;
  int log_m_;
  std::unique_ptr<DetEstimator> fallback_;
  int mat_level_ = 0;  // 0 = none (fallback only)
  std::unique_ptr<DetEstimator> mat_;
  int selected_ = 0;
  Rational value_ = rat(0);
};

// Adaptive downsampler: edge ownership via the orientation; an update
// resamples the whole out-set of every owner whose out-edges changed, as one
// atomic batch per level, skipped when the batch exceeds the level cap.
class AdaptiveSampler {
 public:
  AdaptiveSampler(const ArbConfig& cfg, const MultiGraph& g0);
  void apply(const Update& up);
  Rational value() const { return value_; }
  int selected_level() const { return selected_; }
  Rational level_probability(int i) const;
  bool level_active(int i) const;
  std::vector<EdgeId> sampled_edges(int i) const;
  const MultiGraph& graph() const { return g_; }
  const Orientation& orientation() const { return orient_; }
  std::int64_t resample_cap() const { return cap_; }

 private:
  bool coin(int i, EdgeId id) const;
  void materialize(int i);
  void resample_owner(int i, VertexId u);
  std::vector<int> active_levels() const;
  void after_update();

  ArbConfig cfg_;
  MultiGraph g_;
  int log_m_;
  Orientation orient_;
  std::unique_ptr<DetEstimator> fallback_;
  std::map<std::pair<int, VertexId>, std::uint64_t> epoch_;
  std::int64_t cap_ = 0;
  int mat_level_ = 0;
  std::unique_ptr<DetEstimator> mat_;
  std::set<EdgeId> mat_members_;
  int selected_ = 0;
  Rational value_ = rat(0);
};

}  // namespace arb
}  // namespace treepack
