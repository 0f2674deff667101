#include "treepack/arboricity.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>

#include "treepack/mincut.hpp"
#include "treepack/oracles.hpp"

namespace treepack {
namespace arb {

using mincut::ceil_log2;

void ArbConfig::validate() const {
  if (epsilon <= 0 || epsilon >= 1) throw std::invalid_argument("epsilon must be in (0,1)");
  if (sampling_c < 1) throw std::invalid_argument("sampling constant c must be >= 1");
  if (alpha_max < 1) throw std::invalid_argument("alpha_max must be >= 1");
  if (level_constant < 1) throw std::invalid_argument("level constant must be >= 1");
}

std::optional<Rational> estimate_from_packing(const TreePacking& p) {
  if (p.size() == 0) throw std::invalid_argument("estimate_from_packing: empty packing");
  auto [mn, id] = p.min_load();
  (void)id;
  if (mn == 0) return std::nullopt;  // infinite: pack more
  return rat(1) / mn;
}

// ---------------------------------------------------------------------------
// DetEstimator

DetEstimator::DetEstimator(const ArbConfig& cfg, const MultiGraph& g0) : cfg_(cfg), g_(g0.n()) {
  cfg_.validate();
  for (const auto& [id, e] : g0.edges()) g_.add_edge_with_id(id, e.u, e.v);
  log_m_ = ceil_log2(g_.m());
  int nlevels = 0;
  while ((std::int64_t(1) << nlevels) <= cfg_.alpha_max) ++nlevels;
  for (int i = 0; i < nlevels; ++i)
    levels_.push_back(
        std::make_unique<LeveledPacking>(LevelFlavor::Arboricity, i, target_for(i), g_.n(), g_));
  selected_ = 0;
  value_ = level_estimate(0);
  selected_ = level_for(value_);
}

std::size_t DetEstimator::target_for(int i) const {
  // const * 2^i * log m / eps^2, rounded up
  Rational t = rat(cfg_.level_constant) * rat(std::int64_t(1) << i) * rat(log_m_) /
               (cfg_.epsilon * cfg_.epsilon);
  return std::size_t(std::max<long>(1, rat_ceil(t)));
}

Rational DetEstimator::level_estimate(int i) const {
  const auto& pack = levels_[std::size_t(i)]->packing();
  if (g_.m() == 0) return rat(0);
  std::int64_t mn = pack.min_load_value();
  if (mn < 0) return rat(0);
  if (mn == 0) return rat(std::int64_t(pack.size()));  // effectively infinite
  return rat(std::int64_t(pack.size()), mn);
}

int DetEstimator::level_for(const Rational& v) const {
  // largest i with 2^i < v; exact powers of two resolve downward
  int i = 0;
  while (i + 1 < int(levels_.size()) && rat(std::int64_t(1) << (i + 1)) < v) ++i;
  return i;
}

void DetEstimator::insert_edge(EdgeId id, VertexId u, VertexId v) {
  g_.add_edge_with_id(id, u, v);
  for (auto& l : levels_) l->apply_insert(id, u, v);
  after_update();
}

void DetEstimator::delete_edge(EdgeId id) {
  g_.remove_edge(id);
  for (auto& l : levels_) l->apply_delete(id);
  after_update();
}

void DetEstimator::apply(const Update& up) {
  if (up.insert)
    insert_edge(g_.m() == 0 ? 0 : (g_.edges().rbegin()->first + 1), up.u, up.v);
  else
    delete_edge([&] {
      for (const auto& [id, e] : g_.edges())
        if ((e.u == up.u && e.v == up.v) || (e.u == up.v && e.v == up.u)) return id;
      throw std::invalid_argument("no live edge between the given endpoints");
    }());
}

void DetEstimator::after_update() {
  int lm = ceil_log2(g_.m());
  if (lm != log_m_) {
    log_m_ = lm;
    for (int i = 0; i < int(levels_.size()); ++i)
      levels_[std::size_t(i)]->set_target_trees(target_for(i));
  }
  value_ = level_estimate(selected_);
  selected_ = level_for(value_);
}

// ---------------------------------------------------------------------------
// Orientation

Orientation::Orientation(const MultiGraph& g0) : out_(g0.n()) {
  std::set<VertexId> changed;
  for (const auto& [id, e] : g0.edges()) {
    VertexId o = out_[e.u].size() <= out_[e.v].size() ? e.u : e.v;
    ends_[id] = e;
    owner_[id] = o;
    out_[o].insert(id);
  }
  refine(changed);
}

std::int64_t Orientation::max_outdeg() const {
  std::int64_t mx = 0;
  for (const auto& s : out_) mx = std::max<std::int64_t>(mx, std::int64_t(s.size()));
  return mx;
}

std::set<VertexId> Orientation::insert(EdgeId id, VertexId u, VertexId v) {
  std::set<VertexId> changed;
  VertexId o = out_[u].size() <= out_[v].size() ? u : v;
  if (out_[u].size() == out_[v].size()) o = std::min(u, v);
  ends_[id] = {u, v};
  owner_[id] = o;
  out_[o].insert(id);
  changed.insert(o);
  refine(changed);
  return changed;
}

std::set<VertexId> Orientation::remove(EdgeId id) {
  std::set<VertexId> changed;
  VertexId o = owner_.at(id);
  out_[o].erase(id);
  owner_.erase(id);
  ends_.erase(id);
  changed.insert(o);
  refine(changed);
  return changed;
}

void Orientation::refine(std::set<VertexId>& changed) {
  // flip directed paths from a maximum-out-degree vertex to one with
  // out-degree <= max-2 until none exists; the result is an exact minimum
  // of the maximum out-degree
  VertexId n = VertexId(out_.size());
  for (;;) {
    std::int64_t mx = max_outdeg();
    if (mx <= 1) return;
    bool improved = false;
    for (VertexId s = 0; s < n && !improved; ++s) {
      if (std::int64_t(out_[s].size()) != mx) continue;
      // BFS along out-edges
      std::vector<std::int64_t> via(n, -1);  // edge used to reach vertex
      std::vector<VertexId> q{s};
      std::vector<char> seen(n, 0);
      seen[s] = 1;
      VertexId goal = n;
      for (std::size_t h = 0; h < q.size() && goal == n; ++h) {
        VertexId x = q[h];
        for (EdgeId e : out_[x]) {
          auto en = ends_.at(e);
          VertexId y = (en.u == x) ? en.v : en.u;
          if (y == x || seen[y]) continue;
          seen[y] = 1;
          via[y] = std::int64_t(e);
          if (std::int64_t(out_[y].size()) <= mx - 2) {
            goal = y;
            break;
          }
          q.push_back(y);
        }
      }
      if (goal == n) continue;
      // flip the path s -> goal
      VertexId cur = goal;
      while (cur != s) {
        EdgeId e = EdgeId(via[cur]);
        VertexId from = owner_.at(e);
        out_[from].erase(e);
        out_[cur].insert(e);
        owner_[e] = cur;
        changed.insert(from);
        changed.insert(cur);
        cur = from;
      }
      improved = true;
    }
    if (!improved) return;
  }
}

// ---------------------------------------------------------------------------
// SimpleCombinator

SimpleCombinator::SimpleCombinator(const ArbConfig& cfg, const MultiGraph& g0)
    : cfg_(cfg), g_(g0.n()) {
  cfg_.validate();
  for (const auto& [id, e] : g0.edges()) {
    if (e.u == e.v) throw std::invalid_argument("simple mode: loop edge");
    for (const auto& [id2, e2] : g_.edges()) {
      (void)id2;
      if ((e2.u == e.u && e2.v == e.v) || (e2.u == e.v && e2.v == e.u))
        throw std::invalid_argument("simple mode: parallel edge");
    }
    g_.add_edge_with_id(id, e.u, e.v);
  }
  ArbConfig det_cfg = cfg_;
  det_cfg.epsilon = cfg_.epsilon / 3;  // internal rescaling
  det_cfg.alpha_max = rat_ceil(rat(4) / cfg_.epsilon);
  det_ = std::make_unique<DetEstimator>(det_cfg, g_);
  switch_at_ = rat(2) / cfg_.epsilon;
  value_ = det_->value();
  high_ = value_ >= switch_at_;
  if (high_) value_ = oracle::density_exact(g_);
}

void SimpleCombinator::apply(const Update& up) {
  if (up.insert) {
    if (up.u == up.v) throw std::invalid_argument("simple mode: loop edge");
    for (const auto& [id, e] : g_.edges()) {
      (void)id;
      if ((e.u == up.u && e.v == up.v) || (e.u == up.v && e.v == up.u))
        throw std::invalid_argument("simple mode: parallel edge");
    }
    EdgeId id = g_.m() == 0 ? 0 : (g_.edges().rbegin()->first + 1);
    g_.add_edge_with_id(id, up.u, up.v);
    det_->insert_edge(id, up.u, up.v);
  } else {
    EdgeId id = [&] {
      for (const auto& [eid, e] : g_.edges())
        if ((e.u == up.u && e.v == up.v) || (e.u == up.v && e.v == up.u)) return eid;
      throw std::invalid_argument("no live edge between the given endpoints");
    }();
    g_.remove_edge(id);
    det_->delete_edge(id);
  }
  // regime from the previous output; an update moves alpha by less than 1
  if (!high_ && value_ >= switch_at_) high_ = true;
  if (high_ && value_ < switch_at_ / 2) high_ = false;
  value_ = high_ ? oracle::density_exact(g_) : det_->value();
}

// ---------------------------------------------------------------------------
// ObliviousSampler

namespace {
Rational oblivious_p(const ArbConfig& cfg, int log_m, int i) {
  Rational p = rat(24) * rat(cfg.sampling_c) * rat(log_m) /
               (rat(std::int64_t(1) << i) * cfg.epsilon * cfg.epsilon);
  return p;
}
Rational adaptive_p(const ArbConfig& cfg, int log_m, int i) {
  Rational e2 = cfg.epsilon * cfg.epsilon;
  Rational p = rat(8) * rat(cfg.sampling_c + 3) * rat(log_m) /
               (rat(std::int64_t(1) << i) * e2 * e2);
  return p;
}
int select_from(const Rational& v, std::int64_t fallback_cap) {
  if (v <= rat(fallback_cap)) return 0;
  int i = 1;
  while (rat(std::int64_t(1) << (i + 1)) < v && i < 40) ++i;
  return i;
}
}  // namespace

ObliviousSampler::ObliviousSampler(const ArbConfig& cfg, const MultiGraph& g0)
    : cfg_(cfg), g_(g0.n()) {
  cfg_.validate();
  for (const auto& [id, e] : g0.edges()) g_.add_edge_with_id(id, e.u, e.v);
  log_m_ = ceil_log2(std::max(cfg_.m_hint, g_.m()));
  fallback_ = std::make_unique<DetEstimator>(cfg_, g_);
  value_ = fallback_->value();
  selected_ = 0;
}

Rational ObliviousSampler::level_probability(int i) const { return oblivious_p(cfg_, log_m_, i); }

bool ObliviousSampler::level_active(int i) const {
  return i >= 1 && level_probability(i) < rat(1);
}

bool ObliviousSampler::coin(int i, EdgeId id) const {
  Rational p = level_probability(i);
  std::uint64_t num = p.get_num().get_ui();
  std::uint64_t den = p.get_den().get_ui();
  return coin_accept(mix64(mix64(cfg_.seed, std::uint64_t(i)), id), num, den);
}

std::vector<EdgeId> ObliviousSampler::sampled_edges(int i) const {
  std::vector<EdgeId> out;
  if (!level_active(i)) return out;
  for (const auto& [id, e] : g_.edges()) {
    (void)e;
    if (coin(i, id)) out.push_back(id);
  }
  return out;
}

void ObliviousSampler::materialize(int i) {
  if (mat_level_ == i && mat_) return;
  mat_level_ = i;
  MultiGraph h(g_.n());
  for (const auto& [id, e] : g_.edges())
    if (coin(i, id)) h.add_edge_with_id(id, e.u, e.v);
  mat_ = std::make_unique<DetEstimator>(cfg_, h);
}

void ObliviousSampler::apply(const Update& up) {
  if (up.insert) {
    EdgeId id = g_.m() == 0 ? 0 : (g_.edges().rbegin()->first + 1);
    g_.add_edge_with_id(id, up.u, up.v);
    fallback_->insert_edge(id, up.u, up.v);
    if (mat_ && coin(mat_level_, id)) mat_->insert_edge(id, up.u, up.v);
  } else {
    EdgeId id = [&] {
      for (const auto& [eid, e] : g_.edges())
        if ((e.u == up.u && e.v == up.v) || (e.u == up.v && e.v == up.u)) return eid;
      throw std::invalid_argument("no live edge between the given endpoints");
    }();
    g_.remove_edge(id);
    fallback_->delete_edge(id);
    if (mat_ && coin(mat_level_, id)) mat_->delete_edge(id);
  }
  after_update();
}

void ObliviousSampler::after_update() {
  int want = select_from(value_, cfg_.alpha_max);
  if (want >= 1) {
    // clamp into the active window
    while (want < 40 && !level_active(want)) ++want;
    if (!level_active(want)) want = 0;
  }
  if (want == 0) {
    mat_.reset();
    mat_level_ = 0;
    selected_ = 0;
    value_ = fallback_->value();
  } else {
    materialize(want);
    selected_ = want;
    value_ = mat_->value() / level_probability(want);
  }
}

// ---------------------------------------------------------------------------
// AdaptiveSampler

AdaptiveSampler::AdaptiveSampler(const ArbConfig& cfg, const MultiGraph& g0)
    : cfg_(cfg), g_(g0.n()), orient_(g0) {
  cfg_.validate();
  for (const auto& [id, e] : g0.edges()) g_.add_edge_with_id(id, e.u, e.v);
  log_m_ = ceil_log2(std::max(cfg_.m_hint, g_.m()));
  Rational e2 = cfg_.epsilon * cfg_.epsilon;
  cap_ = rat_ceil(rat(8) * rat(cfg_.sampling_c + 3) * rat(log_m_) / (e2 * e2));
  fallback_ = std::make_unique<DetEstimator>(cfg_, g_);
  value_ = fallback_->value();
  selected_ = 0;
}

Rational AdaptiveSampler::level_probability(int i) const { return adaptive_p(cfg_, log_m_, i); }

bool AdaptiveSampler::level_active(int i) const {
  return i >= 1 && level_probability(i) < rat(1);
}

bool AdaptiveSampler::coin(int i, EdgeId id) const {
  Rational p = level_probability(i);
  std::uint64_t num = p.get_num().get_ui();
  std::uint64_t den = p.get_den().get_ui();
  VertexId o = orient_.owner(id);
  std::uint64_t ep = 0;
  auto it = epoch_.find({i, o});
  if (it != epoch_.end()) ep = it->second;
  return coin_accept(mix64(mix64(mix64(cfg_.seed, std::uint64_t(i)), (std::uint64_t(o) << 20) ^ ep), id),
                     num, den);
}

std::vector<EdgeId> AdaptiveSampler::sampled_edges(int i) const {
  std::vector<EdgeId> out;
  if (!level_active(i)) return out;
  for (const auto& [id, e] : g_.edges()) {
    (void)e;
    if (coin(i, id)) out.push_back(id);
  }
  return out;
}

void AdaptiveSampler::materialize(int i) {
  mat_level_ = i;
  MultiGraph h(g_.n());
  mat_members_.clear();
  for (const auto& [id, e] : g_.edges())
    if (coin(i, id)) {
      h.add_edge_with_id(id, e.u, e.v);
      mat_members_.insert(id);
    }
  mat_ = std::make_unique<DetEstimator>(cfg_, h);
}

void AdaptiveSampler::resample_owner(int i, VertexId u) {
  if (!level_active(i)) return;
  // atomic batch: drop all of u's sampled out-copies, redraw each with a
  // fresh coin, then apply the difference -- unless it exceeds the cap
  std::vector<EdgeId> outset(orient_.out_edges(u).begin(), orient_.out_edges(u).end());
  std::vector<EdgeId> old_draw, new_draw;
  for (EdgeId id : outset)
    if (coin(i, id)) old_draw.push_back(id);
  epoch_[{i, u}] += 1;
  for (EdgeId id : outset)
    if (coin(i, id)) new_draw.push_back(id);
  std::vector<EdgeId> delta;
  std::set_symmetric_difference(old_draw.begin(), old_draw.end(), new_draw.begin(), new_draw.end(),
                                std::back_inserter(delta));
  if (std::int64_t(delta.size()) > cap_) {
    epoch_[{i, u}] -= 1;  // too many changes: do nothing, the level goes stale
    return;
  }
  if (mat_ && mat_level_ == i) {
    for (EdgeId id : delta) {
      if (mat_members_.count(id)) {
        mat_->delete_edge(id);
        mat_members_.erase(id);
      } else {
        auto e = g_.endpoints(id);
        mat_->insert_edge(id, e.u, e.v);
        mat_members_.insert(id);
      }
    }
  }
}

std::vector<int> AdaptiveSampler::active_levels() const {
  std::vector<int> out;
  for (int i = 1; i <= 40; ++i)
    if (level_active(i)) out.push_back(i);
  return out;
}

void AdaptiveSampler::apply(const Update& up) {
  std::set<VertexId> changed;
  if (up.insert) {
    EdgeId id = g_.m() == 0 ? 0 : (g_.edges().rbegin()->first + 1);
    g_.add_edge_with_id(id, up.u, up.v);
    fallback_->insert_edge(id, up.u, up.v);
    changed = orient_.insert(id, up.u, up.v);
    if (mat_ && coin(mat_level_, id) && !mat_members_.count(id)) {
      mat_->insert_edge(id, up.u, up.v);
      mat_members_.insert(id);
    }
  } else {
    EdgeId id = [&] {
      for (const auto& [eid, e] : g_.edges())
        if ((e.u == up.u && e.v == up.v) || (e.u == up.v && e.v == up.u)) return eid;
      throw std::invalid_argument("no live edge between the given endpoints");
    }();
    g_.remove_edge(id);
    fallback_->delete_edge(id);
    if (mat_ && mat_members_.count(id)) {
      mat_->delete_edge(id);
      mat_members_.erase(id);
    }
    changed = orient_.remove(id);
  }
  // resample everyone whose out-set changed, at every active level; only the
  // materialized level carries estimator state, the rest redraw lazily from
  // the (owner, epoch) coins
  for (int i : active_levels())
    for (VertexId u : changed) resample_owner(i, u);
  after_update();
}

void AdaptiveSampler::after_update() {
  int want = select_from(value_, cfg_.alpha_max);
  if (want >= 1) {
    while (want < 40 && !level_active(want)) ++want;
    if (!level_active(want)) want = 0;
  }
  if (want == 0) {
    mat_.reset();
    mat_members_.clear();
    mat_level_ = 0;
    selected_ = 0;
    value_ = fallback_->value();
  } else {
    if (mat_level_ != want || !mat_) materialize(want);
    selected_ = want;
    value_ = mat_->value() / level_probability(want);
  }
}

}  // namespace arb
}  // namespace treepack
