#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <stdexcept>
#include <utility>
#include <vector>

namespace treepack {

using VertexId = std::uint32_t;
using EdgeId = std::uint64_t;

// Ids at or above this base are reserved for virtual edges added by leveled
// packings; plain graphs never hand them out.
constexpr EdgeId kVirtualIdBase = EdgeId(1) << 40;

struct EdgeEnds {
  VertexId u, v;
};

struct QuotientMap {
  std::vector<VertexId> class_of;            // original vertex -> class id
  std::vector<std::vector<VertexId>> classes;  // class id -> original vertices
};

// Dynamic unweighted multigraph with stable edge identities. Parallel edges
// and self-loops are allowed; a loop contributes 2 to the degree of its
// vertex, matching the convention for contracted graphs.
class MultiGraph {
 public:
  MultiGraph() : MultiGraph(0) {}
  explicit MultiGraph(VertexId n) : n_(n), degree_(n, 0) {}

  VertexId n() const { return n_; }
  std::size_t m() const { return edges_.size(); }

  EdgeId add_edge(VertexId u, VertexId v);
  // Insert with a caller-chosen id (mirroring and virtual edges). The id must
  // be unused and is excluded from future automatic assignment.
  void add_edge_with_id(EdgeId id, VertexId u, VertexId v);
  std::pair<VertexId, VertexId> remove_edge(EdgeId id);
  // Deletes the lowest-id live copy between u and v; used for update streams.
  EdgeId remove_one(VertexId u, VertexId v);

  bool alive(EdgeId id) const { return edges_.count(id) != 0; }
  EdgeEnds endpoints(EdgeId id) const;
  std::int64_t degree(VertexId v) const;
  const std::map<EdgeId, EdgeEnds>& edges() const { return edges_; }

  std::pair<MultiGraph, QuotientMap> contract(const std::set<EdgeId>& low) const;
  MultiGraph induced(const std::vector<VertexId>& s) const;
  MultiGraph duplicate_edges(std::uint32_t s) const;

 private:
  void check_vertex(VertexId v) const;

  VertexId n_;
  std::map<EdgeId, EdgeEnds> edges_;
  std::vector<std::int64_t> degree_;
  EdgeId next_id_ = 0;
};

bool is_connected(const MultiGraph& g);
// component id per vertex, numbered by smallest contained vertex order
std::vector<VertexId> components(const MultiGraph& g);
// number of connected components that contain at least one edge
std::size_t edge_bearing_components(const MultiGraph& g);

}  // namespace treepack
