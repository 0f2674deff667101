#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "treepack/multigraph.hpp"
#include "treepack/rational.hpp"

namespace treepack {
namespace oracle {

struct MinCutResult {
  std::int64_t value = 0;  // 0 when disconnected, n<=1 -> infinity sentinel
  std::vector<EdgeId> edges;
  bool infinite = false;  // single-vertex graph
};

// Global min-cut on a multigraph (Stoer-Wagner with merge tracking).
MinCutResult mincut_exact(const MultiGraph& g);
// Brute-force cross-check: min over proper vertex subsets, n <= 20.
std::int64_t mincut_subsets(const MultiGraph& g);

// alpha = max_S |E(S)|/(|S|-1) over subsets with |S| >= 2, n <= 15.
Rational alpha_exact(const MultiGraph& g);
// rho = max_S |E(S)|/|S| over nonempty subsets, n <= 15.
Rational density_exact(const MultiGraph& g);

// External degrees of the components of the subgraph of edges with load < a:
// per component, the number of endpoints of >=a edges inside it (loops twice).
// Returned keyed by component representative (smallest vertex).
std::map<VertexId, std::int64_t> ga_degrees_naive(const MultiGraph& g,
                                                  const std::map<EdgeId, Rational>& loads,
                                                  const Rational& a);

// From-scratch greedy packer used to cross-check the dynamic path. Prim-style
// with (load, id) keys; the tie-break matches the packing module's.
std::vector<std::vector<EdgeId>> greedy_reference(const MultiGraph& g, std::size_t n_trees);

}  // namespace oracle
}  // namespace treepack
