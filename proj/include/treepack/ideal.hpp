#pragma once

#include <map>
#include <vector>

#include "treepack/multigraph.hpp"
#include "treepack/rational.hpp"

namespace treepack {
namespace ideal {

struct Partition {
  std::vector<std::vector<VertexId>> blocks;
  Rational part_val;
};

struct IdealNode {
  std::vector<VertexId> vertices;               // original vertex ids
  std::vector<std::vector<VertexId>> blocks;    // minimizing partition, original ids
  Rational phi;
  int parent = -1;
};

struct IdealLoads {
  std::map<EdgeId, Rational> ell;  // ell*(e) per edge
  std::vector<IdealNode> nodes;    // decomposition tree in preorder
};

// Exact minimum partition value via restricted-growth enumeration with
// pruning. Deterministic tie-break: smaller part_val, then more blocks, then
// lexicographically smallest growth string. Requires a connected graph and
// n <= max_n.
std::pair<Partition, Rational> min_partition(const MultiGraph& g, std::size_t max_n = 12);

Rational phi(const MultiGraph& g, std::size_t max_n = 12);

// Recursive ideal relative loads. Rejects graphs with self-loops (no level of
// the recursion ever assigns them a value).
IdealLoads ideal_loads(const MultiGraph& g, std::size_t max_n = 12);

Rational alpha_exact_via_loads(const MultiGraph& g, std::size_t max_n = 12);

// lambda/2 < phi <= lambda, checked with exact arithmetic
bool phi_lambda_check(const MultiGraph& g, std::size_t max_n = 12);

}  // namespace ideal
}  // namespace treepack
