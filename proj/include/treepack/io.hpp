#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "treepack/multigraph.hpp"

namespace treepack {

struct Update {
  bool insert;  // false = delete lowest-id live copy
  VertexId u, v;
};

// Text graph format: "p mgraph <n> <m>" header, then m lines "e <u> <v>"
// (0-based). Blank lines and '#' comments are ignored.
MultiGraph read_graph(std::istream& in);
MultiGraph read_graph_file(const std::string& path);
void write_graph(std::ostream& out, const MultiGraph& g);

// Update stream: "+ <u> <v>" inserts, "- <u> <v>" deletes.
std::vector<Update> read_stream(std::istream& in);
std::vector<Update> read_stream_file(const std::string& path);

// Packing dump: one line per tree listing EdgeIds.
void write_packing_dump(std::ostream& out, const std::vector<std::vector<EdgeId>>& trees);

}  // namespace treepack
