#include "treepack/io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace treepack {

namespace {
bool next_line(std::istream& in, std::string& line) {
  while (std::getline(in, line)) {
    std::size_t i = line.find_first_not_of(" \t\r");
    if (i == std::string::npos) continue;
    if (line[i] == '#') continue;
    return true;
  }
  return false;
}
}  // namespace

MultiGraph read_graph(std::istream& in) {
  std::string line;
  if (!next_line(in, line)) throw std::runtime_error("graph file: missing header");
  std::istringstream hs(line);
  std::string p, fmt;
  std::size_t n = 0, m = 0;
  hs >> p >> fmt >> n >> m;
  if (p != "p" || fmt != "mgraph") throw std::runtime_error("graph file: expected 'p mgraph n m'");
  MultiGraph g{VertexId(n)};
  for (std::size_t i = 0; i < m; ++i) {
    if (!next_line(in, line)) throw std::runtime_error("graph file: truncated edge list");
    std::istringstream es(line);
    std::string e;
    VertexId u, v;
    es >> e >> u >> v;
    if (e != "e") throw std::runtime_error("graph file: expected 'e u v'");
    g.add_edge(u, v);
  }
  return g;
}

MultiGraph read_graph_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open graph file: " + path);
  return read_graph(in);
}

void write_graph(std::ostream& out, const MultiGraph& g) {
  out << "p mgraph " << g.n() << " " << g.m() << "\n";
  for (const auto& [id, e] : g.edges()) {
    (void)id;
    out << "e " << e.u << " " << e.v << "\n";
  }
}

std::vector<Update> read_stream(std::istream& in) {
  std::vector<Update> ups;
  std::string line;
  while (next_line(in, line)) {
    std::istringstream ls(line);
    std::string op;
    VertexId u, v;
    ls >> op >> u >> v;
    if (op == "+")
      ups.push_back({true, u, v});
    else if (op == "-")
      ups.push_back({false, u, v});
    else
      throw std::runtime_error("stream file: expected '+'/'-' lines");
  }
  return ups;
}

std::vector<Update> read_stream_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open stream file: " + path);
  return read_stream(in);
}

void write_packing_dump(std::ostream& out, const std::vector<std::vector<EdgeId>>& trees) {
  for (const auto& t : trees) {
    for (std::size_t i = 0; i < t.size(); ++i) out << (i ? " " : "") << t[i];
    out << "\n";
  }
}

}  // namespace treepack
