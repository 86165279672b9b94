#include "treecount/graph_io.hpp"

#include <fstream>
#include <ostream>
#include <set>

#include "detail/text_lines.hpp"

namespace treecount {

ParsedGraph read_graph(std::istream& in, const std::string& source) {
  detail::LineReader r(in, source);
  std::vector<std::string_view> tok;
  if (!r.next(tok)) r.fail("missing header line");
  if (tok.size() != 3 || (tok[0] != "digraph" && tok[0] != "graph"))
    r.fail("header must be 'digraph <n> <m>' or 'graph <n> <m>'");
  ParsedGraph out;
  out.directed = tok[0] == "digraph";
  const long long n = r.integer(tok[1], "vertex count");
  const long long m = r.integer(tok[2], "edge count");
  if (n < 0 || n > 100'000'000) r.fail("vertex count out of range");
  if (m < 0) r.fail("negative edge count");

  std::set<std::pair<int, int>> seen;
  std::vector<std::pair<int, int>> pairs;
  pairs.reserve(static_cast<std::size_t>(m));
  for (long long k = 0; k < m; ++k) {
    if (!r.next(tok)) r.fail("expected " + std::to_string(m) + " edges, found " + std::to_string(k));
    if (tok.size() != 2) r.fail("edge line must be '<u> <v>'");
    const long long u = r.integer(tok[0], "tail");
    const long long v = r.integer(tok[1], "head");
    if (u < 0 || u >= n || v < 0 || v >= n) r.fail("vertex id out of range 0.." + std::to_string(n - 1));
    if (u == v) r.fail("self-loop at vertex " + std::to_string(u));
    std::pair<int, int> key{static_cast<int>(u), static_cast<int>(v)};
    if (!out.directed && key.first > key.second) std::swap(key.first, key.second);
    if (!seen.insert(key).second) r.fail("duplicate edge " + std::to_string(u) + " " + std::to_string(v));
    pairs.emplace_back(static_cast<int>(u), static_cast<int>(v));
  }
  if (r.next(tok)) r.fail("trailing content after " + std::to_string(m) + " edges");

  if (out.directed) {
    out.digraph = Digraph(static_cast<int>(n), std::move(pairs));
  } else {
    out.graph = Graph(static_cast<int>(n), std::move(pairs));
    out.digraph = double_orient(out.graph);
  }
  return out;
}

ParsedGraph read_graph_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw InputError("cannot open graph file '" + path + "'");
  return read_graph(f, path);
}

void write_digraph(std::ostream& out, const Digraph& g) {
  out << "digraph " << g.n() << ' ' << g.arc_count() << '\n';
  for (const Arc& a : g.arcs()) out << a.tail << ' ' << a.head << '\n';
}

void write_graph(std::ostream& out, const Graph& g) {
  out << "graph " << g.n() << ' ' << g.edge_count() << '\n';
  for (auto [u, v] : g.edges()) out << u << ' ' << v << '\n';
}

}  // namespace treecount
