#pragma once

#include <iosfwd>
#include <string>

#include "treecount/graph.hpp"

namespace treecount {

// Result of reading an edge-list file. For `graph` files `digraph` holds the
// doubly oriented version so that every consumer can work on arcs.
struct ParsedGraph {
  bool directed = true;
  Digraph digraph;
  Graph graph;
};

// Errors are InputError with "<source>:<line>: " prefixes.
ParsedGraph read_graph(std::istream& in, const std::string& source = "<input>");
ParsedGraph read_graph_file(const std::string& path);

void write_digraph(std::ostream& out, const Digraph& g);
void write_graph(std::ostream& out, const Graph& g);

}  // namespace treecount
