#include <sstream>

#include "doctest.h"
#include "treecount/errors.hpp"
#include "treecount/graph.hpp"
#include "treecount/graph_io.hpp"

using namespace treecount;

TEST_CASE("min_semidegree") {
  CHECK(min_semidegree(complete_digraph(4)) == 3);
  CHECK(min_semidegree(directed_cycle(3)) == 1);
  CHECK(min_semidegree(Digraph(3, {{0, 1}, {1, 0}})) == 0);
}

TEST_CASE("arc ids follow (tail, head) order") {
  const Digraph g(4, {{2, 1}, {0, 3}, {0, 1}, {3, 2}});
  REQUIRE(g.arc_count() == 4);
  CHECK(g.arc(0) == Arc{0, 1});
  CHECK(g.arc(1) == Arc{0, 3});
  CHECK(g.arc(2) == Arc{2, 1});
  CHECK(g.arc(3) == Arc{3, 2});
  CHECK(g.arc_id(2, 1) == 2);
  CHECK(g.arc_id(1, 2) == -1);
  for (int v = 0; v < g.n(); ++v) {
    auto in = g.in(v);
    auto ids = g.in_arc_ids(v);
    for (std::size_t k = 0; k < in.size(); ++k) CHECK(g.arc(ids[k]) == Arc{in[k], v});
  }
}

TEST_CASE("digraph rejects loops, duplicates and bad ids") {
  CHECK_THROWS_AS(Digraph(2, {{0, 0}}), InputError);
  CHECK_THROWS_AS(Digraph(2, {{0, 1}, {0, 1}}), InputError);
  CHECK_THROWS_AS(Digraph(2, {{0, 2}}), InputError);
}

TEST_CASE("bipartite double") {
  const BipartiteDouble single = to_bipartite(Digraph(2, {{0, 1}}));
  REQUIRE(single.edges.size() == 1);
  CHECK(single.edges[0] == Arc{0, 1});

  const auto k3 = to_bipartite(complete_digraph(3)).biadjacency();
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) CHECK(k3[i][j] == (i != j ? 1 : 0));

  const BipartiteDouble empty = to_bipartite(Digraph(5, {}));
  CHECK(empty.vertex_count() == 10);
  CHECK(empty.edges.empty());
}

TEST_CASE("double orientation") {
  CHECK(double_orient(complete_graph(4)).arc_count() == 12);
  const Digraph e = double_orient(Graph(2, {{0, 1}}));
  CHECK(e.has_arc(0, 1));
  CHECK(e.has_arc(1, 0));
  const Digraph p = double_orient(Graph(3, {{0, 1}, {1, 2}}));
  CHECK(p.arc_count() == 4);
  CHECK(min_semidegree(p) == 1);
}

TEST_CASE("vertex removal") {
  const InducedSubgraph s = remove_vertices(complete_digraph(5), {2});
  CHECK(s.graph.n() == 4);
  CHECK(s.graph.arc_count() == 12);
  CHECK(s.new_to_old == std::vector<int>{0, 1, 3, 4});
  CHECK(s.old_to_new[2] == -1);
  CHECK(remove_vertices(complete_digraph(5), {}).graph.arcs() == complete_digraph(5).arcs());
  CHECK(remove_vertices(complete_digraph(3), {0, 1, 2}).graph.n() == 0);
}

TEST_CASE("epsilon of a host") {
  CHECK(epsilon_of(complete_digraph(6)).epsilon == doctest::Approx(1.0 / 3.0));
  CHECK(epsilon_of(directed_cycle(4)).epsilon == doctest::Approx(-0.25));
  // K2 has semidegree 1 = n/2, so it sits exactly on the threshold
  CHECK(epsilon_of(complete_digraph(2)).epsilon == doctest::Approx(0.0));
}

TEST_CASE("edge-list round trip") {
  std::ostringstream out;
  write_digraph(out, directed_cycle(5));
  std::istringstream in(out.str());
  const ParsedGraph p = read_graph(in);
  CHECK(p.directed);
  CHECK(p.digraph.arcs() == directed_cycle(5).arcs());

  std::ostringstream gout;
  write_graph(gout, complete_graph(4));
  std::istringstream gin(gout.str());
  const ParsedGraph q = read_graph(gin);
  CHECK_FALSE(q.directed);
  CHECK(q.graph.edge_count() == 6);
  CHECK(q.digraph.arc_count() == 12);
}

TEST_CASE("edge-list errors carry line numbers") {
  auto message = [](const std::string& text) {
    std::istringstream in(text);
    try {
      read_graph(in, "f");
    } catch (const InputError& e) {
      return std::string(e.what());
    }
    return std::string();
  };
  CHECK(message("digraph 3 2\n0 1\n0 1\n").find("f:3") != std::string::npos);
  CHECK(message("digraph 3 1\n1 1\n").find("f:2") != std::string::npos);
  CHECK(message("digraph 3 1\n0 7\n").find("f:2") != std::string::npos);
  CHECK(message("digraph 3 2\n0 1\n") != "");
  CHECK(message("hypergraph 3 0\n") != "");
}
