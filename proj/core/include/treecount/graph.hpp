#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

namespace treecount {

struct Arc {
  int tail = 0;
  int head = 0;
  friend bool operator==(const Arc&, const Arc&) = default;
};

// Simple digraph on vertices 0..n-1. Arcs are numbered in (tail, head)
// lexicographic order; weight vectors elsewhere are indexed by that id.
class Digraph {
 public:
  Digraph() = default;
  // Throws InputError on loops, duplicates or out-of-range ids.
  Digraph(int n, std::vector<std::pair<int, int>> arcs);

  int n() const { return n_; }
  std::size_t arc_count() const { return heads_.size(); }

  std::span<const int> out(int v) const {
    return {heads_.data() + out_begin_[v], heads_.data() + out_begin_[v + 1]};
  }
  std::span<const int> in(int v) const {
    return {tails_.data() + in_begin_[v], tails_.data() + in_begin_[v + 1]};
  }
  // Arc ids of in(v), aligned position by position.
  std::span<const int> in_arc_ids(int v) const {
    return {in_ids_.data() + in_begin_[v], in_ids_.data() + in_begin_[v + 1]};
  }
  // The arc v->out(v)[k] has id out_arc_begin(v) + k.
  int out_arc_begin(int v) const { return out_begin_[v]; }

  int out_degree(int v) const { return out_begin_[v + 1] - out_begin_[v]; }
  int in_degree(int v) const { return in_begin_[v + 1] - in_begin_[v]; }

  // -1 when absent.
  int arc_id(int u, int v) const;
  bool has_arc(int u, int v) const { return arc_id(u, v) >= 0; }
  Arc arc(int id) const { return {arc_tail_[id], heads_[id]}; }
  std::vector<Arc> arcs() const;

  bool contains(int v) const { return v >= 0 && v < n_; }

 private:
  int n_ = 0;
  std::vector<int> out_begin_{0};
  std::vector<int> heads_;
  std::vector<int> arc_tail_;
  std::vector<int> in_begin_{0};
  std::vector<int> tails_;
  std::vector<int> in_ids_;
};

// Simple undirected graph.
class Graph {
 public:
  Graph() = default;
  Graph(int n, std::vector<std::pair<int, int>> edges);

  int n() const { return n_; }
  std::size_t edge_count() const { return edges_.size(); }
  std::span<const int> neighbours(int v) const {
    return {adj_.data() + begin_[v], adj_.data() + begin_[v + 1]};
  }
  int degree(int v) const { return begin_[v + 1] - begin_[v]; }
  bool has_edge(int u, int v) const;
  // Each edge once, as (min, max), sorted.
  const std::vector<std::pair<int, int>>& edges() const { return edges_; }
  int min_degree() const;
  int max_degree() const;

 private:
  int n_ = 0;
  std::vector<std::pair<int, int>> edges_;
  std::vector<int> begin_{0};
  std::vector<int> adj_;
};

// B_G: left copy v+ and right copy v- of every vertex; edge (i+, j-) per arc i->j.
struct BipartiteDouble {
  int n = 0;
  std::vector<Arc> edges;  // tail = left index, head = right index
  std::vector<std::vector<int>> left_adj;
  std::vector<std::vector<int>> right_adj;

  int vertex_count() const { return 2 * n; }
  int left_degree(int i) const { return static_cast<int>(left_adj[i].size()); }
  int right_degree(int j) const { return static_cast<int>(right_adj[j].size()); }
  bool adjacent(int i, int j) const;
  // Row-major n x n 0/1 matrix.
  std::vector<std::vector<int>> biadjacency() const;
};

struct EpsilonWitness {
  int n = 0;
  int min_semidegree = 0;
  double epsilon = 0.0;  // min_semidegree / n - 1/2
};

// Subgraph together with the id maps in both directions.
struct InducedSubgraph {
  Digraph graph;
  std::vector<int> old_to_new;  // -1 for dropped vertices
  std::vector<int> new_to_old;
};

int min_semidegree(const Digraph& g);
BipartiteDouble to_bipartite(const Digraph& g);
Digraph double_orient(const Graph& g);
// s may be unsorted; duplicates are ignored. Unknown ids throw InputError.
InducedSubgraph remove_vertices(const Digraph& g, const std::vector<int>& s);
InducedSubgraph induced_subgraph(const Digraph& g, const std::vector<int>& keep);
EpsilonWitness epsilon_of(const Digraph& g);

Digraph complete_digraph(int n);
Graph complete_graph(int n);
Digraph directed_cycle(int n);

}  // namespace treecount
