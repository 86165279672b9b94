#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "treecount/bigint.hpp"
#include "treecount/graph.hpp"

namespace treecount {

// Orientation of the edge between a vertex and its parent.
// Down: the arc runs parent -> child. Up: child -> parent.
enum class EdgeDir : std::uint8_t { Down, Up };

class RootedOrientedTree {
 public:
  // Single vertex.
  RootedOrientedTree();
  // parent[root] = -1; dir[root] is ignored. Throws InputError unless the
  // parent array describes one tree.
  RootedOrientedTree(std::vector<int> parent, std::vector<EdgeDir> dir);
  // Oriented edges as arcs (tail, head), rooted at `root`.
  static RootedOrientedTree from_arcs(int n, int root, const std::vector<Arc>& arcs);

  int n() const { return static_cast<int>(parent_.size()); }
  int root() const { return root_; }
  int parent(int v) const { return parent_[v]; }
  EdgeDir dir(int v) const { return dir_[v]; }
  std::span<const int> children(int v) const {
    return {child_.data() + child_begin_[v], child_.data() + child_begin_[v + 1]};
  }
  // Breadth-first order, children in ascending id order.
  const std::vector<int>& bfs() const { return bfs_; }
  int bfs_index(int v) const { return bfs_pos_[v]; }
  int depth(int v) const { return depth_[v]; }
  int subtree_size(int v) const { return size_[v]; }
  int degree(int v) const { return static_cast<int>(children(v).size()) + (parent_[v] >= 0 ? 1 : 0); }
  int max_degree() const;
  const std::vector<int>& parents() const { return parent_; }
  const std::vector<EdgeDir>& dirs() const { return dir_; }

  // Tree arcs (tail, head), one per non-root vertex, in vertex order.
  std::vector<Arc> arcs() const;
  // Same oriented tree, different root.
  RootedOrientedTree reroot(int new_root) const;

 private:
  std::vector<int> parent_;
  std::vector<EdgeDir> dir_;
  int root_ = 0;
  std::vector<int> child_begin_;
  std::vector<int> child_;
  std::vector<int> bfs_;
  std::vector<int> bfs_pos_;
  std::vector<int> depth_;
  std::vector<int> size_;
};

std::vector<int> bfs_order(const RootedOrientedTree& t);

// A connected vertex subset of a tree. vertices[0] is the root and the list
// follows the breadth-first order of the piece.
struct Subtree {
  int root = -1;
  std::vector<int> vertices;
  int size() const { return static_cast<int>(vertices.size()); }
};

// Builds the piece as a standalone tree; local id k stands for s.vertices[k].
RootedOrientedTree materialize(const RootedOrientedTree& t, const Subtree& s);
// Orders an arbitrary connected vertex set as a Subtree rooted at `root`.
Subtree make_subtree(const RootedOrientedTree& t, const std::vector<int>& vertices, int root);

// max_degree <= 0 means "use max(2, Delta(T))".
std::vector<Subtree> tree_partition(const RootedOrientedTree& t, int size_floor, int max_degree = 0);

struct TreeDecomposition {
  std::vector<Subtree> pieces;
  std::vector<int> core_size;        // piece size before the parent is added
  std::vector<long long> residuals;  // n_0, ..., n_k with n_i = n0 - |T_1 u ... u T_i| + 1
  std::vector<int> overlap;          // overlap[i] = j with V(T_i) n V(T_j) = {t_i}; -1 for i = 0
  long long n0 = 0;
  int delta = 2;
  bool degenerate = false;  // the whole tree is too small for even one window
};

TreeDecomposition quarter_decomposition(const RootedOrientedTree& t, long long n0, int max_degree = 0);

struct DecompositionCheck {
  bool coverage = true;
  bool containment = true;
  bool depth_order = true;
  bool overlap = true;
  bool window = true;
  std::vector<std::string> failures;
  bool ok() const { return coverage && containment && depth_order && overlap && window; }
};

DecompositionCheck check_decomposition(const RootedOrientedTree& t, const TreeDecomposition& d);
// Disjointness, coverage, prefix connectivity and the t..2 Delta t window.
DecompositionCheck check_partition(const RootedOrientedTree& t, const std::vector<Subtree>& pieces,
                                   int size_floor, int max_degree = 0);

struct TrunkSplit {
  Subtree trunk;   // T' = T - T'', rooted at the root of T; empty when degenerate
  Subtree branch;  // T'' = T(t''), rooted at t''
  int t_prime = -1;
  int t_double_prime = -1;
  EdgeDir link = EdgeDir::Down;  // orientation of t' t'' seen from t'
  bool degenerate = false;
};

TrunkSplit split_trunk(const RootedOrientedTree& t, int threshold);

// |Aut(T)|. rooted: automorphisms must fix the root. respect_orientation:
// they must map arcs to arcs (otherwise the underlying undirected tree).
BigInt automorphism_count(const RootedOrientedTree& t, bool rooted, bool respect_orientation = true);

struct AsymptoticParams {
  double n = 0.0;
  double gamma = 0.0;
  double zeta = 0.0;   // 1 / sqrt(ln n)
  double delta = 0.0;  // e^(gamma sqrt(ln n))
  double alpha = 0.0;  // 1 / (7000 sqrt(ln n))
  double mu = 0.0;     // n^(-alpha), the smallest admissible trunk fraction
  double trunk_threshold = 0.0;  // n^(1 - alpha)
};

AsymptoticParams asymptotic_params(double n, double gamma);

}  // namespace treecount
