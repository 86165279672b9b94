#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "treecount/bigint.hpp"
#include "treecount/graph.hpp"
#include "treecount/matching.hpp"
#include "treecount/tree.hpp"

namespace treecount {

struct ConfidenceInterval {
  double low = 0.0;
  double high = 0.0;
  double confidence = 0.95;
};

struct CountReport {
  std::string method;  // "brute" or "estimator"
  BigInt labelled;     // exact for brute, rounded mean for the estimator
  BigInt unlabelled;   // labelled / aut when no root is fixed
  BigInt aut = 1;
  bool rooted = false;
  int root_image = -1;
  bool valid = true;  // false when the search budget ran out (labelled is then a partial count)
  std::uint64_t nodes = 0;  // search nodes visited
  // estimator only
  double estimate = 0.0;
  double std_error = 0.0;
  std::uint64_t samples = 0;
  std::optional<ConfidenceInterval> ci;
};

struct BruteOptions {
  int root_image = -1;           // image of the pattern's first vertex, -1 for any
  std::uint64_t node_budget = 2'000'000'000ULL;
  int workers = 1;
};

// Injective arc-preserving maps V(pattern) -> V(g) (copies need not be induced).
// The pattern must be weakly connected. Backtracking in breadth-first order
// from `pattern_root`; candidates come from the neighbourhood of an already
// placed vertex and are pruned by semidegree. Throws InputError when the
// pattern is larger than g.
CountReport count_copies_brute(const Digraph& g, const Digraph& pattern, int pattern_root = 0,
                               const BruteOptions& opt = {});
// Tree version: the root constraint applies to the tree root, and unlabelled =
// labelled / |Aut(T)| when no root is fixed.
CountReport count_copies_brute(const Digraph& g, const RootedOrientedTree& t, const BruteOptions& opt = {});

// Arc-preserving self-maps of a weakly connected pattern, by brute force.
BigInt pattern_automorphisms(const Digraph& pattern);

// The oriented tree as a digraph on its own vertex ids.
Digraph tree_digraph(const RootedOrientedTree& t);

struct EstimatorOptions {
  std::uint64_t samples = 100'000;
  std::uint64_t seed = 0;
  int workers = 1;
  int root_image = -1;  // -1: uniform start, estimate of the labelled count
  double confidence = 0.95;
};

// Importance sampling: each sample of the random tree contributes
// 1[injective] * (n if the start is uniform) / P[transitions]. The mean is an
// unbiased estimate of the labelled count. Throws InputError when some arc of
// the host has weight 0 (the estimator would be biased).
CountReport estimate_copies(const PerfectFractionalMatching& x, const RootedOrientedTree& t,
                            const EstimatorOptions& opt = {});

struct BoundInputs {
  double n = 0.0;
  double h = 0.0;  // bits
  double eps = 0.0;
  BigInt aut = 1;
};

struct BoundValue {
  double log2 = 0.0;
  double value = 0.0;  // 2^log2, may be inf for large n
};

// aut^-1 2^(h - n log2 e - eps n)
BoundValue directed_lower_bound(const BoundInputs& in);
// aut^-1 2^(2 h - n log2 e - eps n), h being the entropy of the undirected graph
BoundValue undirected_lower_bound(double n, double h_graph, double eps, const BigInt& aut);
// h(G) of an undirected graph: half the entropy of its doubly oriented digraph.
double undirected_entropy(const Graph& g);

struct AbsorbResult {
  bool found = false;
  std::vector<int> set;  // A, ascending
  int anchor_image = -1;  // v
  std::uint64_t sets_checked = 0;
  std::uint64_t nodes = 0;
};

// Searches (A, v) with |A| = set_size, v in A, such that every B containing A
// with |B| = |piece| spans a copy of the piece with `anchor` mapped to v.
// Exhaustive; |g| <= 12 only. Throws ProcedureFailure when node_budget runs out.
AbsorbResult absorbing_pair_search(const Digraph& g, const RootedOrientedTree& piece, int anchor, int set_size,
                                   std::uint64_t node_budget = 200'000'000ULL);

// Does g[allowed] contain a copy of t with t.root() mapped into root_choices?
// Returns the map (indexed by tree vertex) or nothing. Throws ProcedureFailure
// when node_budget runs out.
std::optional<std::vector<int>> find_tree_copy(const Digraph& g, const RootedOrientedTree& t,
                                               const std::vector<char>& allowed,
                                               const std::vector<int>& root_choices, std::uint64_t node_budget);

struct VerifyReport {
  bool directed = true;
  int n = 0;
  int m = 0;  // pattern vertex count
  double h_bits = 0.0;
  BigInt aut = 1;
  BigInt labelled;
  BigInt count;  // unlabelled copies
  double eps = 0.0;
  BoundValue bound;
  double ratio_log2 = 0.0;  // log2(count) - bound.log2; -inf when count = 0
  bool holds = false;
  bool hypothesis_met = false;  // minimum (semi)degree above n/2
  std::string note;
};

// Brute-force count against the lower bound; |g| <= 9 keeps it quick.
VerifyReport verify_bound_experiment(const Digraph& g, const RootedOrientedTree& t, double eps = 0.0,
                                     int workers = 1);
// Undirected host and pattern (for instance a Hamilton cycle).
VerifyReport verify_bound_experiment(const Graph& g, const Graph& pattern, double eps = 0.0, int workers = 1);

}  // namespace treecount
