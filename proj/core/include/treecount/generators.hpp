#pragma once

#include "treecount/graph.hpp"
#include "treecount/rng.hpp"
#include "treecount/tree.hpp"

namespace treecount {

// Each arc present independently with probability p; redrawn until the minimum
// semidegree reaches min_semi. p <= 0 picks a density that usually
// succeeds within a few draws. Throws ProcedureFailure after max_attempts.
Digraph random_dense_digraph(int n, int min_semi, CounterRng& rng, double p = 0.0,
                             int max_attempts = 1000);
Graph random_dense_graph(int n, int min_degree, CounterRng& rng, double p = 0.0, int max_attempts = 1000);

// Random recursive tree with every degree <= max_degree (max_degree >= 2),
// random edge orientations when `orient` is set (all down otherwise), and
// randomly permuted labels. The root is label 0's image under the permutation.
RootedOrientedTree random_tree(int n, int max_degree, CounterRng& rng, bool orient = true);
// Fresh independent orientation for every edge, same shape.
RootedOrientedTree random_orientation(const RootedOrientedTree& t, CounterRng& rng);

// 0 - 1 - ... - (n-1), rooted at 0, every edge pointing away from the root.
RootedOrientedTree path_tree(int n);
// Centre 0 with leaves 1..n-1, edges pointing to the leaves.
RootedOrientedTree star_tree(int n);
// Heap-ordered complete binary tree with 2^(depth+1) - 1 vertices.
RootedOrientedTree complete_binary_tree(int depth);

// Undirected cycle 0 - 1 - ... - (n-1) - 0.
Graph cycle_graph(int n);

}  // namespace treecount
