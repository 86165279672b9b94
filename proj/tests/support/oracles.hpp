#pragma once

// Independent reference implementations used only by the tests. They share
// data types with the library but none of its algorithms.

#include <cstdint>
#include <vector>

#include "treecount/bigint.hpp"
#include "treecount/graph.hpp"
#include "treecount/tree.hpp"

namespace oracle {

// Maximum entropy (bits) over perfect fractional matchings of g, by damped
// Newton steps inside the affine space of unit row/column sums, started from
// the average of all perfect matchings. Returns the weights by arc id too.
struct EntropyOptimum {
  double entropy = 0.0;
  std::vector<double> weights;
  int iterations = 0;
  std::uint64_t perfect_matchings = 0;
};
EntropyOptimum max_entropy_newton(const treecount::Digraph& g);

// Average of all perfect matchings (permutations supported on arcs).
std::vector<double> perfect_matching_average(const treecount::Digraph& g, std::uint64_t* count = nullptr);

// |Aut| by checking all n! vertex bijections.
std::uint64_t automorphisms_by_permutation(const treecount::RootedOrientedTree& t, bool rooted,
                                           bool respect_orientation = true);

// Every outcome of the branching walk with its probability.
struct Outcome {
  std::vector<int> images;  // breadth-first order
  double probability = 0.0;
};
std::vector<Outcome> enumerate_outcomes(const treecount::Digraph& g, const std::vector<double>& weights,
                                        const treecount::RootedOrientedTree& t, int start);

double outcome_entropy(const std::vector<Outcome>& outcomes);
double self_avoiding_probability(const std::vector<Outcome>& outcomes);

}  // namespace oracle
