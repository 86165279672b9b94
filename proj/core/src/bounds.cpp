#include <cmath>
#include <numbers>

#include "treecount/count.hpp"
#include "treecount/errors.hpp"

namespace treecount {

namespace {

constexpr double kLog2E = std::numbers::log2e;

}  // namespace

BoundValue directed_lower_bound(const BoundInputs& in) {
  if (!(in.n >= 1.0)) throw InputError("bound needs n >= 1");
  if (!(in.h >= 0.0)) throw InputError("bound needs h >= 0");
  if (in.aut < 1) throw InputError("bound needs |Aut| >= 1");
  BoundValue b;
  b.log2 = in.h - in.n * kLog2E - in.eps * in.n - log2_big(in.aut);
  b.value = std::exp2(b.log2);
  return b;
}

BoundValue undirected_lower_bound(double n, double h_graph, double eps, const BigInt& aut) {
  return directed_lower_bound({n, 2.0 * h_graph, eps, aut});
}

double undirected_entropy(const Graph& g) {
  return matching_entropy(max_entropy_matching(double_orient(g)).matching) / 2.0;
}

}  // namespace treecount
