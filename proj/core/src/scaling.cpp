#include <algorithm>
#include <cmath>

#include "treecount/errors.hpp"
#include "treecount/matching.hpp"

namespace treecount {

MaxEntropyResult max_entropy_matching(std::shared_ptr<const Digraph> gp, const ScalingOptions& opt) {
  if (!gp) throw InputError("max_entropy_matching without a digraph");
  const Digraph& g = *gp;
  const int n = g.n();
  for (int v = 0; v < n; ++v)
    if (g.out_degree(v) == 0 || g.in_degree(v) == 0)
      throw ConvergenceFailure("vertex " + std::to_string(v) +
                                   " has no out- or in-neighbour; no perfect fractional matching",
                               1.0, 0);
  int max_iters = opt.max_iters;
  if (max_iters <= 0)
    max_iters = std::max(1, static_cast<int>(std::ceil(10.0 * n * std::log2(std::max(n, 2)))));

  ScalingCertificate cert;
  auto& r = cert.row_factors;
  auto& c = cert.col_factors;
  r.assign(n, 1.0);
  c.assign(n, 1.0);

  // After the column step every column sums to 1, so the residual is the row one.
  auto row_residual = [&] {
    double worst = 0.0;
    for (int v = 0; v < n; ++v) {
      double s = 0.0;
      for (int w : g.out(v)) s += c[w];
      worst = std::max(worst, std::abs(r[v] * s - 1.0));
    }
    return worst;
  };

  double residual = 1.0;
  int it = 0;
  while (it < max_iters) {
    ++it;
    for (int v = 0; v < n; ++v) {
      double s = 0.0;
      for (int w : g.out(v)) s += c[w];
      r[v] = 1.0 / s;
    }
    for (int w = 0; w < n; ++w) {
      double s = 0.0;
      for (int v : g.in(w)) s += r[v];
      c[w] = 1.0 / s;
    }
    residual = row_residual();
    if (residual < opt.tol) break;
  }
  cert.iterations = it;

  std::vector<double> x(g.arc_count());
  for (int v = 0; v < n; ++v) {
    const int base = g.out_arc_begin(v);
    auto heads = g.out(v);
    for (std::size_t k = 0; k < heads.size(); ++k) x[base + k] = r[v] * c[heads[k]];
  }
  cert.sum_residual = sum_residual(g, x);
  cert.converged = cert.sum_residual < opt.tol;
  for (int v = 0; v < n; ++v) {
    const int base = g.out_arc_begin(v);
    auto heads = g.out(v);
    for (std::size_t k = 0; k < heads.size(); ++k)
      cert.product_residual = std::max(cert.product_residual, std::abs(x[base + k] - r[v] * c[heads[k]]));
  }
  if (!cert.converged)
    throw ConvergenceFailure("scaling did not converge in " + std::to_string(it) +
                                 " iterations (last residual " + std::to_string(cert.sum_residual) + ")",
                             cert.sum_residual, it);
  return {PerfectFractionalMatching(gp, std::move(x)), std::move(cert)};
}

MaxEntropyResult max_entropy_matching(const Digraph& g, const ScalingOptions& opt) {
  return max_entropy_matching(std::make_shared<const Digraph>(g), opt);
}

}  // namespace treecount
