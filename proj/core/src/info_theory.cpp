#include "treecount/info_theory.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "treecount/errors.hpp"

namespace treecount {

DiscreteDistribution::DiscreteDistribution(std::vector<double> probs) : probs_(std::move(probs)) {
  double total = 0.0;
  for (std::size_t i = 0; i < probs_.size(); ++i) {
    if (!(probs_[i] >= 0.0) || !std::isfinite(probs_[i]))
      throw InputError("probability " + std::to_string(i) + " is negative or not finite");
    total += probs_[i];
  }
  if (std::abs(total - 1.0) > kDistributionTolerance)
    throw InputError("distribution is not normalized (sum = " + std::to_string(total) + ")");
}

double EventMask::probability(const DiscreteDistribution& d) const {
  if (member.size() != d.size()) throw InputError("event mask size does not match the distribution");
  double p = 0.0;
  for (std::size_t i = 0; i < d.size(); ++i)
    if (member[i]) p += d[i];
  return p;
}

double entropy_term(double x) { return x > 0.0 ? -x * std::log2(x) : 0.0; }

double entropy(const DiscreteDistribution& d) {
  double h = 0.0;
  for (double p : d.probs()) h += entropy_term(p);
  return h;
}

double conditional_entropy(const DiscreteDistribution& d, const EventMask& e) {
  const double pe = e.probability(d);
  if (!(pe > 0.0)) throw InputError("conditioning event has probability zero");
  double h = 0.0;
  for (std::size_t i = 0; i < d.size(); ++i)
    if (e.member[i]) h += entropy_term(d[i] / pe);
  return h;
}

GapVerdict entropy_gap_bound(const DiscreteDistribution& d, const EventMask& e, double A) {
  if (!(A >= 16.0)) throw InputError("hypothesis A >= 16 violated");
  for (std::size_t i = 0; i < d.size(); ++i)
    if (d[i] < 1.0 / A)
      throw InputError("hypothesis p_i >= 1/A violated at outcome " + std::to_string(i));
  const double a = 1.0 - e.probability(d);
  if (a > 0.5) throw InputError("hypothesis a = 1 - P[E] <= 1/2 violated");
  GapVerdict v;
  v.gap = entropy(d) - conditional_entropy(d, e);
  v.bound = 2.0 * std::max(a, 0.0) * std::log2(A);
  v.holds = v.gap <= v.bound + 1e-9;
  return v;
}

double azuma_tail(double k, double c, double t) {
  if (!(k >= 1.0)) throw InputError("azuma_tail needs k >= 1");
  if (!(c > 0.0)) throw InputError("azuma_tail needs c > 0");
  if (!(t > 0.0)) throw InputError("azuma_tail needs t > 0");
  return 2.0 * std::exp(-(t * t) / (2.0 * k * c * c));
}

double plugin_entropy(const std::vector<std::uint64_t>& counts) {
  const double total = static_cast<double>(std::accumulate(counts.begin(), counts.end(), std::uint64_t{0}));
  if (total == 0.0) return 0.0;
  double h = 0.0;
  for (auto c : counts) h += entropy_term(static_cast<double>(c) / total);
  return h;
}

}  // namespace treecount
