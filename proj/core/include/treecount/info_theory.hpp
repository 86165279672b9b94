#pragma once

#include <cstdint>
#include <vector>

namespace treecount {

// Probability vector; validated on construction (entries >= 0, sum 1 +- 1e-12).
class DiscreteDistribution {
 public:
  explicit DiscreteDistribution(std::vector<double> probs);
  const std::vector<double>& probs() const { return probs_; }
  std::size_t size() const { return probs_.size(); }
  double operator[](std::size_t i) const { return probs_[i]; }

 private:
  std::vector<double> probs_;
};

// Membership flags over outcome indices.
struct EventMask {
  std::vector<bool> member;
  double probability(const DiscreteDistribution& d) const;
};

struct GapVerdict {
  double gap = 0.0;
  double bound = 0.0;
  bool holds = false;
};

inline constexpr double kDistributionTolerance = 1e-12;

// x * log2(1/x) with 0 log 0 = 0.
double entropy_term(double x);

double entropy(const DiscreteDistribution& d);
double conditional_entropy(const DiscreteDistribution& d, const EventMask& e);
// Requires p_i >= 1/A for every i, A >= 16 and a = 1 - P[e] <= 1/2.
GapVerdict entropy_gap_bound(const DiscreteDistribution& d, const EventMask& e, double A);
double azuma_tail(double k, double c, double t);

// Plug-in entropy (bits) of an empirical histogram.
double plugin_entropy(const std::vector<std::uint64_t>& counts);

}  // namespace treecount
