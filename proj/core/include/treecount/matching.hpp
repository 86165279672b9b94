#pragma once

#include <memory>
#include <string>
#include <vector>

#include "treecount/graph.hpp"

namespace treecount {

inline constexpr double kMatchingTolerance = 1e-9;

enum class Side { Out, In };

// Arc weights with unit out- and in-sums at every vertex. Weights are indexed
// by the host's arc ids.
class PerfectFractionalMatching {
 public:
  // Throws InputError when a weight is negative or a sum misses 1 by more than tol.
  PerfectFractionalMatching(std::shared_ptr<const Digraph> host, std::vector<double> weights,
                            double tol = kMatchingTolerance);

  const Digraph& host() const { return *host_; }
  const std::shared_ptr<const Digraph>& host_ptr() const { return host_; }
  int n() const { return host_->n(); }
  const std::vector<double>& weights() const { return weights_; }
  double weight(int arc_id) const { return weights_[arc_id]; }
  // 0 for non-arcs.
  double weight(int u, int v) const;

 private:
  std::shared_ptr<const Digraph> host_;
  std::vector<double> weights_;
};

// max over vertices of |out-sum - 1| and |in-sum - 1|.
double sum_residual(const Digraph& g, const std::vector<double>& w);

struct NormalityReport {
  double b_min = 0.0;  // +inf when some arc has weight 0
  bool support_gap = false;
  std::vector<int> attaining_arcs;  // arc ids; the zero arcs when support_gap
  bool is_b_normal(double b) const { return b_min <= b; }
};

struct ScalingCertificate {
  std::vector<double> row_factors;
  std::vector<double> col_factors;
  double sum_residual = 0.0;
  double product_residual = 0.0;
  int iterations = 0;
  bool converged = false;
};

struct ScalingOptions {
  double tol = 1e-10;
  int max_iters = 0;  // 0 selects 10 n log2 n
};

struct MaxEntropyResult {
  PerfectFractionalMatching matching;
  ScalingCertificate certificate;
};

double matching_entropy(const PerfectFractionalMatching& x);
double vertex_entropy(const PerfectFractionalMatching& x, int v, Side side);
double subset_entropy(const PerfectFractionalMatching& x, const std::vector<Arc>& arcs);
NormalityReport normality(const PerfectFractionalMatching& x);

// Alternating row/column scaling of the 0/1 biadjacency support. Throws
// ConvergenceFailure (with the last residual) when the budget runs out.
MaxEntropyResult max_entropy_matching(std::shared_ptr<const Digraph> g, const ScalingOptions& opt = {});
MaxEntropyResult max_entropy_matching(const Digraph& g, const ScalingOptions& opt = {});

// A 4-cycle v+ w- u+ z- of the bipartite double: arcs v->w and u->z lose
// alpha, arcs u->w and v->z gain it.
struct FourCycle {
  int v = 0, w = 0, u = 0, z = 0;
};

// Largest alpha that keeps x_vw x_uz >= x_uw x_vz after the shift (0 if the
// inequality already fails).
double fourcycle_capacity(const PerfectFractionalMatching& x, const FourCycle& c);
PerfectFractionalMatching fourcycle_shift(const PerfectFractionalMatching& x, const FourCycle& c,
                                          double alpha);

struct HeavyMassReport {
  double mass = 0.0;       // sum of x_e over x_e >= b/n
  double bound = 0.0;      // 4n / log2 b
  double entropy = 0.0;
  double hypothesis_threshold = 0.0;  // n log2(n/2)
  bool hypothesis_holds = false;
  bool bound_holds = true;  // only meaningful when hypothesis_holds
};

HeavyMassReport heavy_mass(const PerfectFractionalMatching& x, double b);

struct NormalizationConfig {
  double b = 0.0;        // target normality
  double lambda = 0.1;   // blend weight of the partner
  double c = 2.0;        // required normality of the partner
  int max_rounds = 200;
};

struct NormalizationResult {
  PerfectFractionalMatching matching;
  bool blended = false;
  double entropy_before = 0.0;
  double entropy_after = 0.0;
  double entropy_loss = 0.0;  // before - after, may be negative
  double epsilon = 0.0;
  bool loss_bound_applies = false;  // h(m) >= n log(n/2) + eps n
  int shifts = 0;
  int rounds = 0;
  NormalityReport normality;
};

NormalizationResult normalize_to_b(const PerfectFractionalMatching& m, const NormalizationConfig& cfg);

struct RebalanceResult {
  PerfectFractionalMatching matching;  // host = outer[vertices]
  std::vector<int> vertices;           // outer ids, ascending
  double lambda = 1.0;
  double entropy = 0.0;
  double target = 0.0;  // (n'/n) h(x) - n' log2(n/n')
  double slack = 0.0;   // n^(1/4 - 1/(24 sqrt(ln n)))
  bool meets_target = false;
  double b_min = 0.0;
  int redistribution_steps = 0;
  std::vector<std::string> warnings;  // unmet lemma hypotheses
};

// x lives on outer[host_vertices] (local ids follow the ascending order of
// host_vertices). Removes `removed` (outer ids), attaches `attach` (outer id,
// or -1 for none) and repairs the unit sums.
RebalanceResult rebalance_after_removal(const Digraph& outer, const std::vector<int>& host_vertices,
                                        const PerfectFractionalMatching& x,
                                        const std::vector<int>& removed, int attach);

struct MinusSetResult {
  PerfectFractionalMatching matching;  // host = g - A
  std::vector<int> vertices;           // ids in g, ascending
  double h_graph = 0.0;                // h(G)
  double entropy = 0.0;
  double lambda = 1.0;
  double b_min = 0.0;
  bool b_normal = false;
  double target = 0.0;  // h(x) - 2a log2 n - a b^2 with b = 2 b_min(x)
  bool meets_target = false;
  std::vector<std::string> warnings;
};

MinusSetResult matching_minus_set(const Digraph& g, const std::vector<int>& a, double b);

}  // namespace treecount
