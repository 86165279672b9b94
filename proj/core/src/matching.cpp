#include "treecount/matching.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "treecount/errors.hpp"
#include "treecount/info_theory.hpp"

namespace treecount {

PerfectFractionalMatching::PerfectFractionalMatching(std::shared_ptr<const Digraph> host,
                                                     std::vector<double> weights, double tol)
    : host_(std::move(host)), weights_(std::move(weights)) {
  if (!host_) throw InputError("matching without a host digraph");
  if (weights_.size() != host_->arc_count())
    throw InputError("matching has " + std::to_string(weights_.size()) + " weights for " +
                     std::to_string(host_->arc_count()) + " arcs");
  for (std::size_t id = 0; id < weights_.size(); ++id) {
    if (!(weights_[id] >= 0.0) || !std::isfinite(weights_[id])) {
      const Arc a = host_->arc(static_cast<int>(id));
      throw InputError("arc " + std::to_string(a.tail) + "->" + std::to_string(a.head) +
                       " has a negative or non-finite weight");
    }
  }
  const double r = sum_residual(*host_, weights_);
  if (!(r <= tol))
    throw InputError("weights are not a perfect fractional matching (max unit-sum residual " +
                     std::to_string(r) + ")");
}

double PerfectFractionalMatching::weight(int u, int v) const {
  const int id = host_->arc_id(u, v);
  return id < 0 ? 0.0 : weights_[id];
}

double sum_residual(const Digraph& g, const std::vector<double>& w) {
  double worst = 0.0;
  for (int v = 0; v < g.n(); ++v) {
    double out = 0.0;
    const int base = g.out_arc_begin(v);
    for (int k = 0; k < g.out_degree(v); ++k) out += w[base + k];
    double in = 0.0;
    for (int id : g.in_arc_ids(v)) in += w[id];
    worst = std::max({worst, std::abs(out - 1.0), std::abs(in - 1.0)});
  }
  return worst;
}

double matching_entropy(const PerfectFractionalMatching& x) {
  double h = 0.0;
  for (double w : x.weights()) h += entropy_term(w);
  return h;
}

double vertex_entropy(const PerfectFractionalMatching& x, int v, Side side) {
  const Digraph& g = x.host();
  if (!g.contains(v)) throw InputError("unknown vertex " + std::to_string(v));
  double h = 0.0;
  if (side == Side::Out) {
    const int base = g.out_arc_begin(v);
    for (int k = 0; k < g.out_degree(v); ++k) h += entropy_term(x.weight(base + k));
  } else {
    for (int id : g.in_arc_ids(v)) h += entropy_term(x.weight(id));
  }
  return h;
}

double subset_entropy(const PerfectFractionalMatching& x, const std::vector<Arc>& arcs) {
  double h = 0.0;
  for (const Arc& a : arcs) {
    const int id = x.host().arc_id(a.tail, a.head);
    if (id < 0)
      throw InputError("arc " + std::to_string(a.tail) + "->" + std::to_string(a.head) +
                       " is not in the host");
    h += entropy_term(x.weight(id));
  }
  return h;
}

NormalityReport normality(const PerfectFractionalMatching& x) {
  NormalityReport r;
  const double n = x.n();
  const auto& w = x.weights();
  r.b_min = 1.0;
  for (std::size_t id = 0; id < w.size(); ++id) {
    if (w[id] <= 0.0) {
      r.support_gap = true;
      r.attaining_arcs.push_back(static_cast<int>(id));
    }
  }
  if (r.support_gap) {
    r.b_min = std::numeric_limits<double>::infinity();
    return r;
  }
  std::vector<double> score(w.size());
  for (std::size_t id = 0; id < w.size(); ++id) {
    score[id] = std::max(n * w[id], 1.0 / (n * w[id]));
    r.b_min = std::max(r.b_min, score[id]);
  }
  for (std::size_t id = 0; id < w.size(); ++id)
    if (score[id] >= r.b_min * (1.0 - 1e-12)) r.attaining_arcs.push_back(static_cast<int>(id));
  return r;
}

namespace {

struct CycleIds {
  int vw, uz, uw, vz;
};

CycleIds cycle_ids(const Digraph& g, const FourCycle& c) {
  if (c.v == c.u) throw InputError("4-cycle needs two distinct tails");
  if (c.w == c.z) throw InputError("4-cycle needs two distinct heads");
  CycleIds ids{g.arc_id(c.v, c.w), g.arc_id(c.u, c.z), g.arc_id(c.u, c.w), g.arc_id(c.v, c.z)};
  if (ids.vw < 0 || ids.uz < 0 || ids.uw < 0 || ids.vz < 0)
    throw InputError("4-cycle uses an arc missing from the host");
  return ids;
}

}  // namespace

double fourcycle_capacity(const PerfectFractionalMatching& x, const FourCycle& c) {
  const CycleIds id = cycle_ids(x.host(), c);
  const double a = x.weight(id.vw), b = x.weight(id.uz), p = x.weight(id.uw), q = x.weight(id.vz);
  const double slack = a * b - p * q;
  if (slack <= 0.0) return 0.0;
  // (a-t)(b-t) >= (p+t)(q+t)  <=>  t <= (ab - pq) / (a + b + p + q)
  return std::min({slack / (a + b + p + q), a, b});
}

PerfectFractionalMatching fourcycle_shift(const PerfectFractionalMatching& x, const FourCycle& c,
                                          double alpha) {
  const CycleIds id = cycle_ids(x.host(), c);
  if (!(alpha >= 0.0)) throw InputError("4-cycle shift needs alpha >= 0");
  const double a = x.weight(id.vw), b = x.weight(id.uz), p = x.weight(id.uw), q = x.weight(id.vz);
  if (a * b < p * q) throw InputError("precondition x_vw x_uz >= x_wu x_zv fails before the shift");
  const double a2 = a - alpha, b2 = b - alpha, p2 = p + alpha, q2 = q + alpha;
  if (a2 < 0.0 || b2 < 0.0 || p2 > 1.0 || q2 > 1.0)
    throw InputError("4-cycle shift leaves a weight outside [0,1]");
  // equality at the capacity must survive rounding
  if (a2 * b2 < p2 * q2 * (1.0 - 1e-12)) throw InputError("precondition x_vw x_uz >= x_wu x_zv fails after the shift");

  const double before = entropy_term(a) + entropy_term(b) + entropy_term(p) + entropy_term(q);
  const double after = entropy_term(a2) + entropy_term(b2) + entropy_term(p2) + entropy_term(q2);
  if (after < before - 1e-12) throw std::logic_error("4-cycle shift decreased the entropy");

  std::vector<double> w = x.weights();
  w[id.vw] = a2;
  w[id.uz] = b2;
  w[id.uw] = p2;
  w[id.vz] = q2;
  return PerfectFractionalMatching(x.host_ptr(), std::move(w));
}

HeavyMassReport heavy_mass(const PerfectFractionalMatching& x, double b) {
  if (!(b > 1.0)) throw InputError("heavy_mass needs b > 1");
  HeavyMassReport r;
  const double n = x.n();
  const double cut = b / n;
  for (double w : x.weights())
    if (w >= cut) r.mass += w;
  r.bound = 4.0 * n / std::log2(b);
  r.entropy = matching_entropy(x);
  r.hypothesis_threshold = n > 0 ? n * std::log2(n / 2.0) : 0.0;
  r.hypothesis_holds = n > 0 && r.entropy >= r.hypothesis_threshold;
  r.bound_holds = !r.hypothesis_holds || r.mass <= r.bound;
  return r;
}

}  // namespace treecount
