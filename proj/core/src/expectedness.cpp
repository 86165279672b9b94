#include <cmath>

#include "treecount/errors.hpp"
#include "treecount/info_theory.hpp"
#include "treecount/random_embed.hpp"

namespace treecount {

ExpectednessThresholds well_behaved_thresholds(double n_inner) {
  if (!(n_inner > 1.0)) throw InputError("well-behaved thresholds need n' > 1");
  const double root_ln = std::sqrt(std::log(n_inner));
  return {std::pow(n_inner, 0.25 - 1.0 / (17.0 * root_ln)), std::pow(n_inner, -0.75 - 1.0 / (18.0 * root_ln))};
}

bool thresholds_meaningful(double n_inner) { return n_inner > 1.0 && std::log(n_inner) >= 17.0 * 17.0; }

ExpectednessReport expectedness(const std::vector<int>& m_local, const Digraph& outer,
                                const std::vector<int>& inner_vertices, const PerfectFractionalMatching& x,
                                const ExpectednessThresholds& thresholds) {
  const Digraph& inner = x.host();
  const int n = inner.n();
  if (static_cast<int>(inner_vertices.size()) != n)
    throw InputError("inner vertex list does not match the matching's host");
  if (!(thresholds.a > 0.0 && thresholds.c > 0.0)) throw InputError("expectedness thresholds must be positive");

  ExpectednessReport r;
  r.thresholds = thresholds;
  std::vector<char> in_m(n, 0);
  for (int v : m_local) {
    if (v < 0 || v >= n) throw InputError("set vertex outside the inner host");
    in_m[v] = 1;
  }
  for (char c : in_m) r.set_size += c;
  const double share = n > 0 ? static_cast<double>(r.set_size) / n : 0.0;

  // outer id -> (inner member, in M)
  std::vector<char> inner_mask(outer.n(), 0), m_mask(outer.n(), 0);
  for (int k = 0; k < n; ++k) {
    const int o = inner_vertices[k];
    if (o < 0 || o >= outer.n()) throw InputError("inner vertex outside the outer graph");
    inner_mask[o] = 1;
    m_mask[o] = in_m[k];
  }
  for (int v = 0; v < outer.n(); ++v) {
    for (int pass = 0; pass < 2; ++pass) {
      std::span<const int> nb = pass == 0 ? outer.out(v) : outer.in(v);
      int s = 0, hit = 0;
      for (int w : nb) {
        s += inner_mask[w];
        hit += m_mask[w];
      }
      r.max_set_deviation = std::max(r.max_set_deviation, std::abs(hit - share * s));
    }
  }

  for (int v = 0; v < n; ++v) {
    double w_out = 0.0, h_out = 0.0, w_in = 0.0, h_in = 0.0;
    const auto heads = inner.out(v);
    for (std::size_t k = 0; k < heads.size(); ++k) {
      if (!in_m[heads[k]]) continue;
      const double xe = x.weight(inner.out_arc_begin(v) + static_cast<int>(k));
      w_out += xe;
      h_out += entropy_term(xe);
    }
    const auto tails = inner.in(v);
    const auto ids = inner.in_arc_ids(v);
    for (std::size_t k = 0; k < tails.size(); ++k) {
      if (!in_m[tails[k]]) continue;
      const double xe = x.weight(ids[k]);
      w_in += xe;
      h_in += entropy_term(xe);
    }
    r.max_weight_deviation = std::max({r.max_weight_deviation, std::abs(w_out - share), std::abs(w_in - share)});
    r.max_entropy_deviation =
        std::max({r.max_entropy_deviation, std::abs(h_out - share * vertex_entropy(x, v, Side::Out)),
                  std::abs(h_in - share * vertex_entropy(x, v, Side::In))});
  }
  r.set_expected = r.max_set_deviation < thresholds.a;
  r.weight_expected = r.max_weight_deviation < thresholds.c && r.max_entropy_deviation < thresholds.c;
  r.verdict = r.set_expected && r.weight_expected;
  return r;
}

}  // namespace treecount
