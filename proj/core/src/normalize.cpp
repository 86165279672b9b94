#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "treecount/errors.hpp"
#include "treecount/matching.hpp"

namespace treecount {

namespace {

void check_config(const NormalizationConfig& cfg) {
  if (!(cfg.lambda > 0.0 && cfg.lambda < 1.0)) throw InputError("normalization needs 0 < lambda < 1");
  if (!(cfg.c >= 1.0)) throw InputError("normalization needs c >= 1");
  if (!(cfg.b > cfg.c)) throw InputError("normalization needs b > c");
  if (cfg.max_rounds < 1) throw InputError("normalization needs at least one round");
}

std::string describe_arcs(const Digraph& g, const std::vector<int>& ids) {
  std::ostringstream os;
  for (std::size_t k = 0; k < ids.size(); ++k) {
    const Arc a = g.arc(ids[k]);
    os << (k ? ", " : "") << a.tail << "->" << a.head;
  }
  return os.str();
}

}  // namespace

NormalizationResult normalize_to_b(const PerfectFractionalMatching& m, const NormalizationConfig& cfg) {
  check_config(cfg);
  const Digraph& g = m.host();
  const double n = g.n();
  const double eps = epsilon_of(g).epsilon;
  if (!(eps > 0.0)) throw InputError("normalization needs an (n, eps)-digraph with eps > 0");

  NormalizationResult res{m};
  res.epsilon = eps;
  res.entropy_before = matching_entropy(m);
  res.loss_bound_applies = res.entropy_before >= n * std::log2(n / 2.0) + eps * n;

  const NormalityReport initial = normality(m);
  if (initial.is_b_normal(cfg.b)) {
    res.entropy_after = res.entropy_before;
    res.normality = initial;
    return res;
  }

  const MaxEntropyResult partner = max_entropy_matching(m.host_ptr());
  const NormalityReport pn = normality(partner.matching);
  if (!pn.is_b_normal(cfg.c))
    throw ProcedureFailure("blend partner is only " + std::to_string(pn.b_min) + "-normal, need c = " +
                           std::to_string(cfg.c));

  std::vector<double> w(m.weights().size());
  for (std::size_t id = 0; id < w.size(); ++id)
    w[id] = (1.0 - cfg.lambda) * m.weight(static_cast<int>(id)) +
            cfg.lambda * partner.matching.weight(static_cast<int>(id));
  PerfectFractionalMatching x(m.host_ptr(), std::move(w));
  res.blended = true;

  const double heavy_cut = cfg.b / n;
  const double light_cap = 1.0 / (eps * n);
  for (int round = 0; round < cfg.max_rounds; ++round) {
    std::vector<int> heavy;
    for (std::size_t id = 0; id < x.weights().size(); ++id)
      if (x.weight(static_cast<int>(id)) > heavy_cut) heavy.push_back(static_cast<int>(id));
    if (heavy.empty()) break;
    ++res.rounds;
    std::stable_sort(heavy.begin(), heavy.end(),
                     [&](int a, int b) { return x.weight(a) > x.weight(b); });

    for (int id : heavy) {
      const Arc vw = g.arc(id);
      const int v = vw.tail, wv = vw.head;
      std::vector<FourCycle> cycles;
      for (int z : g.out(v)) {
        if (z == wv || x.weight(v, z) > light_cap) continue;
        for (int u : g.in(wv)) {
          if (u == v || x.weight(u, wv) > light_cap) continue;
          if (g.has_arc(u, z)) cycles.push_back({v, wv, u, z});
        }
      }
      if (cycles.empty()) continue;
      const double excess = x.weight(id) - heavy_cut;
      if (excess <= 0.0) continue;
      const double share = excess / static_cast<double>(cycles.size());
      for (const FourCycle& c : cycles) {
        // stay a hair inside the product inequality so rounding cannot break it
        const double alpha = std::min(share, fourcycle_capacity(x, c) * (1.0 - 1e-9));
        if (alpha <= 0.0) continue;
        x = fourcycle_shift(x, c, alpha);
        ++res.shifts;
      }
    }
  }

  res.normality = normality(x);
  if (!res.normality.is_b_normal(cfg.b)) {
    std::vector<int> bad;
    const double light_cut = 1.0 / (cfg.b * n);
    for (std::size_t id = 0; id < x.weights().size(); ++id) {
      const double xe = x.weight(static_cast<int>(id));
      if (xe > heavy_cut || xe < light_cut) bad.push_back(static_cast<int>(id));
    }
    throw ProcedureFailure("no " + std::to_string(cfg.b) + "-normal matching after " +
                           std::to_string(res.rounds) + " rounds; surviving arcs: " + describe_arcs(g, bad));
  }
  res.entropy_after = matching_entropy(x);
  res.entropy_loss = res.entropy_before - res.entropy_after;
  res.matching = std::move(x);
  return res;
}

}  // namespace treecount
