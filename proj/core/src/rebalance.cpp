#include <algorithm>
#include <cmath>
#include <numeric>

#include "treecount/errors.hpp"
#include "treecount/matching.hpp"

namespace treecount {

namespace {

// One side of the bipartite double: the incident arcs of v, keyed by the
// opposite endpoint, in ascending order.
struct SideView {
  const Digraph& g;
  Side side;

  std::span<const int> nbrs(int v) const { return side == Side::Out ? g.out(v) : g.in(v); }
  int arc(int v, std::size_t k) const {
    return side == Side::Out ? g.out_arc_begin(v) + static_cast<int>(k) : g.in_arc_ids(v)[k];
  }
  double sum(int v, const std::vector<double>& w) const {
    double s = 0.0;
    for (std::size_t k = 0; k < nbrs(v).size(); ++k) s += w[arc(v, k)];
    return s;
  }
};

// Move weight from the excess vertex `from` to the deficit vertex `to` along
// every common neighbour, split equally; each arc gives up at most half its
// weight. Returns the amount moved.
double move_along_paths(const SideView& s, std::vector<double>& w, int from, int to, double amount) {
  auto a = s.nbrs(from);
  auto b = s.nbrs(to);
  std::vector<std::pair<int, int>> pairs;  // (arc of from, arc of to)
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] < b[j]) {
      ++i;
    } else if (b[j] < a[i]) {
      ++j;
    } else {
      pairs.emplace_back(s.arc(from, i), s.arc(to, j));
      ++i;
      ++j;
    }
  }
  if (pairs.empty()) return 0.0;

  std::vector<double> cap(pairs.size());
  for (std::size_t k = 0; k < pairs.size(); ++k) cap[k] = 0.5 * w[pairs[k].first];
  // water-filling: equal shares, capped per path
  std::vector<double> give(pairs.size(), 0.0);
  std::vector<std::size_t> open(pairs.size());
  std::iota(open.begin(), open.end(), 0);
  double left = amount;
  while (left > 0.0 && !open.empty()) {
    const double share = left / static_cast<double>(open.size());
    std::vector<std::size_t> still;
    double used = 0.0;
    for (std::size_t k : open) {
      const double room = cap[k] - give[k];
      if (room <= share) {
        give[k] = cap[k];
        used += room;
      } else {
        give[k] += share;
        used += share;
        still.push_back(k);
      }
    }
    left -= used;
    if (still.size() == open.size()) break;  // nobody saturated, all shares placed
    open.swap(still);
  }
  double moved = 0.0;
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    w[pairs[k].first] -= give[k];
    w[pairs[k].second] += give[k];
    moved += give[k];
  }
  return moved;
}

int balance_side(const SideView& s, std::vector<double>& w) {
  const int n = s.g.n();
  std::vector<double> res(n);
  for (int v = 0; v < n; ++v) res[v] = s.sum(v, w) - 1.0;
  const long long budget = 200LL * n * n + 1000;
  int steps = 0;
  for (;;) {
    int p = -1;
    for (int v = 0; v < n; ++v)
      if (p < 0 || std::abs(res[v]) > std::abs(res[p])) p = v;
    if (p < 0 || std::abs(res[p]) <= 1e-13) break;
    if (steps >= budget) throw ProcedureFailure("redistribution did not settle within its step budget");

    std::vector<int> partners;
    for (int v = 0; v < n; ++v)
      if ((res[p] > 0.0 && res[v] < 0.0) || (res[p] < 0.0 && res[v] > 0.0)) partners.push_back(v);
    std::stable_sort(partners.begin(), partners.end(),
                     [&](int a, int b) { return std::abs(res[a]) > std::abs(res[b]); });
    bool progressed = false;
    for (int q : partners) {
      const int from = res[p] > 0.0 ? p : q;
      const int to = res[p] > 0.0 ? q : p;
      const double amount = std::min(res[from], -res[to]);
      if (move_along_paths(s, w, from, to, amount) > 0.0) {
        res[from] = s.sum(from, w) - 1.0;
        res[to] = s.sum(to, w) - 1.0;
        progressed = true;
        break;
      }
    }
    if (!progressed) {
      // rounding leftovers can all share one sign
      if (std::abs(res[p]) <= 1e-11) break;
      throw ProcedureFailure("vertex " + std::to_string(p) +
                             " shares no neighbour with any vertex able to absorb its imbalance");
    }
    ++steps;
  }
  return steps;
}

// Balances out-sums first, then in-sums; the in-side moves keep out-sums fixed.
int redistribute_unit_sums(const Digraph& g, std::vector<double>& w) {
  int steps = balance_side({g, Side::Out}, w);
  steps += balance_side({g, Side::In}, w);
  return steps;
}

void require_semidegree(const Digraph& g, const std::vector<int>& names) {
  for (int v = 0; v < g.n(); ++v)
    if (g.out_degree(v) == 0 || g.in_degree(v) == 0)
      throw ProcedureFailure("semidegree collapse: vertex " + std::to_string(names[v]) +
                             " has no out- or in-neighbour left");
}

double lemma_exponent(double n, double base, double denom) {
  return std::pow(n, base - 1.0 / (denom * std::sqrt(std::log(n))));
}

}  // namespace

RebalanceResult rebalance_after_removal(const Digraph& outer, const std::vector<int>& host_vertices,
                                        const PerfectFractionalMatching& x,
                                        const std::vector<int>& removed, int attach) {
  if (!std::is_sorted(host_vertices.begin(), host_vertices.end()) ||
      std::adjacent_find(host_vertices.begin(), host_vertices.end()) != host_vertices.end())
    throw InputError("host vertex list must be strictly ascending");
  std::vector<int> local(outer.n(), -1);
  for (std::size_t k = 0; k < host_vertices.size(); ++k) {
    if (!outer.contains(host_vertices[k])) throw InputError("host vertex outside the outer digraph");
    local[host_vertices[k]] = static_cast<int>(k);
  }
  if (x.n() != static_cast<int>(host_vertices.size()))
    throw InputError("matching host size does not match the host vertex list");
  std::vector<char> gone(outer.n(), 0);
  for (int v : removed) {
    if (!outer.contains(v) || local[v] < 0) throw InputError("removed vertex " + std::to_string(v) + " is not in the host");
    gone[v] = 1;
  }
  if (attach != -1 && !outer.contains(attach)) throw InputError("attach vertex outside the outer digraph");
  const bool fresh = attach != -1 && (local[attach] < 0 || gone[attach]);

  std::vector<int> keep;
  for (int v : host_vertices)
    if (!gone[v]) keep.push_back(v);
  if (fresh) keep.insert(std::upper_bound(keep.begin(), keep.end(), attach), attach);

  RebalanceResult res{x};
  res.vertices = keep;
  InducedSubgraph sub = induced_subgraph(outer, keep);
  auto host = std::make_shared<const Digraph>(std::move(sub.graph));
  require_semidegree(*host, keep);

  int out_u = 0, in_u = 0;
  if (fresh) {
    for (int w : outer.out(attach)) out_u += local[w] >= 0 && w != attach;
    for (int w : outer.in(attach)) in_u += local[w] >= 0 && w != attach;
  }
  std::vector<double> y(host->arc_count());
  for (std::size_t id = 0; id < y.size(); ++id) {
    const Arc a = host->arc(static_cast<int>(id));
    const int s = keep[a.tail], t = keep[a.head];
    if (fresh && s == attach) {
      y[id] = 1.0 / out_u;
    } else if (fresh && t == attach) {
      y[id] = 1.0 / in_u;
    } else {
      const int xid = x.host().arc_id(local[s], local[t]);
      if (xid < 0) throw InputError("matching host is not the subgraph induced by the host vertex list");
      y[id] = x.weight(xid);
    }
  }
  const double n = static_cast<double>(host_vertices.size());
  const double n2 = static_cast<double>(keep.size());
  const double total = std::accumulate(y.begin(), y.end(), 0.0);
  // nothing removed or attached: keep x bit for bit
  const bool identity = removed.empty() && !fresh;
  res.lambda = total > 0.0 && !identity ? n2 / total : 1.0;
  for (double& v : y) v *= res.lambda;
  res.redistribution_steps = identity ? 0 : redistribute_unit_sums(*host, y);
  res.matching = PerfectFractionalMatching(host, std::move(y));

  const double hx = matching_entropy(x);
  res.entropy = matching_entropy(res.matching);
  res.target = n2 > 0 ? (n2 / n) * hx - n2 * std::log2(n / n2) : 0.0;
  res.slack = n >= 3 ? lemma_exponent(n, 0.25, 24.0) : 0.0;
  res.meets_target = res.entropy >= res.target - res.slack;
  res.b_min = normality(res.matching).b_min;

  // Lemma hypotheses, reported only.
  if (n >= 3) {
    const double tol_w = lemma_exponent(n, -0.75, 18.0);
    const double tol_s = lemma_exponent(n, 0.25, 17.0);
    const double frac = static_cast<double>(removed.size()) / n;
    const Digraph& g = x.host();
    double dev_w = 0.0, dev_h = 0.0;
    for (int v = 0; v < g.n(); ++v) {
      for (Side side : {Side::Out, Side::In}) {
        const SideView s{g, side};
        auto nb = s.nbrs(v);
        double mass = 0.0, ent = 0.0;
        for (std::size_t k = 0; k < nb.size(); ++k) {
          if (!gone[host_vertices[nb[k]]]) continue;
          const double xe = x.weight(s.arc(v, k));
          mass += xe;
          ent += xe > 0.0 ? -xe * std::log2(xe) : 0.0;
        }
        dev_w = std::max(dev_w, std::abs(mass - frac));
        dev_h = std::max(dev_h, std::abs(ent - frac * vertex_entropy(x, v, side)));
      }
    }
    if (dev_w > tol_w) res.warnings.push_back("hypothesis (i): weight deviation " + std::to_string(dev_w) + " exceeds " + std::to_string(tol_w));
    if (dev_h > tol_w) res.warnings.push_back("hypothesis (ii): entropy deviation " + std::to_string(dev_h) + " exceeds " + std::to_string(tol_w));
    if (fresh) {
      const double eps = epsilon_of(g).epsilon;
      const double need = (0.5 + eps) * n;
      if (out_u < need || in_u < need) res.warnings.push_back("hypothesis (iii): attach vertex has too few neighbours in the host");
      int hit_out = 0, hit_in = 0;
      for (int w : outer.out(attach)) hit_out += local[w] >= 0 && gone[w] && w != attach;
      for (int w : outer.in(attach)) hit_in += local[w] >= 0 && gone[w] && w != attach;
      const double dev = std::max(std::abs(hit_out - frac * out_u), std::abs(hit_in - frac * in_u));
      if (dev > tol_s) res.warnings.push_back("hypothesis (iv): attach neighbourhood deviation " + std::to_string(dev) + " exceeds " + std::to_string(tol_s));
    }
  }
  return res;
}

MinusSetResult matching_minus_set(const Digraph& g, const std::vector<int>& a, double b) {
  std::vector<char> in_a(g.n(), 0);
  for (int v : a) {
    if (!g.contains(v)) throw InputError("unknown vertex id " + std::to_string(v));
    in_a[v] = 1;
  }
  const double n = g.n();
  const double a_size = std::count(in_a.begin(), in_a.end(), 1);

  const MaxEntropyResult me = max_entropy_matching(g);
  const PerfectFractionalMatching& x = me.matching;
  InducedSubgraph sub = remove_vertices(g, a);
  auto host = std::make_shared<const Digraph>(std::move(sub.graph));
  require_semidegree(*host, sub.new_to_old);

  std::vector<double> y(host->arc_count());
  for (std::size_t id = 0; id < y.size(); ++id) {
    const Arc e = host->arc(static_cast<int>(id));
    y[id] = x.weight(sub.new_to_old[e.tail], sub.new_to_old[e.head]);
  }
  const double total = std::accumulate(y.begin(), y.end(), 0.0);
  MinusSetResult res{PerfectFractionalMatching(std::make_shared<const Digraph>(), {})};
  res.lambda = total > 0.0 ? host->n() / total : 1.0;
  for (double& v : y) v *= res.lambda;
  redistribute_unit_sums(*host, y);
  res.matching = PerfectFractionalMatching(host, std::move(y));
  res.vertices = sub.new_to_old;

  res.h_graph = matching_entropy(x);
  res.entropy = matching_entropy(res.matching);
  const double bx = normality(x).b_min;
  res.b_min = normality(res.matching).b_min;
  res.b_normal = res.b_min <= b;
  // x is bx-normal, i.e. (b/2)-normal for b = 2 bx in the lemma's accounting
  res.target = res.h_graph - 2.0 * a_size * std::log2(n) - a_size * (2.0 * bx) * (2.0 * bx);
  res.meets_target = res.entropy >= res.target;
  if (n >= 4 && a_size > n / (std::log2(n) * std::log2(n)))
    res.warnings.push_back("|A| exceeds n / log^2 n");
  if (bx > b / 2.0)
    res.warnings.push_back("max-entropy matching is only " + std::to_string(bx) + "-normal, above b/2");
  return res;
}

}  // namespace treecount
