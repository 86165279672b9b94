#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <thread>

#include "treecount/errors.hpp"
#include "treecount/random_embed.hpp"

namespace treecount {

namespace {

Side side_of(EdgeDir d) { return d == EdgeDir::Down ? Side::Out : Side::In; }

// Draws a neighbour of v on the given side with probability equal to the arc
// weight. Returns (vertex, weight).
std::pair<int, double> step(const PerfectFractionalMatching& x, int v, Side side, CounterRng& rng) {
  const Digraph& g = x.host();
  std::span<const int> nbrs = side == Side::Out ? g.out(v) : g.in(v);
  auto weight_at = [&](std::size_t k) {
    return side == Side::Out ? x.weight(g.out_arc_begin(v) + static_cast<int>(k)) : x.weight(g.in_arc_ids(v)[k]);
  };
  double total = 0.0;
  for (std::size_t k = 0; k < nbrs.size(); ++k) total += weight_at(k);
  if (!(total > 0.0))
    throw ProcedureFailure("vertex " + std::to_string(v) + " has no positive " +
                           (side == Side::Out ? "out" : "in") + "-weight to sample from");
  const double u = rng.uniform() * total;
  double acc = 0.0;
  int last = -1;
  for (std::size_t k = 0; k < nbrs.size(); ++k) {
    const double w = weight_at(k);
    if (w <= 0.0) continue;
    acc += w;
    last = static_cast<int>(k);
    if (u < acc) return {nbrs[k], w};
  }
  return {nbrs[last], weight_at(last)};
}

void check_start(const PerfectFractionalMatching& x, int start) {
  if (start >= x.n()) throw InputError("start vertex " + std::to_string(start) + " outside the host");
  if (x.n() == 0) throw InputError("cannot sample in an empty host");
}

std::vector<double> start_row(int n, int start) {
  std::vector<double> row(n, start < 0 ? 1.0 / n : 0.0);
  if (start >= 0) row[start] = 1.0;
  return row;
}

std::vector<double> push(const PerfectFractionalMatching& x, const std::vector<double>& from, EdgeDir d) {
  const Digraph& g = x.host();
  std::vector<double> to(g.n(), 0.0);
  for (std::size_t id = 0; id < g.arc_count(); ++id) {
    const Arc a = g.arc(static_cast<int>(id));
    const double w = x.weight(static_cast<int>(id));
    if (d == EdgeDir::Down) {
      to[a.head] += from[a.tail] * w;
    } else {
      to[a.tail] += from[a.head] * w;
    }
  }
  return to;
}

}  // namespace

Realisation sample_tree(const PerfectFractionalMatching& x, const RootedOrientedTree& t, int start, CounterRng& rng) {
  check_start(x, start);
  Realisation r;
  r.seed = rng.seed();
  r.stream = rng.stream();
  const auto& order = t.bfs();
  r.images.resize(order.size());
  r.images[0] = start >= 0 ? start : static_cast<int>(rng.below(static_cast<std::uint64_t>(x.n())));
  for (std::size_t i = 1; i < order.size(); ++i) {
    const int c = order[i];
    const int from = r.images[t.bfs_index(t.parent(c))];
    auto [w, weight] = step(x, from, side_of(t.dir(c)), rng);
    r.images[i] = w;
    r.log_prob += std::log2(weight);
  }
  r.self_avoiding = is_self_avoiding(r.images);
  return r;
}

Realisation sample_tree(const PerfectFractionalMatching& x, const RootedOrientedTree& t, int start,
                        std::uint64_t seed) {
  CounterRng rng(seed, 0);
  return sample_tree(x, t, start, rng);
}

std::vector<Realisation> sample_batch(const PerfectFractionalMatching& x, const RootedOrientedTree& t, int start,
                                      std::uint64_t count, std::uint64_t seed, int workers) {
  check_start(x, start);
  workers = std::max(1, workers);
  std::vector<Realisation> out(count);
  auto run = [&](int w) {
    for (std::uint64_t i = static_cast<std::uint64_t>(w); i < count; i += static_cast<std::uint64_t>(workers)) {
      CounterRng rng(seed, i);
      out[i] = sample_tree(x, t, start, rng);
      out[i].worker = w;
    }
  };
  if (workers == 1 || count < 2) {
    run(0);
    return out;
  }
  std::vector<std::thread> pool;
  std::exception_ptr failure;
  std::mutex failure_lock;
  for (int w = 0; w < workers; ++w)
    pool.emplace_back([&, w] {
      try {
        run(w);
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_lock);
        if (!failure) failure = std::current_exception();
      }
    });
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
  return out;
}

double realisation_log_prob(const PerfectFractionalMatching& x, const RootedOrientedTree& t,
                            const std::vector<int>& images) {
  if (images.size() != static_cast<std::size_t>(t.n())) throw InputError("realisation length differs from the tree");
  double lp = 0.0;
  const auto& order = t.bfs();
  for (std::size_t i = 1; i < order.size(); ++i) {
    const int c = order[i];
    const int from = images[t.bfs_index(t.parent(c))];
    const int to = images[i];
    const double w = t.dir(c) == EdgeDir::Down ? x.weight(from, to) : x.weight(to, from);
    if (!(w > 0.0)) return -std::numeric_limits<double>::infinity();
    lp += std::log2(w);
  }
  return lp;
}

std::vector<int> walk_pattern(const PerfectFractionalMatching& x, const std::vector<EdgeDir>& pattern, int start,
                              int steps, CounterRng& rng) {
  if (start < 0) throw InputError("walk needs a start vertex");
  check_start(x, start);
  if (steps < 0) throw InputError("walk needs steps >= 0");
  std::vector<int> walk{start};
  for (int k = 0; k < steps; ++k) {
    const EdgeDir d = pattern.empty() ? EdgeDir::Down : pattern[static_cast<std::size_t>(k) % pattern.size()];
    walk.push_back(step(x, walk.back(), side_of(d), rng).first);
  }
  return walk;
}

MarginalTable marginals(const PerfectFractionalMatching& x, const RootedOrientedTree& t, int start) {
  check_start(x, start);
  MarginalTable m;
  m.rows.resize(t.n());
  m.rows[t.root()] = start_row(x.n(), start);
  const auto& order = t.bfs();
  for (std::size_t i = 1; i < order.size(); ++i) {
    const int c = order[i];
    m.rows[c] = push(x, m.rows[t.parent(c)], t.dir(c));
  }
  return m;
}

std::vector<std::vector<double>> walk_marginals(const PerfectFractionalMatching& x,
                                                const std::vector<EdgeDir>& pattern, int start, int steps) {
  check_start(x, start);
  std::vector<std::vector<double>> rows{start_row(x.n(), start)};
  for (int k = 0; k < steps; ++k) {
    const EdgeDir d = pattern.empty() ? EdgeDir::Down : pattern[static_cast<std::size_t>(k) % pattern.size()];
    rows.push_back(push(x, rows.back(), d));
  }
  return rows;
}

double exact_tree_entropy(const PerfectFractionalMatching& x, const RootedOrientedTree& t, int start) {
  const MarginalTable m = marginals(x, t, start);
  const int n = x.n();
  std::vector<double> h_out(n), h_in(n);
  for (int v = 0; v < n; ++v) {
    h_out[v] = vertex_entropy(x, v, Side::Out);
    h_in[v] = vertex_entropy(x, v, Side::In);
  }
  double h = start < 0 ? std::log2(static_cast<double>(n)) : 0.0;
  for (int c = 0; c < t.n(); ++c) {
    if (t.parent(c) < 0) continue;
    const auto& row = m.rows[t.parent(c)];
    const auto& hv = t.dir(c) == EdgeDir::Down ? h_out : h_in;
    for (int v = 0; v < n; ++v) h += row[v] * hv[v];
  }
  return h;
}

double hr_lower_bound(double m, double n, double h) {
  if (!(n >= 2.0)) throw InputError("entropy lower bound needs n >= 2");
  return (1.0 - 2.0 * std::exp(-std::sqrt(std::log(n)))) * (m / n) * h;
}

bool is_self_avoiding(const std::vector<int>& images) {
  std::vector<int> s = images;
  std::sort(s.begin(), s.end());
  return std::adjacent_find(s.begin(), s.end()) == s.end();
}

double self_avoid_reference_bound(double m, double n, double b) { return 1.0 - m * m * b / n; }

MixingReport mixing_check(const PerfectFractionalMatching& x, const std::vector<EdgeDir>& pattern, int start,
                          int t_min, int t_max) {
  if (t_min < 0 || t_max < t_min) throw InputError("mixing check needs 0 <= t_min <= t_max");
  MixingReport r;
  r.epsilon = epsilon_of(x.host()).epsilon;
  r.b = normality(x).b_min;
  r.hypothesis_holds = r.epsilon > 0.0 && std::isfinite(r.b);
  if (!(r.epsilon > 0.0)) {
    r.note = "host is not an (n, eps)-digraph with eps > 0; bound not asserted";
  } else if (!std::isfinite(r.b)) {
    r.note = "matching has zero-weight arcs; bound not asserted";
  }
  if (r.hypothesis_holds) r.t_admissible = 5.0 + 4.0 * r.b * r.b * std::log2(r.b) / r.epsilon;

  const auto rows = walk_marginals(x, pattern, start, t_max);
  const double n = x.n();
  r.roundoff_floor = 1e-12 * std::max(1.0, n);
  for (int t = t_min; t <= t_max; ++t) {
    double dev = 0.0;
    for (double p : rows[t]) dev = std::max(dev, std::abs(n * p - 1.0));
    r.steps.push_back(t);
    r.deviation.push_back(dev);
    const double bound = r.hypothesis_holds ? std::exp(-r.epsilon * t / (2.0 * r.b * r.b)) : 0.0;
    r.bound.push_back(bound);
    if (r.hypothesis_holds && t >= r.t_admissible) {
      ++r.admissible_count;
      if (dev > std::max(bound, r.roundoff_floor)) r.bound_holds = false;
    }
  }
  return r;
}

}  // namespace treecount
