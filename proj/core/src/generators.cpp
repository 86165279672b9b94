#include "treecount/generators.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "treecount/errors.hpp"

namespace treecount {

namespace {

double default_density(int n, int min_deg) {
  if (n <= 1) return 1.0;
  // smallest p whose binomial degree sits three standard deviations above min_deg
  const double m = n - 1;
  for (int k = 1; k < 1000; ++k) {
    const double p = k / 1000.0;
    if (m * p - 3.0 * std::sqrt(m * p * (1.0 - p)) >= min_deg) return p;
  }
  return 1.0;
}

void shuffle(std::vector<int>& v, CounterRng& rng) {
  for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[rng.below(i)]);
}

}  // namespace

Digraph random_dense_digraph(int n, int min_semi, CounterRng& rng, double p, int max_attempts) {
  if (n < 1) throw InputError("random digraph needs n >= 1");
  if (min_semi > n - 1) throw InputError("minimum semidegree above n - 1");
  if (p <= 0.0) p = default_density(n, min_semi);
  for (int attempt = 0; attempt < max_attempts; ++attempt) {
    std::vector<std::pair<int, int>> arcs;
    for (int u = 0; u < n; ++u)
      for (int v = 0; v < n; ++v)
        if (u != v && rng.uniform() < p) arcs.emplace_back(u, v);
    Digraph g(n, std::move(arcs));
    if (min_semidegree(g) >= min_semi) return g;
  }
  throw ProcedureFailure("no digraph with minimum semidegree " + std::to_string(min_semi) + " after " +
                         std::to_string(max_attempts) + " draws");
}

Graph random_dense_graph(int n, int min_degree, CounterRng& rng, double p, int max_attempts) {
  if (n < 1) throw InputError("random graph needs n >= 1");
  if (min_degree > n - 1) throw InputError("minimum degree above n - 1");
  if (p <= 0.0) p = default_density(n, min_degree);
  for (int attempt = 0; attempt < max_attempts; ++attempt) {
    std::vector<std::pair<int, int>> edges;
    for (int u = 0; u < n; ++u)
      for (int v = u + 1; v < n; ++v)
        if (rng.uniform() < p) edges.emplace_back(u, v);
    Graph g(n, std::move(edges));
    if (n == 1 || g.min_degree() >= min_degree) return g;
  }
  throw ProcedureFailure("no graph with minimum degree " + std::to_string(min_degree) + " after " +
                         std::to_string(max_attempts) + " draws");
}

RootedOrientedTree random_tree(int n, int max_degree, CounterRng& rng, bool orient) {
  if (n < 1) throw InputError("random tree needs n >= 1");
  if (max_degree < 2 && n > 2) throw InputError("random tree needs max_degree >= 2");
  std::vector<int> degree(n, 0);
  std::vector<int> open{0};  // vertices that can still take a neighbour
  std::vector<Arc> arcs;
  for (int v = 1; v < n; ++v) {
    const std::size_t k = rng.below(open.size());
    const int p = open[k];
    const bool down = !orient || rng.below(2) == 0;
    arcs.push_back(down ? Arc{p, v} : Arc{v, p});
    if (++degree[p] >= max_degree) {
      open[k] = open.back();
      open.pop_back();
    }
    ++degree[v];
    if (degree[v] < max_degree) open.push_back(v);
  }
  std::vector<int> label(n);
  std::iota(label.begin(), label.end(), 0);
  shuffle(label, rng);
  for (Arc& a : arcs) a = {label[a.tail], label[a.head]};
  return RootedOrientedTree::from_arcs(n, label[0], arcs);
}

RootedOrientedTree random_orientation(const RootedOrientedTree& t, CounterRng& rng) {
  std::vector<EdgeDir> dir(t.n(), EdgeDir::Down);
  for (int v = 0; v < t.n(); ++v)
    if (t.parent(v) >= 0) dir[v] = rng.below(2) ? EdgeDir::Up : EdgeDir::Down;
  return RootedOrientedTree(t.parents(), std::move(dir));
}

RootedOrientedTree path_tree(int n) {
  if (n < 1) throw InputError("path needs n >= 1");
  std::vector<int> parent(n);
  for (int v = 0; v < n; ++v) parent[v] = v - 1;
  return RootedOrientedTree(std::move(parent), std::vector<EdgeDir>(n, EdgeDir::Down));
}

RootedOrientedTree star_tree(int n) {
  if (n < 1) throw InputError("star needs n >= 1");
  std::vector<int> parent(n, 0);
  parent[0] = -1;
  return RootedOrientedTree(std::move(parent), std::vector<EdgeDir>(n, EdgeDir::Down));
}

RootedOrientedTree complete_binary_tree(int depth) {
  if (depth < 0 || depth > 24) throw InputError("binary tree depth out of range");
  const int n = (1 << (depth + 1)) - 1;
  std::vector<int> parent(n);
  for (int v = 0; v < n; ++v) parent[v] = v == 0 ? -1 : (v - 1) / 2;
  return RootedOrientedTree(std::move(parent), std::vector<EdgeDir>(n, EdgeDir::Down));
}

Graph cycle_graph(int n) {
  if (n < 3) throw InputError("cycle needs n >= 3");
  std::vector<std::pair<int, int>> edges;
  for (int v = 0; v < n; ++v) edges.emplace_back(v, (v + 1) % n);
  return Graph(n, std::move(edges));
}

}  // namespace treecount
