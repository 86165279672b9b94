#include "treecount/graph.hpp"

#include <algorithm>
#include <string>

#include "treecount/errors.hpp"

namespace treecount {

namespace {

void check_pair(int n, int u, int v, const char* what) {
  if (u < 0 || u >= n || v < 0 || v >= n)
    throw InputError(std::string(what) + " (" + std::to_string(u) + "," + std::to_string(v) +
                     ") has a vertex id outside 0.." + std::to_string(n - 1));
  if (u == v) throw InputError(std::string(what) + " is a loop at vertex " + std::to_string(u));
}

}  // namespace

Digraph::Digraph(int n, std::vector<std::pair<int, int>> arcs) : n_(n) {
  if (n < 0) throw InputError("negative vertex count");
  for (auto [u, v] : arcs) check_pair(n, u, v, "arc");
  std::sort(arcs.begin(), arcs.end());
  auto dup = std::adjacent_find(arcs.begin(), arcs.end());
  if (dup != arcs.end())
    throw InputError("duplicate arc (" + std::to_string(dup->first) + "," +
                     std::to_string(dup->second) + ")");

  const std::size_t m = arcs.size();
  out_begin_.assign(n + 1, 0);
  in_begin_.assign(n + 1, 0);
  heads_.resize(m);
  arc_tail_.resize(m);
  for (auto [u, v] : arcs) {
    ++out_begin_[u + 1];
    ++in_begin_[v + 1];
  }
  for (int v = 0; v < n; ++v) {
    out_begin_[v + 1] += out_begin_[v];
    in_begin_[v + 1] += in_begin_[v];
  }
  tails_.resize(m);
  in_ids_.resize(m);
  std::vector<int> fill(in_begin_.begin(), in_begin_.end() - 1);
  for (std::size_t id = 0; id < m; ++id) {
    auto [u, v] = arcs[id];
    heads_[id] = v;
    arc_tail_[id] = u;
    // arcs are sorted by tail, so each in-list comes out sorted by tail too
    tails_[fill[v]] = u;
    in_ids_[fill[v]] = static_cast<int>(id);
    ++fill[v];
  }
}

int Digraph::arc_id(int u, int v) const {
  if (!contains(u) || !contains(v)) return -1;
  auto row = out(u);
  auto it = std::lower_bound(row.begin(), row.end(), v);
  if (it == row.end() || *it != v) return -1;
  return out_begin_[u] + static_cast<int>(it - row.begin());
}

std::vector<Arc> Digraph::arcs() const {
  std::vector<Arc> r(arc_count());
  for (std::size_t id = 0; id < r.size(); ++id) r[id] = arc(static_cast<int>(id));
  return r;
}

Graph::Graph(int n, std::vector<std::pair<int, int>> edges) : n_(n) {
  if (n < 0) throw InputError("negative vertex count");
  for (auto& [u, v] : edges) {
    check_pair(n, u, v, "edge");
    if (u > v) std::swap(u, v);
  }
  std::sort(edges.begin(), edges.end());
  auto dup = std::adjacent_find(edges.begin(), edges.end());
  if (dup != edges.end())
    throw InputError("duplicate edge {" + std::to_string(dup->first) + "," +
                     std::to_string(dup->second) + "}");
  edges_ = std::move(edges);

  begin_.assign(n + 1, 0);
  for (auto [u, v] : edges_) {
    ++begin_[u + 1];
    ++begin_[v + 1];
  }
  for (int v = 0; v < n; ++v) begin_[v + 1] += begin_[v];
  adj_.resize(2 * edges_.size());
  std::vector<int> fill(begin_.begin(), begin_.end() - 1);
  for (auto [u, v] : edges_) {
    adj_[fill[u]++] = v;
    adj_[fill[v]++] = u;
  }
  for (int v = 0; v < n; ++v) std::sort(adj_.begin() + begin_[v], adj_.begin() + begin_[v + 1]);
}

bool Graph::has_edge(int u, int v) const {
  if (u < 0 || u >= n_ || v < 0 || v >= n_) return false;
  auto row = neighbours(u);
  return std::binary_search(row.begin(), row.end(), v);
}

int Graph::min_degree() const {
  int best = n_ == 0 ? 0 : degree(0);
  for (int v = 1; v < n_; ++v) best = std::min(best, degree(v));
  return best;
}

int Graph::max_degree() const {
  int best = 0;
  for (int v = 0; v < n_; ++v) best = std::max(best, degree(v));
  return best;
}

bool BipartiteDouble::adjacent(int i, int j) const {
  if (i < 0 || i >= n) return false;
  const auto& row = left_adj[i];
  return std::binary_search(row.begin(), row.end(), j);
}

std::vector<std::vector<int>> BipartiteDouble::biadjacency() const {
  std::vector<std::vector<int>> m(n, std::vector<int>(n, 0));
  for (const auto& e : edges) m[e.tail][e.head] = 1;
  return m;
}

int min_semidegree(const Digraph& g) {
  if (g.n() == 0) return 0;
  int best = g.out_degree(0);
  for (int v = 0; v < g.n(); ++v) best = std::min({best, g.out_degree(v), g.in_degree(v)});
  return best;
}

BipartiteDouble to_bipartite(const Digraph& g) {
  BipartiteDouble b;
  b.n = g.n();
  b.edges = g.arcs();
  b.left_adj.resize(g.n());
  b.right_adj.resize(g.n());
  for (int v = 0; v < g.n(); ++v) {
    auto o = g.out(v);
    auto i = g.in(v);
    b.left_adj[v].assign(o.begin(), o.end());
    b.right_adj[v].assign(i.begin(), i.end());
  }
  return b;
}

Digraph double_orient(const Graph& g) {
  std::vector<std::pair<int, int>> arcs;
  arcs.reserve(2 * g.edge_count());
  for (auto [u, v] : g.edges()) {
    arcs.emplace_back(u, v);
    arcs.emplace_back(v, u);
  }
  return Digraph(g.n(), std::move(arcs));
}

InducedSubgraph induced_subgraph(const Digraph& g, const std::vector<int>& keep) {
  InducedSubgraph r;
  r.old_to_new.assign(g.n(), -1);
  for (int v : keep) {
    if (!g.contains(v)) throw InputError("unknown vertex id " + std::to_string(v));
    r.old_to_new[v] = 0;
  }
  for (int v = 0; v < g.n(); ++v) {
    if (r.old_to_new[v] < 0) continue;
    r.old_to_new[v] = static_cast<int>(r.new_to_old.size());
    r.new_to_old.push_back(v);
  }
  std::vector<std::pair<int, int>> arcs;
  for (int u : r.new_to_old)
    for (int w : g.out(u))
      if (r.old_to_new[w] >= 0) arcs.emplace_back(r.old_to_new[u], r.old_to_new[w]);
  r.graph = Digraph(static_cast<int>(r.new_to_old.size()), std::move(arcs));
  return r;
}

InducedSubgraph remove_vertices(const Digraph& g, const std::vector<int>& s) {
  std::vector<char> drop(g.n(), 0);
  for (int v : s) {
    if (!g.contains(v)) throw InputError("unknown vertex id " + std::to_string(v));
    drop[v] = 1;
  }
  std::vector<int> keep;
  for (int v = 0; v < g.n(); ++v)
    if (!drop[v]) keep.push_back(v);
  return induced_subgraph(g, keep);
}

EpsilonWitness epsilon_of(const Digraph& g) {
  if (g.n() == 0) throw InputError("epsilon of the empty digraph is undefined");
  EpsilonWitness w;
  w.n = g.n();
  w.min_semidegree = min_semidegree(g);
  w.epsilon = static_cast<double>(2 * w.min_semidegree - w.n) / (2.0 * w.n);
  return w;
}

Digraph complete_digraph(int n) {
  std::vector<std::pair<int, int>> arcs;
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v)
      if (u != v) arcs.emplace_back(u, v);
  return Digraph(n, std::move(arcs));
}

Graph complete_graph(int n) {
  std::vector<std::pair<int, int>> edges;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) edges.emplace_back(u, v);
  return Graph(n, std::move(edges));
}

Digraph directed_cycle(int n) {
  std::vector<std::pair<int, int>> arcs;
  for (int v = 0; v < n; ++v) arcs.emplace_back(v, (v + 1) % n);
  return Digraph(n, std::move(arcs));
}

}  // namespace treecount
