#include <algorithm>
#include <cmath>
#include <queue>

#include "treecount/errors.hpp"
#include "treecount/tree.hpp"

namespace treecount {

RootedOrientedTree::RootedOrientedTree() : RootedOrientedTree({-1}, {EdgeDir::Down}) {}

RootedOrientedTree::RootedOrientedTree(std::vector<int> parent, std::vector<EdgeDir> dir)
    : parent_(std::move(parent)), dir_(std::move(dir)) {
  const int n = static_cast<int>(parent_.size());
  if (n == 0) throw InputError("a tree needs at least one vertex");
  if (dir_.size() != parent_.size()) throw InputError("parent and orientation arrays differ in length");
  root_ = -1;
  for (int v = 0; v < n; ++v) {
    if (parent_[v] == -1) {
      if (root_ != -1) throw InputError("tree has two roots (" + std::to_string(root_) + ", " + std::to_string(v) + ")");
      root_ = v;
    } else if (parent_[v] < 0 || parent_[v] >= n || parent_[v] == v) {
      throw InputError("vertex " + std::to_string(v) + " has an invalid parent");
    }
  }
  if (root_ == -1) throw InputError("tree has no root");

  child_begin_.assign(n + 1, 0);
  for (int v = 0; v < n; ++v)
    if (parent_[v] >= 0) ++child_begin_[parent_[v] + 1];
  for (int v = 0; v < n; ++v) child_begin_[v + 1] += child_begin_[v];
  child_.resize(n - 1);
  std::vector<int> fill(child_begin_.begin(), child_begin_.end() - 1);
  for (int v = 0; v < n; ++v)  // ascending v keeps child lists sorted
    if (parent_[v] >= 0) child_[fill[parent_[v]]++] = v;

  bfs_.reserve(n);
  bfs_.push_back(root_);
  depth_.assign(n, 0);
  for (std::size_t head = 0; head < bfs_.size(); ++head) {
    const int v = bfs_[head];
    for (int c : children(v)) {
      depth_[c] = depth_[v] + 1;
      bfs_.push_back(c);
    }
  }
  if (static_cast<int>(bfs_.size()) != n) throw InputError("parent array contains a cycle");
  bfs_pos_.assign(n, 0);
  for (int k = 0; k < n; ++k) bfs_pos_[bfs_[k]] = k;
  size_.assign(n, 1);
  for (int k = n - 1; k > 0; --k) size_[parent_[bfs_[k]]] += size_[bfs_[k]];
}

RootedOrientedTree RootedOrientedTree::from_arcs(int n, int root, const std::vector<Arc>& arcs) {
  if (n < 1) throw InputError("a tree needs at least one vertex");
  if (root < 0 || root >= n) throw InputError("root outside 0.." + std::to_string(n - 1));
  if (static_cast<int>(arcs.size()) != n - 1)
    throw InputError("a tree on " + std::to_string(n) + " vertices has " + std::to_string(n - 1) + " edges");
  std::vector<std::vector<std::pair<int, bool>>> adj(n);  // (neighbour, arc leaves this vertex)
  for (const Arc& a : arcs) {
    if (a.tail < 0 || a.tail >= n || a.head < 0 || a.head >= n || a.tail == a.head)
      throw InputError("invalid tree edge");
    adj[a.tail].emplace_back(a.head, true);
    adj[a.head].emplace_back(a.tail, false);
  }
  std::vector<int> parent(n, -2);
  std::vector<EdgeDir> dir(n, EdgeDir::Down);
  parent[root] = -1;
  std::vector<int> queue{root};
  for (std::size_t h = 0; h < queue.size(); ++h) {
    const int v = queue[h];
    for (auto [w, outgoing] : adj[v]) {
      if (w == parent[v]) continue;
      if (parent[w] != -2) throw InputError("tree edges contain a cycle");
      parent[w] = v;
      dir[w] = outgoing ? EdgeDir::Down : EdgeDir::Up;
      queue.push_back(w);
    }
  }
  if (static_cast<int>(queue.size()) != n) throw InputError("tree edges are not connected");
  return RootedOrientedTree(std::move(parent), std::move(dir));
}

int RootedOrientedTree::max_degree() const {
  int best = 0;
  for (int v = 0; v < n(); ++v) best = std::max(best, degree(v));
  return best;
}

std::vector<Arc> RootedOrientedTree::arcs() const {
  std::vector<Arc> r;
  r.reserve(n() - 1);
  for (int v = 0; v < n(); ++v) {
    if (parent_[v] < 0) continue;
    r.push_back(dir_[v] == EdgeDir::Down ? Arc{parent_[v], v} : Arc{v, parent_[v]});
  }
  return r;
}

RootedOrientedTree RootedOrientedTree::reroot(int new_root) const {
  return from_arcs(n(), new_root, arcs());
}

std::vector<int> bfs_order(const RootedOrientedTree& t) { return t.bfs(); }

Subtree make_subtree(const RootedOrientedTree& t, const std::vector<int>& vertices, int root) {
  std::vector<char> in(t.n(), 0);
  for (int v : vertices) {
    if (v < 0 || v >= t.n()) throw InputError("subtree vertex outside the tree");
    in[v] = 1;
  }
  if (root < 0 || root >= t.n() || !in[root]) throw InputError("subtree root not in the vertex set");
  Subtree s;
  s.root = root;
  s.vertices.push_back(root);
  std::vector<char> seen(t.n(), 0);
  seen[root] = 1;
  std::vector<int> nb;
  for (std::size_t h = 0; h < s.vertices.size(); ++h) {
    const int v = s.vertices[h];
    nb.assign(t.children(v).begin(), t.children(v).end());
    if (t.parent(v) >= 0) nb.push_back(t.parent(v));
    std::sort(nb.begin(), nb.end());
    for (int w : nb)
      if (in[w] && !seen[w]) {
        seen[w] = 1;
        s.vertices.push_back(w);
      }
  }
  std::size_t distinct = 0;
  for (char c : in) distinct += c;
  if (s.vertices.size() != distinct) throw InputError("subtree vertex set is not connected");
  return s;
}

RootedOrientedTree materialize(const RootedOrientedTree& t, const Subtree& s) {
  std::vector<int> local(t.n(), -1);
  for (int k = 0; k < s.size(); ++k) local[s.vertices[k]] = k;
  std::vector<Arc> arcs;
  for (const Arc& a : t.arcs())
    if (local[a.tail] >= 0 && local[a.head] >= 0) arcs.push_back({local[a.tail], local[a.head]});
  return RootedOrientedTree::from_arcs(s.size(), local[s.root], arcs);
}

TrunkSplit split_trunk(const RootedOrientedTree& t, int threshold) {
  if (threshold < 1) throw InputError("trunk threshold must be at least 1");
  if (threshold > t.n()) throw InputError("trunk threshold exceeds the tree size");
  int best = t.root();
  for (int v = 0; v < t.n(); ++v) {
    if (t.subtree_size(v) < threshold) continue;
    if (t.depth(v) > t.depth(best) || (t.depth(v) == t.depth(best) && v < best)) best = v;
  }
  TrunkSplit r;
  r.t_double_prime = best;
  r.branch.root = best;
  r.branch.vertices.push_back(best);
  for (std::size_t h = 0; h < r.branch.vertices.size(); ++h)
    for (int c : t.children(r.branch.vertices[h])) r.branch.vertices.push_back(c);
  if (best == t.root()) {
    r.degenerate = true;
    return r;
  }
  r.t_prime = t.parent(best);
  r.link = t.dir(best);
  std::vector<char> in_branch(t.n(), 0);
  for (int v : r.branch.vertices) in_branch[v] = 1;
  r.trunk.root = t.root();
  for (int v : t.bfs())
    if (!in_branch[v]) r.trunk.vertices.push_back(v);
  return r;
}

AsymptoticParams asymptotic_params(double n, double gamma) {
  if (!(n > 1.0)) throw InputError("asymptotic parameters need n > 1");
  if (!(gamma > 0.0)) throw InputError("asymptotic parameters need gamma > 0");
  AsymptoticParams p;
  p.n = n;
  p.gamma = gamma;
  const double root_ln = std::sqrt(std::log(n));
  p.zeta = 1.0 / root_ln;
  p.delta = std::exp(gamma * root_ln);
  p.alpha = 1.0 / (7000.0 * root_ln);
  p.mu = std::pow(n, -p.alpha);
  p.trunk_threshold = std::pow(n, 1.0 - p.alpha);
  return p;
}

}  // namespace treecount
