#include <algorithm>
#include <cmath>
#include <numeric>

#include "treecount/errors.hpp"
#include "treecount/tree.hpp"

namespace treecount {

namespace {

constexpr double kPowerGuard = 1e-9;

int resolve_delta(const RootedOrientedTree& t, int max_degree) {
  return std::max({2, t.max_degree(), max_degree});
}

// Smallest m >= 1 with m >= (ell + m)^(1/4) + extra.
int quarter_floor(long long ell, int extra) {
  int m = 1;
  while (static_cast<double>(m) + kPowerGuard < std::pow(static_cast<double>(ell + m), 0.25) + extra) ++m;
  return m;
}

bool in_window(double size, double lo, double hi) {
  return size + kPowerGuard >= lo && size <= hi + kPowerGuard;
}

// Deepest-first greedy shared by both decompositions. Pieces come out in
// construction order (deepest roots first); each is a vertex list whose first
// entry is the piece root.
class GreedyCutter {
 public:
  explicit GreedyCutter(const RootedOrientedTree& t)
      : t_(t), removed_(t.n(), 0), size_(t.n()), order_(t.n()) {
    for (int v = 0; v < t.n(); ++v) size_[v] = t.subtree_size(v);
    std::iota(order_.begin(), order_.end(), 0);
    std::sort(order_.begin(), order_.end(), [&](int a, int b) {
      if (t.depth(a) != t.depth(b)) return t.depth(a) > t.depth(b);
      return a < b;
    });
  }

  int remaining() const { return size_[t_.root()]; }

  // Deepest live vertex whose live subtree has at least m vertices. Sizes only
  // shrink and m never decreases, so a skipped vertex never qualifies again.
  int next(int m) {
    while (cursor_ < order_.size()) {
      const int v = order_[cursor_];
      if (!removed_[v] && size_[v] >= m) return v;
      ++cursor_;
    }
    return -1;
  }

  std::vector<int> cut(int y) {
    std::vector<int> piece{y};
    for (std::size_t h = 0; h < piece.size(); ++h)
      for (int c : t_.children(piece[h]))
        if (!removed_[c]) piece.push_back(c);
    for (int v : piece) removed_[v] = 1;
    const int k = static_cast<int>(piece.size());
    for (int a = t_.parent(y); a >= 0; a = t_.parent(a)) size_[a] -= k;
    size_[y] = 0;
    return piece;
  }

  std::vector<int> rest() { return cut(t_.root()); }

 private:
  const RootedOrientedTree& t_;
  std::vector<char> removed_;
  std::vector<int> size_;
  std::vector<int> order_;
  std::size_t cursor_ = 0;
};

// Both lists are vertex sets; the result keeps the root of `upper` first.
std::vector<int> merge_pieces(std::vector<int> upper, const std::vector<int>& lower) {
  upper.insert(upper.end(), lower.begin(), lower.end());
  return upper;
}

std::vector<int> tin_tout(const RootedOrientedTree& t, std::vector<int>& tout) {
  std::vector<int> tin(t.n(), 0);
  tout.assign(t.n(), 0);
  int clock = 0;
  std::vector<std::pair<int, std::size_t>> stack{{t.root(), 0}};
  tin[t.root()] = clock++;
  while (!stack.empty()) {
    auto& [v, k] = stack.back();
    auto ch = t.children(v);
    if (k < ch.size()) {
      const int c = ch[k++];
      tin[c] = clock++;
      stack.emplace_back(c, 0);
    } else {
      tout[v] = clock;
      stack.pop_back();
    }
  }
  return tin;
}

}  // namespace

std::vector<Subtree> tree_partition(const RootedOrientedTree& t, int size_floor, int max_degree) {
  if (size_floor < 1) throw InputError("partition size floor must be at least 1");
  if (size_floor > t.n()) throw InputError("partition size floor exceeds the tree size");
  (void)resolve_delta(t, max_degree);
  GreedyCutter cutter(t);
  std::vector<std::vector<int>> built;
  while (cutter.remaining() > 0) {
    if (cutter.remaining() < size_floor) {
      built.back() = merge_pieces(cutter.rest(), built.back());
      break;
    }
    built.push_back(cutter.cut(cutter.next(size_floor)));
  }
  std::reverse(built.begin(), built.end());
  std::vector<Subtree> pieces;
  pieces.reserve(built.size());
  for (const auto& vs : built) pieces.push_back(make_subtree(t, vs, vs.front()));
  return pieces;
}

TreeDecomposition quarter_decomposition(const RootedOrientedTree& t, long long n0, int max_degree) {
  const long long n = t.n();
  if (n0 < n) throw InputError("decomposition needs n0 >= |T|");
  if (n >= 2 && static_cast<double>(n0) >= std::pow(static_cast<double>(n), 4.0))
    throw InputError("decomposition needs n0 < |T|^4");
  TreeDecomposition d;
  d.n0 = n0;
  d.delta = resolve_delta(t, max_degree);

  GreedyCutter cutter(t);
  std::vector<std::vector<int>> built;  // cores in construction order
  long long ell = n0 - n + 1;           // n_{i-1} - |core_i| for the piece being cut
  while (cutter.remaining() > 0) {
    const int m = quarter_floor(ell, 0);
    if (cutter.remaining() < m) {
      if (built.empty()) {
        built.push_back(cutter.rest());
      } else {
        built.back() = merge_pieces(cutter.rest(), built.back());
      }
      break;
    }
    const int y = cutter.next(m);
    if (y == t.root() && !built.empty() && cutter.remaining() < quarter_floor(ell, 1)) {
      built.back() = merge_pieces(cutter.rest(), built.back());
      break;
    }
    built.push_back(cutter.cut(y));
    ell += static_cast<long long>(built.back().size());
  }

  // The piece holding the root is not augmented, so it needs one more vertex
  // than the others. Fold further pieces into it until it fits.
  auto root_piece_fits = [&] {
    const double size = static_cast<double>(built.back().size());
    return size + kPowerGuard >= std::pow(static_cast<double>(n0 + 1), 0.25) + 1.0;
  };
  while (built.size() >= 2 && !root_piece_fits()) {
    std::vector<int> top = std::move(built.back());
    built.pop_back();
    built.back() = merge_pieces(std::move(top), built.back());
  }

  std::reverse(built.begin(), built.end());
  const int k = static_cast<int>(built.size());
  std::vector<int> owner(t.n(), -1);
  for (int i = 0; i < k; ++i)
    for (int v : built[i]) owner[v] = i;

  d.residuals.push_back(n0 + 1);
  long long covered = 0;
  for (int i = 0; i < k; ++i) {
    std::vector<int> vs = built[i];
    d.core_size.push_back(static_cast<int>(vs.size()));
    covered += static_cast<long long>(vs.size());
    d.residuals.push_back(n0 - covered + 1);
    if (i == 0) {
      d.pieces.push_back(make_subtree(t, vs, vs.front()));
      d.overlap.push_back(-1);
    } else {
      const int w = t.parent(vs.front());
      vs.push_back(w);
      d.pieces.push_back(make_subtree(t, vs, w));
      d.overlap.push_back(owner[w]);
    }
  }
  if (k == 1) {
    const double nprev = static_cast<double>(d.residuals[0]);
    d.degenerate = !in_window(static_cast<double>(d.pieces[0].size()), std::pow(nprev, 0.25) + 1.0,
                              3.0 * d.delta * std::pow(nprev, 0.25));
  }
  return d;
}

DecompositionCheck check_decomposition(const RootedOrientedTree& t, const TreeDecomposition& d) {
  DecompositionCheck r;
  auto fail = [&](bool& flag, std::string msg) {
    flag = false;
    r.failures.push_back(std::move(msg));
  };
  const int k = static_cast<int>(d.pieces.size());
  if (k == 0) {
    fail(r.coverage, "no pieces");
    return r;
  }
  if (static_cast<int>(d.core_size.size()) != k || static_cast<int>(d.overlap.size()) != k ||
      static_cast<int>(d.residuals.size()) != k + 1) {
    fail(r.coverage, "decomposition arrays have inconsistent lengths");
    return r;
  }

  std::vector<int> core_owner(t.n(), -1);
  for (int i = 0; i < k; ++i) {
    const Subtree& p = d.pieces[i];
    const int skip = i == 0 ? 0 : 1;  // the augmented parent is listed first
    if (p.size() != d.core_size[i] + skip) fail(r.overlap, "piece " + std::to_string(i) + " core size mismatch");
    for (int j = skip; j < p.size(); ++j) {
      const int v = p.vertices[j];
      if (core_owner[v] != -1) fail(r.overlap, "vertex " + std::to_string(v) + " lies in two cores");
      core_owner[v] = i;
    }
  }

  // (i) coverage
  for (int v = 0; v < t.n(); ++v)
    if (core_owner[v] == -1) fail(r.coverage, "vertex " + std::to_string(v) + " not covered");

  // (ii) every piece hangs below its root
  std::vector<int> tout;
  const std::vector<int> tin = tin_tout(t, tout);
  for (int i = 0; i < k; ++i) {
    const int root = d.pieces[i].root;
    for (int v : d.pieces[i].vertices)
      if (tin[v] < tin[root] || tin[v] >= tout[root])
        fail(r.containment, "piece " + std::to_string(i) + " leaves the subtree of its root");
  }

  // (iii) root depths non-decreasing
  for (int i = 1; i < k; ++i)
    if (t.depth(d.pieces[i].root) < t.depth(d.pieces[i - 1].root))
      fail(r.depth_order, "root depth decreases at piece " + std::to_string(i));

  // (iv) piece i >= 2 meets exactly one earlier piece, in its root
  for (int i = 1; i < k; ++i) {
    const Subtree& p = d.pieces[i];
    const int j = core_owner[p.root];
    if (j < 0 || j >= i) {
      fail(r.overlap, "root of piece " + std::to_string(i) + " is not in an earlier core");
      continue;
    }
    if (d.overlap[i] != j) fail(r.overlap, "overlap index of piece " + std::to_string(i) + " is wrong");
    std::vector<char> in_j(t.n(), 0);
    for (int v : d.pieces[j].vertices) in_j[v] = 1;
    int shared = 0;
    for (int v : p.vertices) shared += in_j[v];
    if (shared != 1) fail(r.overlap, "piece " + std::to_string(i) + " shares more than its root");
    for (int v : p.vertices)
      if (v != p.root && core_owner[v] != i)
        fail(r.overlap, "piece " + std::to_string(i) + " reaches into another piece");
  }

  // (v) size window
  if (!d.degenerate) {
    long long covered = 0;
    for (int i = 0; i < k; ++i) {
      const long long expect = d.n0 - covered + 1;
      if (d.residuals[i] != expect) fail(r.window, "residual " + std::to_string(i) + " is wrong");
      const double q = std::pow(static_cast<double>(d.residuals[i]), 0.25);
      const double size = d.pieces[i].size();
      if (!in_window(size, q + 1.0, 3.0 * d.delta * q))
        fail(r.window, "piece " + std::to_string(i) + " has size " + std::to_string(d.pieces[i].size()) +
                           " outside [" + std::to_string(q + 1.0) + ", " + std::to_string(3.0 * d.delta * q) +
                           "]");
      covered += d.core_size[i];
    }
  }
  return r;
}

DecompositionCheck check_partition(const RootedOrientedTree& t, const std::vector<Subtree>& pieces,
                                   int size_floor, int max_degree) {
  DecompositionCheck r;
  auto fail = [&](bool& flag, std::string msg) {
    flag = false;
    r.failures.push_back(std::move(msg));
  };
  const int delta = resolve_delta(t, max_degree);
  std::vector<int> owner(t.n(), -1);
  for (std::size_t i = 0; i < pieces.size(); ++i)
    for (int v : pieces[i].vertices) {
      if (owner[v] != -1) fail(r.overlap, "vertex " + std::to_string(v) + " lies in two pieces");
      owner[v] = static_cast<int>(i);
    }
  for (int v = 0; v < t.n(); ++v)
    if (owner[v] == -1) fail(r.coverage, "vertex " + std::to_string(v) + " not covered");
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    const Subtree& p = pieces[i];
    // connected and hanging below its root: every non-root vertex has its parent inside
    for (int v : p.vertices)
      if (v != p.root && owner[t.parent(v)] != static_cast<int>(i))
        fail(r.containment, "piece " + std::to_string(i) + " is not a subtree below its root");
    if (i > 0) {
      const int up = t.parent(p.root);
      if (up < 0 || owner[up] < 0 || owner[up] >= static_cast<int>(i))
        fail(r.overlap, "prefix up to piece " + std::to_string(i) + " is disconnected");
      if (t.depth(p.root) < t.depth(pieces[i - 1].root))
        fail(r.depth_order, "root depth decreases at piece " + std::to_string(i));
    }
    if (p.size() < size_floor || p.size() > 2 * delta * size_floor)
      fail(r.window, "piece " + std::to_string(i) + " has size " + std::to_string(p.size()));
  }
  return r;
}

}  // namespace treecount
