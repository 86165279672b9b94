#include <bit>
#include <cmath>
#include <limits>

#include "detail/embed_search.hpp"
#include "treecount/count.hpp"
#include "treecount/errors.hpp"

namespace treecount {

namespace {

std::vector<int> members(unsigned mask) {
  std::vector<int> out;
  for (int v = 0; mask; ++v, mask >>= 1)
    if (mask & 1U) out.push_back(v);
  return out;
}

}  // namespace

AbsorbResult absorbing_pair_search(const Digraph& g, const RootedOrientedTree& piece, int anchor, int set_size,
                                   std::uint64_t node_budget) {
  const int n = g.n();
  const int k = piece.n();
  if (n > 12) throw InputError("absorbing pair search is exhaustive and limited to 12 host vertices");
  if (k > n) throw InputError("piece larger than the host");
  if (anchor < 0 || anchor >= k) throw InputError("anchor outside the piece");
  if (set_size < 1 || set_size > k) throw InputError("set size must lie in 1..|piece|");

  const detail::EmbedPlan plan(tree_digraph(piece), anchor);
  std::atomic<std::uint64_t> nodes{0};
  std::vector<char> allowed(n, 0);
  detail::EmbedSearch search(g, plan, allowed, nodes, node_budget);
  AbsorbResult r;

  const unsigned full = (1U << n) - 1U;
  for (unsigned a = 0; a <= full; ++a) {
    if (std::popcount(a) != set_size) continue;
    ++r.sets_checked;
    const unsigned rest = full & ~a;
    for (int v : members(a)) {
      bool every_b = true;
      // all subsets of `rest` with k - set_size elements
      for (unsigned extra = rest;; extra = (extra - 1U) & rest) {
        if (std::popcount(extra) == k - set_size) {
          const unsigned b = a | extra;
          for (int u = 0; u < n; ++u) allowed[u] = static_cast<char>((b >> u) & 1U);
          const bool hit = search.run(v, true) > 0;
          if (search.exhausted()) throw ProcedureFailure("absorbing pair search ran out of budget");
          if (!hit) {
            every_b = false;
            break;
          }
        }
        if (extra == 0) break;
      }
      if (every_b) {
        r.found = true;
        r.set = members(a);
        r.anchor_image = v;
        r.nodes = nodes.load();
        return r;
      }
    }
  }
  r.nodes = nodes.load();
  return r;
}

std::optional<std::vector<int>> find_tree_copy(const Digraph& g, const RootedOrientedTree& t,
                                               const std::vector<char>& allowed,
                                               const std::vector<int>& root_choices, std::uint64_t node_budget) {
  if (!allowed.empty() && static_cast<int>(allowed.size()) != g.n())
    throw InputError("allowed mask does not match the host");
  const detail::EmbedPlan plan(tree_digraph(t), t.root());
  std::atomic<std::uint64_t> nodes{0};
  detail::EmbedSearch search(g, plan, allowed, nodes, node_budget);
  for (int v : root_choices) {
    if (v < 0 || v >= g.n()) throw InputError("root choice outside the host");
    if (search.run(v, true) > 0) return search.found();
    if (search.exhausted()) throw ProcedureFailure("tree copy search ran out of budget");
  }
  return std::nullopt;
}

namespace {

void finish(VerifyReport& r) {
  if (r.count > 0) {
    r.ratio_log2 = log2_big(r.count) - r.bound.log2;
    r.holds = r.ratio_log2 >= 0.0;
  } else {
    r.ratio_log2 = -std::numeric_limits<double>::infinity();
    r.holds = false;
  }
  if (!r.hypothesis_met) {
    r.note = "minimum degree is not above n/2; the theorem does not apply";
  } else if (r.m < r.n) {
    r.note = "tree is not spanning; the comparison is informational";
  }
}

}  // namespace

VerifyReport verify_bound_experiment(const Digraph& g, const RootedOrientedTree& t, double eps, int workers) {
  VerifyReport r;
  r.directed = true;
  r.n = g.n();
  r.m = t.n();
  r.eps = eps;
  r.hypothesis_met = 2 * min_semidegree(g) > g.n();
  try {
    r.h_bits = matching_entropy(max_entropy_matching(g).matching);
  } catch (const ProcedureFailure&) {
    r.h_bits = 0.0;  // no perfect fractional matching
  }
  BruteOptions opt;
  opt.workers = workers;
  const CountReport c = count_copies_brute(g, t, opt);
  if (!c.valid) throw ProcedureFailure("brute-force count ran out of budget");
  r.aut = c.aut;
  r.labelled = c.labelled;
  r.count = c.unlabelled;
  r.bound = directed_lower_bound({static_cast<double>(r.n), r.h_bits, eps, r.aut});
  finish(r);
  return r;
}

VerifyReport verify_bound_experiment(const Graph& g, const Graph& pattern, double eps, int workers) {
  VerifyReport r;
  r.directed = false;
  r.n = g.n();
  r.m = pattern.n();
  r.eps = eps;
  r.hypothesis_met = g.n() > 0 && 2 * g.min_degree() > g.n();
  try {
    r.h_bits = undirected_entropy(g);
  } catch (const ProcedureFailure&) {
    r.h_bits = 0.0;
  }
  const Digraph host = double_orient(g);
  const Digraph pat = double_orient(pattern);
  BruteOptions opt;
  opt.workers = workers;
  const CountReport c = count_copies_brute(host, pat, 0, opt);
  if (!c.valid) throw ProcedureFailure("brute-force count ran out of budget");
  r.aut = pattern_automorphisms(pat);
  r.labelled = c.labelled;
  r.count = c.labelled / r.aut;
  r.bound = undirected_lower_bound(static_cast<double>(r.n), r.h_bits, eps, r.aut);
  finish(r);
  return r;
}

}  // namespace treecount
