#include "treecount/pipeline.hpp"

#include <algorithm>
#include <cmath>

#include "treecount/count.hpp"
#include "treecount/errors.hpp"
#include "treecount/matching.hpp"

namespace treecount {

namespace {

constexpr std::uint64_t kStageStride = 1'000'003;

int local_index(const std::vector<int>& sorted_ids, int v) {
  auto it = std::lower_bound(sorted_ids.begin(), sorted_ids.end(), v);
  return it != sorted_ids.end() && *it == v ? static_cast<int>(it - sorted_ids.begin()) : -1;
}

// Host vertices adjacent to `anchor` so that the tree edge between the trunk
// image and the branch root has the right orientation. link is the
// orientation seen from the trunk side: Down means trunk -> branch.
std::vector<int> linked(const Digraph& g, int anchor, EdgeDir link, bool anchor_is_trunk) {
  const bool out = (link == EdgeDir::Down) == anchor_is_trunk;
  auto nb = out ? g.out(anchor) : g.in(anchor);
  return {nb.begin(), nb.end()};
}

}  // namespace

bool is_valid_embedding(const Digraph& g, const RootedOrientedTree& t, const std::vector<int>& map) {
  if (static_cast<int>(map.size()) != t.n()) return false;
  std::vector<char> used(g.n(), 0);
  for (int v : map) {
    if (!g.contains(v) || used[v]) return false;
    used[v] = 1;
  }
  for (const Arc& a : t.arcs())
    if (!g.has_arc(map[a.tail], map[a.head])) return false;
  return true;
}

PipelineTrace run_pipeline(const Digraph& g, const RootedOrientedTree& t, const PipelineOptions& opt) {
  const int n = g.n();
  if (t.n() > n) throw InputError("tree has " + std::to_string(t.n()) + " vertices, host only " + std::to_string(n));
  if (opt.retry_budget < 1) throw InputError("retry budget must be at least 1");
  if (2 * min_semidegree(g) <= n)
    throw ProcedureFailure("minimum semidegree " + std::to_string(min_semidegree(g)) + " is not above n/2 = " +
                           std::to_string(n / 2.0));

  PipelineTrace tr;
  tr.n = n;
  tr.m = t.n();
  tr.embedding.assign(t.n(), -1);
  if (t.n() == 1) {
    tr.mode = "trivial";
    CounterRng rng(opt.seed, 0);
    tr.embedding[t.root()] = static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
    tr.success = true;
    return tr;
  }
  tr.params = asymptotic_params(static_cast<double>(n), opt.gamma);

  // Trunk and branch.
  const bool absorb = t.n() > opt.absorb_fraction * n;
  Subtree trunk;
  TrunkSplit split;
  if (!absorb) {
    tr.mode = "direct";
    trunk = make_subtree(t, t.bfs(), t.root());
  } else {
    tr.mode = "absorb";
    int threshold = opt.trunk_threshold > 0 ? opt.trunk_threshold
                                             : static_cast<int>(std::ceil(std::sqrt(static_cast<double>(n))));
    threshold = std::clamp(threshold, 1, t.n());
    split = split_trunk(t, threshold);
    while (split.degenerate && threshold > 1) split = split_trunk(t, --threshold);
    tr.trunk_threshold = threshold;
    tr.t_prime = split.t_prime;
    tr.t_double_prime = split.t_double_prime;
    tr.notes.push_back("trunk threshold " + std::to_string(threshold) + " (asymptotic value " +
                       std::to_string(tr.params.trunk_threshold) + ")");
    trunk = make_subtree(t, split.trunk.vertices, split.t_prime);
  }
  const RootedOrientedTree branch_tree = absorb ? materialize(t, split.branch) : RootedOrientedTree();

  // Absorbing set, exhaustively, for tiny hosts.
  std::vector<int> a_set;
  if (absorb && n <= 12) {
    const AbsorbResult ab = absorbing_pair_search(g, branch_tree, 0, branch_tree.n() - 1);
    if (!ab.found) {
      tr.mode = "exhaustive";
      tr.notes.push_back("no absorbing pair; embedding the whole tree by exhaustive search");
      std::vector<int> roots(n);
      for (int v = 0; v < n; ++v) roots[v] = v;
      const auto copy = find_tree_copy(g, t, {}, roots, opt.completion_budget * 20);
      if (!copy) {
        tr.failure = "host contains no copy of the tree";
        return tr;
      }
      tr.embedding = *copy;
      tr.success = is_valid_embedding(g, t, tr.embedding);
      return tr;
    }
    a_set = ab.set;
    tr.absorber = ab.set;
    tr.absorber_anchor = ab.anchor_image;
  } else if (absorb) {
    tr.notes.push_back("host too large for the exhaustive absorber; branch completed by search in the leftover");
  }

  // G_0 = G - A with its matching.
  MinusSetResult g0 = matching_minus_set(g, a_set, opt.b);
  for (auto& w : g0.warnings) tr.notes.push_back("G_0: " + w);
  std::vector<int> host = g0.vertices;
  PerfectFractionalMatching x = g0.matching;

  // Decomposition of the trunk (trunk-local ids follow trunk.vertices).
  const RootedOrientedTree trunk_tree = materialize(t, trunk);
  const long long n0 = static_cast<long long>(host.size());
  TreeDecomposition dec;
  if (trunk_tree.n() == 1 || static_cast<double>(n0) >= std::pow(static_cast<double>(trunk_tree.n()), 4.0)) {
    dec.pieces.push_back(make_subtree(trunk_tree, trunk_tree.bfs(), trunk_tree.root()));
    dec.core_size.push_back(trunk_tree.n());
    dec.residuals = {n0 + 1, n0 - trunk_tree.n() + 1};
    dec.overlap.push_back(-1);
    dec.n0 = n0;
  } else {
    dec = quarter_decomposition(trunk_tree, n0);
  }
  tr.pieces = static_cast<int>(dec.pieces.size());
  tr.thresholds_enforced = thresholds_meaningful(static_cast<double>(n0));
  if (!tr.thresholds_enforced)
    tr.notes.push_back("well-behaved thresholds are vacuous at this size; stages enforce self-avoidance and "
                       "rebalance feasibility, expectedness is reported only");

  std::vector<int> trunk_image(trunk_tree.n(), -1);
  const int k = static_cast<int>(dec.pieces.size());
  for (int i = 0; i < k; ++i) {
    const Subtree& piece = dec.pieces[i];
    const RootedOrientedTree pt = materialize(trunk_tree, piece);
    const bool last = i + 1 == k;
    StageRecord rec;
    rec.piece = i;
    rec.piece_size = piece.size();
    rec.residual = dec.residuals[i];
    rec.host_size = x.n();
    rec.epsilon = epsilon_of(x.host()).epsilon;
    rec.b = normality(x).b_min;
    rec.entropy = matching_entropy(x);
    rec.sum_residual = sum_residual(x.host(), x.weights());

    // Candidate start images (host-local ids); empty means uniform.
    std::vector<int> starts;
    if (i > 0) {
      starts.push_back(local_index(host, trunk_image[piece.root]));
    } else if (tr.absorber_anchor >= 0) {
      for (int w : linked(g, tr.absorber_anchor, split.link, false)) {
        const int l = local_index(host, w);
        if (l >= 0) starts.push_back(l);
      }
      if (starts.empty()) {
        tr.failure = "absorber anchor has no usable neighbour outside A";
        tr.stages.push_back(rec);
        return tr;
      }
    }
    if (!starts.empty() && starts.front() < 0) {
      tr.failure = "stage " + std::to_string(i) + ": piece root image is missing from the host";
      tr.stages.push_back(rec);
      return tr;
    }

    std::string reason = "no attempt";
    bool accepted = false;
    for (int attempt = 0; attempt < opt.retry_budget && !accepted; ++attempt) {
      rec.attempts = attempt + 1;
      CounterRng rng(opt.seed, static_cast<std::uint64_t>(i) * kStageStride + static_cast<std::uint64_t>(attempt));
      int start = -1;
      if (starts.size() == 1) {
        start = starts[0];
      } else if (!starts.empty()) {
        start = starts[rng.below(starts.size())];
      }
      const Realisation r = sample_tree(x, pt, start, rng);
      if (!r.self_avoiding) {
        reason = "realisation not self-avoiding";
        continue;
      }
      std::vector<int> outer_images(r.images.size());
      for (std::size_t j = 0; j < r.images.size(); ++j) outer_images[j] = host[r.images[j]];

      const ExpectednessReport ex =
          expectedness(r.images, g, host, x, well_behaved_thresholds(std::max(2.0, static_cast<double>(x.n()))));
      if (tr.thresholds_enforced && !ex.verdict) {
        reason = "realisation not well-behaved";
        continue;
      }

      // Trunk images of this piece (piece-local j <-> trunk vertex piece.vertices[j]).
      std::vector<int> images_now = trunk_image;
      for (int j = 0; j < pt.n(); ++j) images_now[piece.vertices[j]] = outer_images[pt.bfs_index(j)];

      std::optional<RebalanceResult> next;
      std::vector<int> branch_map;
      if (!last) {
        const int attach = images_now[dec.pieces[i + 1].root];
        try {
          next = rebalance_after_removal(g, host, x, outer_images, attach);
        } catch (const std::exception& e) {
          reason = std::string("rebalance failed: ") + e.what();
          continue;
        }
        if (sum_residual(next->matching.host(), next->matching.weights()) > 1e-6) {
          reason = "rebalanced matching misses the unit sums";
          continue;
        }
      } else if (absorb) {
        // Leftover plus A hosts the branch; its root must link to the image of t'.
        ++tr.completion_attempts;
        std::vector<char> allowed(n, 1);
        for (int v : images_now)
          if (v >= 0) allowed[v] = 0;
        const int tp_image = images_now[trunk_tree.root()];
        std::vector<int> roots;
        if (tr.absorber_anchor >= 0) {
          roots.push_back(tr.absorber_anchor);
        } else {
          for (int w : linked(g, tp_image, split.link, true))
            if (allowed[w]) roots.push_back(w);
        }
        std::optional<std::vector<int>> copy;
        try {
          copy = find_tree_copy(g, branch_tree, allowed, roots, opt.completion_budget);
        } catch (const ProcedureFailure&) {
          reason = "branch completion ran out of budget";
          continue;
        }
        if (!copy) {
          reason = "leftover vertices do not host the branch";
          continue;
        }
        branch_map = *copy;
      }

      // accept
      accepted = true;
      trunk_image = std::move(images_now);
      rec.start_image = outer_images[0];
      rec.images = outer_images;
      rec.log_prob = r.log_prob;
      rec.well_behaved = ex.verdict;
      rec.set_deviation = ex.max_set_deviation;
      rec.weight_deviation = ex.max_weight_deviation;
      if (next) {
        rec.warnings = next->warnings;
        host = next->vertices;
        x = next->matching;
      }
      if (!branch_map.empty())
        for (int j = 0; j < branch_tree.n(); ++j) tr.embedding[split.branch.vertices[j]] = branch_map[j];
    }
    tr.stages.push_back(rec);
    if (!accepted) {
      tr.failure = "stage " + std::to_string(i) + ": retry budget of " + std::to_string(opt.retry_budget) +
                   " exhausted (last: " + reason + ")";
      return tr;
    }
  }

  for (int j = 0; j < trunk_tree.n(); ++j) tr.embedding[trunk.vertices[j]] = trunk_image[j];
  tr.success = is_valid_embedding(g, t, tr.embedding);
  if (!tr.success) tr.failure = "final map is not a valid copy";
  return tr;
}

}  // namespace treecount
