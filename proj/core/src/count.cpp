#include <algorithm>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

#include <boost/math/special_functions/erf.hpp>

#include "detail/embed_search.hpp"
#include "treecount/count.hpp"
#include "treecount/errors.hpp"
#include "treecount/random_embed.hpp"

namespace treecount {

namespace detail {

EmbedPlan::EmbedPlan(const Digraph& p, int root) {
  const int n = p.n();
  if (n == 0) return;
  if (root < 0 || root >= n) throw InputError("pattern root outside the pattern");
  std::vector<int> pos(n, -1), parent_pos(n, -1);
  std::vector<bool> parent_out(n, true);
  order.push_back(root);
  pos[root] = 0;
  for (std::size_t h = 0; h < order.size(); ++h) {
    const int v = order[h];
    std::vector<std::pair<int, bool>> nb;  // (neighbour, arc v -> neighbour)
    for (int w : p.out(v)) nb.emplace_back(w, true);
    for (int w : p.in(v)) nb.emplace_back(w, false);
    std::sort(nb.begin(), nb.end());
    for (auto [w, out] : nb) {
      if (pos[w] != -1) continue;
      pos[w] = static_cast<int>(order.size());
      parent_pos[w] = static_cast<int>(h);
      parent_out[w] = out;
      order.push_back(w);
    }
  }
  if (static_cast<int>(order.size()) != n) throw InputError("pattern is not weakly connected");
  anchor.resize(n);
  anchor_out.resize(n);
  links.resize(n);
  need_out.resize(n);
  need_in.resize(n);
  for (int k = 0; k < n; ++k) {
    const int v = order[k];
    anchor[k] = parent_pos[v];
    anchor_out[k] = parent_out[v];
    need_out[k] = p.out_degree(v);
    need_in[k] = p.in_degree(v);
    for (int w : p.in(v))
      if (pos[w] < k) links[k].push_back({pos[w], true});
    for (int w : p.out(v))
      if (pos[w] < k) links[k].push_back({pos[w], false});
  }
}

EmbedSearch::EmbedSearch(const Digraph& g, const EmbedPlan& plan, const std::vector<char>& allowed,
                         std::atomic<std::uint64_t>& nodes, std::uint64_t budget)
    : g_(g), plan_(plan), allowed_(allowed), nodes_(nodes), budget_(budget),
      img_(plan.size(), -1), used_(g.n(), 0) {}

bool EmbedSearch::usable(int w, int k) const {
  if (used_[w]) return false;
  if (!allowed_.empty() && !allowed_[w]) return false;
  if (g_.out_degree(w) < plan_.need_out[k] || g_.in_degree(w) < plan_.need_in[k]) return false;
  for (const auto& l : plan_.links[k]) {
    const int e = img_[l.pos];
    if (l.from_earlier ? !g_.has_arc(e, w) : !g_.has_arc(w, e)) return false;
  }
  return true;
}

// Returns false when the search must stop (budget or first hit).
bool EmbedSearch::extend(int k) {
  if (nodes_.fetch_add(1, std::memory_order_relaxed) >= budget_) {
    exhausted_ = true;
    return false;
  }
  if (k == plan_.size()) {
    ++count_;
    if (stop_) {
      found_.assign(plan_.size(), -1);
      for (int i = 0; i < plan_.size(); ++i) found_[plan_.order[i]] = img_[i];
      return false;
    }
    return true;
  }
  const int base = img_[plan_.anchor[k]];
  const auto cands = plan_.anchor_out[k] ? g_.out(base) : g_.in(base);
  for (int w : cands) {
    if (!usable(w, k)) continue;
    img_[k] = w;
    used_[w] = 1;
    const bool go_on = extend(k + 1);
    used_[w] = 0;
    if (!go_on) return false;
  }
  return true;
}

std::uint64_t EmbedSearch::run(int first, bool stop_at_first) {
  count_ = 0;
  stop_ = stop_at_first;
  found_.clear();
  if (plan_.size() == 0) return 0;
  if (!usable(first, 0)) return 0;
  img_[0] = first;
  used_[first] = 1;
  extend(1);
  used_[first] = 0;
  return count_;
}

}  // namespace detail

Digraph tree_digraph(const RootedOrientedTree& t) {
  std::vector<std::pair<int, int>> arcs;
  for (const Arc& a : t.arcs()) arcs.emplace_back(a.tail, a.head);
  return Digraph(t.n(), std::move(arcs));
}

CountReport count_copies_brute(const Digraph& g, const Digraph& pattern, int pattern_root, const BruteOptions& opt) {
  if (pattern.n() > g.n())
    throw InputError("pattern has " + std::to_string(pattern.n()) + " vertices, host only " + std::to_string(g.n()));
  if (pattern.n() == 0) throw InputError("empty pattern");
  if (opt.root_image >= g.n()) throw InputError("root image outside the host");
  const detail::EmbedPlan plan(pattern, pattern_root);

  std::vector<int> firsts;
  if (opt.root_image >= 0) {
    firsts.push_back(opt.root_image);
  } else {
    for (int v = 0; v < g.n(); ++v) firsts.push_back(v);
  }
  const int workers = std::clamp(opt.workers, 1, static_cast<int>(firsts.size()));
  std::vector<std::uint64_t> counts(firsts.size(), 0);
  std::atomic<std::uint64_t> nodes{0};
  std::atomic<bool> exhausted{false};
  const std::vector<char> all;
  auto run = [&](int w) {
    detail::EmbedSearch search(g, plan, all, nodes, opt.node_budget);
    for (std::size_t i = static_cast<std::size_t>(w); i < firsts.size(); i += static_cast<std::size_t>(workers)) {
      counts[i] = search.run(firsts[i], false);
      if (search.exhausted()) {
        exhausted = true;
        return;
      }
    }
  };
  if (workers == 1) {
    run(0);
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(run, w);
    for (auto& th : pool) th.join();
  }

  CountReport r;
  r.method = "brute";
  r.rooted = opt.root_image >= 0;
  r.root_image = opt.root_image;
  r.valid = !exhausted;
  r.nodes = std::min<std::uint64_t>(nodes.load(), opt.node_budget);
  for (std::uint64_t c : counts) r.labelled += c;
  r.unlabelled = r.labelled;
  return r;
}

CountReport count_copies_brute(const Digraph& g, const RootedOrientedTree& t, const BruteOptions& opt) {
  CountReport r = count_copies_brute(g, tree_digraph(t), t.root(), opt);
  r.aut = automorphism_count(t, r.rooted);
  r.unlabelled = r.labelled / r.aut;
  return r;
}

BigInt pattern_automorphisms(const Digraph& pattern) {
  const CountReport r = count_copies_brute(pattern, pattern, 0);
  if (!r.valid) throw ProcedureFailure("automorphism search ran out of budget");
  return r.labelled;
}

CountReport estimate_copies(const PerfectFractionalMatching& x, const RootedOrientedTree& t,
                            const EstimatorOptions& opt) {
  if (opt.samples < 1) throw InputError("estimator needs at least one sample");
  if (t.n() > x.n()) throw InputError("tree larger than the host");
  if (!(opt.confidence > 0.0 && opt.confidence < 1.0)) throw InputError("confidence must lie in (0, 1)");
  for (std::size_t id = 0; id < x.weights().size(); ++id)
    if (!(x.weight(static_cast<int>(id)) > 0.0)) {
      const Arc a = x.host().arc(static_cast<int>(id));
      throw InputError("arc " + std::to_string(a.tail) + "->" + std::to_string(a.head) +
                       " has weight 0; the estimator would be biased");
    }
  if (opt.root_image >= x.n()) throw InputError("root image outside the host");

  const int workers = std::max(1, opt.workers);
  const double scale = opt.root_image >= 0 ? 1.0 : static_cast<double>(x.n());
  std::vector<double> value(opt.samples, 0.0);
  auto run = [&](int w) {
    for (std::uint64_t i = static_cast<std::uint64_t>(w); i < opt.samples; i += static_cast<std::uint64_t>(workers)) {
      CounterRng rng(opt.seed, i);
      const Realisation r = sample_tree(x, t, opt.root_image, rng);
      value[i] = r.self_avoiding ? scale * std::exp2(-r.log_prob) : 0.0;
    }
  };
  if (workers == 1) {
    run(0);
  } else {
    std::vector<std::thread> pool;
    std::exception_ptr failure;
    std::mutex lock;
    for (int w = 0; w < workers; ++w)
      pool.emplace_back([&, w] {
        try {
          run(w);
        } catch (...) {
          std::lock_guard<std::mutex> g(lock);
          if (!failure) failure = std::current_exception();
        }
      });
    for (auto& th : pool) th.join();
    if (failure) std::rethrow_exception(failure);
  }

  // Summation in index order keeps the result independent of the worker count.
  double mean = 0.0, m2 = 0.0;
  std::uint64_t k = 0;
  for (double v : value) {
    ++k;
    const double d = v - mean;
    mean += d / static_cast<double>(k);
    m2 += d * (v - mean);
  }
  const double var = opt.samples > 1 ? m2 / static_cast<double>(opt.samples - 1) : 0.0;

  CountReport r;
  r.method = "estimator";
  r.rooted = opt.root_image >= 0;
  r.root_image = opt.root_image;
  r.samples = opt.samples;
  r.estimate = mean;
  r.std_error = std::sqrt(var / static_cast<double>(opt.samples));
  // two-sided normal quantile
  const double z = std::sqrt(2.0) * boost::math::erf_inv(opt.confidence);
  r.ci = ConfidenceInterval{mean - z * r.std_error, mean + z * r.std_error, opt.confidence};
  r.labelled = BigInt(std::floor(std::max(0.0, mean) + 0.5));
  r.aut = automorphism_count(t, r.rooted);
  r.unlabelled = BigInt(std::floor(std::max(0.0, mean) / r.aut.convert_to<double>() + 0.5));
  return r;
}

}  // namespace treecount
