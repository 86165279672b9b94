#include <cmath>
#include <map>
#include <memory>

#include "doctest.h"
#include "oracles.hpp"
#include "treecount/errors.hpp"
#include "treecount/generators.hpp"
#include "treecount/info_theory.hpp"
#include "treecount/random_embed.hpp"

using namespace treecount;

namespace {

PerfectFractionalMatching uniform_on(int n) { return max_entropy_matching(complete_digraph(n)).matching; }

PerfectFractionalMatching forced_cycle(int n) {
  return PerfectFractionalMatching(std::make_shared<const Digraph>(directed_cycle(n)), std::vector<double>(n, 1.0));
}

}  // namespace

TEST_CASE("outcome space of a short path in K3") {
  const PerfectFractionalMatching x = uniform_on(3);
  const RootedOrientedTree p3 = path_tree(3);
  const auto outcomes = oracle::enumerate_outcomes(x.host(), x.weights(), p3, 0);
  REQUIRE(outcomes.size() == 4);
  for (const auto& o : outcomes) CHECK(o.probability == doctest::Approx(0.25));

  std::map<std::vector<int>, int> hist;
  for (std::uint64_t s = 0; s < 4000; ++s) {
    const Realisation r = sample_tree(x, p3, 0, 9000 + s);
    CHECK(r.log_prob == doctest::Approx(-2.0));
    ++hist[r.images];
  }
  CHECK(hist.size() == 4);
  for (const auto& [img, c] : hist) CHECK(std::abs(c - 1000) < 150);
}

TEST_CASE("degenerate realisations") {
  const Realisation single = sample_tree(uniform_on(5), RootedOrientedTree(), 3, 1);
  CHECK(single.images == std::vector<int>{3});
  CHECK(single.log_prob == 0.0);
  CHECK(single.self_avoiding);

  const Realisation walk = sample_tree(forced_cycle(5), path_tree(5), 2, 7);
  CHECK(walk.images == std::vector<int>{2, 3, 4, 0, 1});
  CHECK(walk.log_prob == 0.0);
  CHECK(walk.self_avoiding);

  RootedOrientedTree back({-1, 0, 1}, {EdgeDir::Down, EdgeDir::Up, EdgeDir::Up});
  CHECK(sample_tree(forced_cycle(5), back, 2, 7).images == std::vector<int>{2, 1, 0});
  CHECK_THROWS_AS(sample_tree(uniform_on(4), path_tree(3), 9, 1), InputError);
}

TEST_CASE("log probability replays") {
  CounterRng host_rng(5, 0);
  const PerfectFractionalMatching x = max_entropy_matching(random_dense_digraph(12, 8, host_rng)).matching;
  CounterRng tree_rng(6, 0);
  const RootedOrientedTree t = random_tree(7, 3, tree_rng);
  for (std::uint64_t s = 0; s < 50; ++s) {
    const Realisation r = sample_tree(x, t, -1, s);
    CHECK(realisation_log_prob(x, t, r.images) == doctest::Approx(r.log_prob).epsilon(1e-12));
    CHECK(r.self_avoiding == is_self_avoiding(r.images));
  }
}

TEST_CASE("batches do not depend on the worker count") {
  const PerfectFractionalMatching x = uniform_on(9);
  const RootedOrientedTree t = complete_binary_tree(2);
  const auto one = sample_batch(x, t, -1, 300, 123, 1);
  const auto four = sample_batch(x, t, -1, 300, 123, 4);
  REQUIRE(one.size() == four.size());
  for (std::size_t i = 0; i < one.size(); ++i) {
    CHECK(one[i].images == four[i].images);
    CHECK(one[i].log_prob == four[i].log_prob);
    CHECK(one[i].stream == i);
    CHECK(four[i].worker == static_cast<int>(i % 4));
  }
  CounterRng fifth(123, 5);
  CHECK(one[5].images == sample_tree(x, t, -1, fifth).images);
}

TEST_CASE("marginals") {
  const PerfectFractionalMatching x = uniform_on(4);
  const MarginalTable m = marginals(x, path_tree(2), 0);
  CHECK(m.rows[0][0] == 1.0);
  CHECK(m.rows[1][0] == 0.0);
  for (int v = 1; v < 4; ++v) CHECK(m.rows[1][v] == doctest::Approx(1.0 / 3.0));

  // on K4 the walk from v0 sits at v0 with 1/4 + (3/4)(-1/3)^t
  const auto rows = walk_marginals(x, {EdgeDir::Down}, 0, 6);
  for (int t = 0; t <= 6; ++t) {
    const double back = 0.25 + 0.75 * std::pow(-1.0 / 3.0, t);
    CHECK(rows[t][0] == doctest::Approx(back).epsilon(1e-12));
    for (int v = 1; v < 4; ++v) CHECK(rows[t][v] == doctest::Approx((1.0 - back) / 3.0).epsilon(1e-12));
  }
  double dev4 = 0.0;
  for (double p : rows[4]) dev4 = std::max(dev4, std::abs(p - 0.25));
  CHECK(dev4 == doctest::Approx(0.75 / 81.0));

  const auto cyc = walk_marginals(forced_cycle(5), {EdgeDir::Down}, 1, 7);
  for (int t = 0; t <= 7; ++t) CHECK(cyc[t][(1 + t) % 5] == 1.0);
}

TEST_CASE("exact tree entropy") {
  CounterRng rng(17, 0);
  for (int n = 5; n <= 8; ++n) {
    const PerfectFractionalMatching x = uniform_on(n);
    for (int k = 0; k < 5; ++k) {
      const RootedOrientedTree t = random_tree(2 + static_cast<int>(rng.below(n - 1)), 4, rng);
      const double m = t.n() - 1;
      CHECK(exact_tree_entropy(x, t, 0) == doctest::Approx(m * std::log2(n - 1.0)).epsilon(1e-12));
      CHECK(exact_tree_entropy(x, t, -1) == doctest::Approx(m * std::log2(n - 1.0) + std::log2(n)).epsilon(1e-12));
      CHECK(hr_lower_bound(m, n, matching_entropy(x)) <= exact_tree_entropy(x, t, 0));
    }
  }
  CHECK(exact_tree_entropy(uniform_on(5), RootedOrientedTree(), 2) == 0.0);

  CounterRng host_rng(18, 0);
  const PerfectFractionalMatching y = max_entropy_matching(random_dense_digraph(7, 5, host_rng)).matching;
  const RootedOrientedTree t = random_tree(4, 3, host_rng);
  CHECK(exact_tree_entropy(y, t, 2) ==
        doctest::Approx(oracle::outcome_entropy(oracle::enumerate_outcomes(y.host(), y.weights(), t, 2)))
            .epsilon(1e-10));
}

TEST_CASE("plug-in entropy of sampled stars") {
  CounterRng rng(8, 8);
  const PerfectFractionalMatching x = max_entropy_matching(random_dense_digraph(8, 5, rng)).matching;
  const RootedOrientedTree star = star_tree(4);
  const double exact = exact_tree_entropy(x, star, 0);
  const std::uint64_t samples = 200000;
  std::map<std::vector<int>, std::uint64_t> hist;
  for (const Realisation& r : sample_batch(x, star, 0, samples, 99, 2)) ++hist[r.images];
  std::vector<std::uint64_t> counts;
  double second = 0.0;
  for (const auto& [img, c] : hist) {
    counts.push_back(c);
    const double p = static_cast<double>(c) / samples;
    second += p * std::log2(p) * std::log2(p);
  }
  const double plug = plugin_entropy(counts);
  const double sigma = std::sqrt(std::max(second - plug * plug, 1e-12) / samples);
  CHECK(std::abs(plug - exact) <= 3.0 * sigma + static_cast<double>(counts.size()) / (2.0 * samples * std::log(2.0)));
}

TEST_CASE("self-avoidance against the oracle") {
  const PerfectFractionalMatching x = uniform_on(6);
  const RootedOrientedTree t = path_tree(4);
  const double exact = oracle::self_avoiding_probability(oracle::enumerate_outcomes(x.host(), x.weights(), t, 0));
  CHECK(exact == doctest::Approx(4.0 / 5.0 * 3.0 / 5.0).epsilon(1e-12));
  CHECK(self_avoid_reference_bound(3, 6, 1.2) <= exact);
}

TEST_CASE("expectedness") {
  CounterRng rng(60, 0);
  const Digraph g = random_dense_digraph(20, 13, rng);
  const PerfectFractionalMatching x = max_entropy_matching(g).matching;
  std::vector<int> all(20);
  for (int v = 0; v < 20; ++v) all[v] = v;
  const ExpectednessReport full = expectedness(all, g, all, x, {1e-9, 1e-9});
  CHECK(full.max_set_deviation == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(full.max_weight_deviation <= 1e-9);
  CHECK(full.verdict);
  const ExpectednessReport none = expectedness({}, g, all, x, {1e-9, 1e-9});
  CHECK(none.max_set_deviation == 0.0);
  CHECK(none.verdict);
  CHECK(thresholds_meaningful(std::exp(300.0)));
  CHECK_FALSE(thresholds_meaningful(1e6));
}

TEST_CASE("mixing check") {
  const MixingReport k = mixing_check(uniform_on(10), {EdgeDir::Down, EdgeDir::Up}, 0, 0, 60);
  CHECK(k.hypothesis_holds);
  CHECK(k.admissible_count > 0);
  CHECK(k.bound_holds);
  const MixingReport c = mixing_check(forced_cycle(6), {EdgeDir::Down}, 0, 0, 10);
  CHECK_FALSE(c.hypothesis_holds);
  CHECK_FALSE(c.note.empty());
  CHECK(c.admissible_count == 0);
}
