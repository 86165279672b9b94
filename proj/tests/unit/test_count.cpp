#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "oracles.hpp"
#include "treecount/count.hpp"
#include "treecount/errors.hpp"
#include "treecount/generators.hpp"

using namespace treecount;

TEST_CASE("brute-force counts") {
  const CountReport ham = count_copies_brute(complete_digraph(5), path_tree(5));
  CHECK(ham.labelled == 120);
  CHECK(ham.aut == 1);
  CHECK(ham.unlabelled == 120);
  CHECK(ham.valid);

  CHECK(count_copies_brute(directed_cycle(3), path_tree(3)).labelled == 3);
  CHECK(count_copies_brute(complete_digraph(7), RootedOrientedTree()).labelled == 7);

  BruteOptions rooted;
  rooted.root_image = 0;
  CHECK(count_copies_brute(complete_digraph(3), path_tree(3), rooted).labelled == 2);

  BruteOptions four;
  four.workers = 4;
  CounterRng rng(1, 1);
  const Digraph g = random_dense_digraph(8, 5, rng);
  const RootedOrientedTree t = random_tree(5, 3, rng);
  CHECK(count_copies_brute(g, t, four).labelled == count_copies_brute(g, t).labelled);

  BruteOptions tiny;
  tiny.node_budget = 10;
  CHECK_FALSE(count_copies_brute(complete_digraph(6), path_tree(6), tiny).valid);
  CHECK_THROWS_AS(count_copies_brute(complete_digraph(3), path_tree(4)), InputError);
}

TEST_CASE("undirected pattern counts") {
  const Digraph k6 = double_orient(complete_graph(6));
  const Digraph c6 = double_orient(cycle_graph(6));
  CHECK(pattern_automorphisms(c6) == 12);
  CHECK(count_copies_brute(k6, c6).labelled == 720);
}

TEST_CASE("estimator on small exact cases") {
  const PerfectFractionalMatching k3 = max_entropy_matching(complete_digraph(3)).matching;
  EstimatorOptions opt;
  opt.samples = 20000;
  opt.root_image = 0;
  const CountReport r = estimate_copies(k3, path_tree(3), opt);
  CHECK(std::abs(r.estimate - 2.0) <= 4.0 * r.std_error);
  CHECK(r.ci->high - r.ci->low == doctest::Approx(2.0 * 1.959964 * r.std_error).epsilon(1e-6));

  EstimatorOptions single;
  single.samples = 100;
  const CountReport s = estimate_copies(max_entropy_matching(complete_digraph(6)).matching, RootedOrientedTree(), single);
  CHECK(s.estimate == 6.0);
  CHECK(s.std_error == 0.0);

  // each self-avoiding outcome contributes probability times 1/probability,
  // so the exact mean is the number of positive-probability copies
  CounterRng rng(70, 0);
  const PerfectFractionalMatching x = max_entropy_matching(random_dense_digraph(7, 5, rng)).matching;
  const RootedOrientedTree t = random_tree(4, 3, rng);
  double mean = 0.0;
  for (const auto& o : oracle::enumerate_outcomes(x.host(), x.weights(), t, -1)) {
    std::vector<int> sorted = o.images;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end()) mean += o.probability / o.probability;
  }
  CHECK(mean == count_copies_brute(x.host(), t).labelled.convert_to<double>());
}

TEST_CASE("estimator reproducibility") {
  CounterRng rng(71, 0);
  const PerfectFractionalMatching x = max_entropy_matching(random_dense_digraph(9, 6, rng)).matching;
  const RootedOrientedTree t = random_tree(5, 3, rng);
  EstimatorOptions a;
  a.samples = 5000;
  a.seed = 4;
  EstimatorOptions b = a;
  b.workers = 3;
  CHECK(estimate_copies(x, t, a).estimate == estimate_copies(x, t, b).estimate);
  a.samples = 0;
  CHECK_THROWS_AS(estimate_copies(x, t, a), InputError);
}

TEST_CASE("lower bound formulas") {
  const BoundValue five = directed_lower_bound({5.0, 10.0, 0.0, 1});
  CHECK(five.value == doctest::Approx(1024.0 * std::exp(-5.0)));
  CHECK(five.value == doctest::Approx(6.90).epsilon(0.01));
  CHECK(directed_lower_bound({5.0, 10.0, 0.0, 2}).value == doctest::Approx(five.value / 2.0));
  const double h6 = 6.0 * std::log2(3.0);
  CHECK(directed_lower_bound({6.0, h6, 0.0, 1}).value == doctest::Approx(std::pow(3.0, 6) * std::exp(-6.0)));
  CHECK(directed_lower_bound({5.0, 10.0, 0.1, 1}).log2 == doctest::Approx(five.log2 - 0.5));

  const BoundValue c6 = undirected_lower_bound(6.0, undirected_entropy(complete_graph(6)), 0.0, 12);
  CHECK(c6.value == doctest::Approx(std::pow(5.0, 6) * std::exp(-6.0) / 12.0));
  CHECK(c6.value == doctest::Approx(3.23).epsilon(0.01));
}

TEST_CASE("absorbing pairs") {
  const RootedOrientedTree edge = path_tree(2);
  const AbsorbResult k4 = absorbing_pair_search(complete_digraph(4), edge, 0, 1);
  CHECK(k4.found);
  CHECK(k4.set == std::vector<int>{0});
  CHECK(k4.anchor_image == 0);

  CHECK_FALSE(absorbing_pair_search(directed_cycle(4), edge, 0, 1).found);

  const RootedOrientedTree p3 = path_tree(3);
  const AbsorbResult whole = absorbing_pair_search(complete_digraph(5), p3, 0, 3);
  CHECK(whole.found);
  CHECK(whole.set.size() == 3);
  CHECK_THROWS_AS(absorbing_pair_search(complete_digraph(13), edge, 0, 1), InputError);
}

TEST_CASE("tree copies in a restricted host") {
  const Digraph g = complete_digraph(6);
  std::vector<char> allowed{1, 0, 1, 1, 0, 1};
  const auto copy = find_tree_copy(g, path_tree(4), allowed, {0, 2}, 1000000);
  REQUIRE(copy);
  for (int v : *copy) CHECK(allowed[v]);
  CHECK_FALSE(find_tree_copy(g, path_tree(5), allowed, {0, 2, 3, 5}, 1000000));
}

TEST_CASE("bound experiments") {
  const VerifyReport d = verify_bound_experiment(complete_digraph(5), path_tree(5));
  CHECK(d.count == 120);
  CHECK(d.bound.value == doctest::Approx(6.90).epsilon(0.01));
  CHECK(d.holds);
  CHECK(d.hypothesis_met);

  const VerifyReport u = verify_bound_experiment(complete_graph(6), cycle_graph(6));
  CHECK(u.count == 60);
  CHECK(u.aut == 12);
  CHECK(u.bound.value == doctest::Approx(3.23).epsilon(0.01));
  CHECK(u.holds);

  const VerifyReport none = verify_bound_experiment(directed_cycle(4), star_tree(4));
  CHECK(none.count == 0);
  CHECK_FALSE(none.holds);
  CHECK_FALSE(none.hypothesis_met);
  CHECK_FALSE(none.note.empty());
}
