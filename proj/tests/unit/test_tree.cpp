#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "doctest.h"
#include "oracles.hpp"
#include "treecount/errors.hpp"
#include "treecount/generators.hpp"
#include "treecount/tree.hpp"
#include "treecount/tree_io.hpp"

using namespace treecount;

namespace {

std::vector<int> sizes(const std::vector<Subtree>& pieces) {
  std::vector<int> s;
  for (const auto& p : pieces) s.push_back(p.size());
  return s;
}

}  // namespace

TEST_CASE("tree construction") {
  CHECK(RootedOrientedTree().n() == 1);
  CHECK_THROWS_AS(RootedOrientedTree({-1, 2, 1}, std::vector<EdgeDir>(3, EdgeDir::Down)), InputError);
  CHECK_THROWS_AS(RootedOrientedTree({-1, -1}, std::vector<EdgeDir>(2, EdgeDir::Down)), InputError);
  CHECK_THROWS_AS(RootedOrientedTree({-1, 5}, std::vector<EdgeDir>(2, EdgeDir::Down)), InputError);

  const RootedOrientedTree t({1, -1, 1, 0}, {EdgeDir::Up, EdgeDir::Down, EdgeDir::Down, EdgeDir::Up});
  CHECK(t.root() == 1);
  CHECK(t.depth(3) == 2);
  CHECK(t.subtree_size(0) == 2);
  CHECK(t.max_degree() == 2);
  const auto arcs = t.arcs();
  CHECK(std::count(arcs.begin(), arcs.end(), Arc{0, 1}) == 1);
  CHECK(std::count(arcs.begin(), arcs.end(), Arc{1, 2}) == 1);
  CHECK(std::count(arcs.begin(), arcs.end(), Arc{3, 0}) == 1);

  const RootedOrientedTree r = t.reroot(3);
  CHECK(r.root() == 3);
  auto ra = r.arcs(), ta = t.arcs();
  std::sort(ra.begin(), ra.end(), [](Arc a, Arc b) { return std::pair{a.tail, a.head} < std::pair{b.tail, b.head}; });
  std::sort(ta.begin(), ta.end(), [](Arc a, Arc b) { return std::pair{a.tail, a.head} < std::pair{b.tail, b.head}; });
  CHECK(ra == ta);
}

TEST_CASE("breadth-first order") {
  CHECK(bfs_order(RootedOrientedTree()) == std::vector<int>{0});
  CHECK(bfs_order(star_tree(5)) == std::vector<int>{0, 1, 2, 3, 4});
  CHECK(bfs_order(path_tree(4)) == std::vector<int>{0, 1, 2, 3});
  CounterRng rng(2, 0);
  for (int trial = 0; trial < 50; ++trial) {
    const RootedOrientedTree t = random_tree(1 + static_cast<int>(rng.below(60)), 4, rng);
    const auto order = bfs_order(t);
    const int delta = std::max(1, t.max_degree());
    for (int j = 0; j < t.n(); ++j) {
      const int v = order[j];
      if (v != t.root()) CHECK(t.bfs_index(t.parent(v)) < j);
      for (int c : t.children(v)) CHECK(t.bfs_index(c) <= delta * (j + 1));
    }
  }
}

TEST_CASE("tree partition") {
  const RootedOrientedTree p9 = path_tree(9);
  const auto pieces = tree_partition(p9, 3, 2);
  CHECK(sizes(pieces) == std::vector<int>{3, 3, 3});
  CHECK(check_partition(p9, pieces, 3, 2).ok());

  const auto whole = tree_partition(p9, 9);
  REQUIRE(whole.size() == 1);
  CHECK(whole[0].size() == 9);

  const RootedOrientedTree star = star_tree(6);
  const auto sp = tree_partition(star, 2);
  CHECK(check_partition(star, sp, 2).ok());
  for (int s : sizes(sp)) {
    CHECK(s >= 2);
    CHECK(s <= 2 * 5 * 2);
  }
  CHECK_THROWS_AS(tree_partition(p9, 10), InputError);
}

TEST_CASE("partition prefixes stay connected") {
  CounterRng rng(12, 0);
  for (int trial = 0; trial < 40; ++trial) {
    const RootedOrientedTree t = random_tree(20 + static_cast<int>(rng.below(200)), 5, rng);
    const int floor = 1 + static_cast<int>(rng.below(10));
    const auto pieces = tree_partition(t, floor);
    REQUIRE(check_partition(t, pieces, floor).ok());
    std::vector<char> seen(t.n(), 0);
    for (const auto& p : pieces) {
      for (int v : p.vertices) {
        CHECK_FALSE(seen[v]);
        seen[v] = 1;
      }
      // every prefix union is connected: the root piece comes first and
      // each later root hangs below an earlier piece
      if (p.root != t.root()) CHECK(seen[t.parent(p.root)]);
    }
  }
}

TEST_CASE("quarter decomposition") {
  const RootedOrientedTree p16 = path_tree(16);
  const TreeDecomposition d = quarter_decomposition(p16, 16);
  const DecompositionCheck c = check_decomposition(p16, d);
  CHECK(c.ok());
  for (std::size_t i = 0; i < d.pieces.size(); ++i) {
    const double q = std::pow(static_cast<double>(d.residuals[i]), 0.25);
    CHECK(d.pieces[i].size() >= q + 1 - 1e-9);
    CHECK(d.pieces[i].size() <= 3 * d.delta * q + 1e-9);
  }

  const TreeDecomposition edge = quarter_decomposition(path_tree(2), 2);
  REQUIRE(edge.pieces.size() == 1);
  CHECK(edge.pieces[0].size() == 2);

  CHECK_THROWS_AS(quarter_decomposition(p16, 15), InputError);
  CHECK_THROWS_AS(quarter_decomposition(p16, 16LL * 16 * 16 * 16), InputError);
}

TEST_CASE("quarter decomposition invariants on random trees") {
  CounterRng rng(13, 0);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = 2 + static_cast<int>(rng.below(3000));
    const RootedOrientedTree t = random_tree(n, 2 + static_cast<int>(rng.below(15)), rng);
    const long long n0 = n + static_cast<long long>(rng.below(static_cast<std::uint64_t>(n)));
    const TreeDecomposition d = quarter_decomposition(t, n0);
    const DecompositionCheck c = check_decomposition(t, d);
    CHECK_MESSAGE(c.ok(), "n=" << n << " n0=" << n0 << (c.failures.empty() ? "" : " " + c.failures[0]));
  }
}

TEST_CASE("trunk split") {
  const TrunkSplit s = split_trunk(path_tree(10), 4);
  CHECK(s.branch.size() == 4);
  CHECK(s.trunk.size() == 6);
  CHECK(s.t_double_prime == 6);
  CHECK(s.t_prime == 5);
  CHECK_FALSE(s.degenerate);

  const TrunkSplit all = split_trunk(path_tree(10), 10);
  CHECK(all.degenerate);
  CHECK(all.branch.size() == 10);
  CHECK(all.trunk.size() == 0);

  const TrunkSplit bin = split_trunk(complete_binary_tree(3), 4);
  CHECK(bin.branch.size() == 7);
  CHECK(complete_binary_tree(3).depth(bin.t_double_prime) == 1);

  CHECK_THROWS_AS(split_trunk(path_tree(5), 6), InputError);
}

TEST_CASE("automorphism counts") {
  for (int n = 2; n <= 9; ++n) CHECK(automorphism_count(path_tree(n), false, false) == 2);
  CHECK(automorphism_count(complete_binary_tree(2), true) == 8);
  CHECK(automorphism_count(path_tree(6), false) == 1);
  CHECK(automorphism_count(star_tree(5), true) == 24);
  CHECK(automorphism_count(RootedOrientedTree(), false) == 1);
  // two centroids with equal halves: the swap only counts without orientation
  const RootedOrientedTree p4 = path_tree(4);
  CHECK(automorphism_count(p4, false, false) == 2);
  CHECK(automorphism_count(p4, false, true) == 1);
}

TEST_CASE("automorphism counts match the permutation oracle") {
  CounterRng rng(21, 0);
  for (int trial = 0; trial < 120; ++trial) {
    const int n = 1 + static_cast<int>(rng.below(7));
    const RootedOrientedTree t = random_tree(n, n, rng);
    for (bool rooted : {false, true})
      for (bool orient : {false, true})
        CHECK(automorphism_count(t, rooted, orient) == oracle::automorphisms_by_permutation(t, rooted, orient));
  }
}

TEST_CASE("subtrees") {
  const RootedOrientedTree t = complete_binary_tree(2);
  const Subtree s = make_subtree(t, {1, 3, 4}, 1);
  CHECK(s.vertices.front() == 1);
  const RootedOrientedTree m = materialize(t, s);
  CHECK(m.n() == 3);
  CHECK(m.root() == 0);
  CHECK_THROWS_AS(make_subtree(t, {3, 4}, 3), InputError);
}

TEST_CASE("asymptotic parameters") {
  const AsymptoticParams p = asymptotic_params(1000.0, 1.0);
  const double s = std::sqrt(std::log(1000.0));
  CHECK(p.zeta == doctest::Approx(1.0 / s));
  CHECK(p.delta == doctest::Approx(std::exp(s)));
  CHECK(p.alpha == doctest::Approx(1.0 / (7000.0 * s)));
  CHECK(p.mu == doctest::Approx(std::pow(1000.0, -p.alpha)));
  CHECK(p.trunk_threshold == doctest::Approx(std::pow(1000.0, 1.0 - p.alpha)));
}

TEST_CASE("tree text round trip") {
  CounterRng rng(4, 4);
  const RootedOrientedTree t = random_tree(30, 4, rng);
  std::ostringstream out;
  write_tree(out, t);
  std::istringstream in(out.str());
  const RootedOrientedTree u = read_tree(in);
  CHECK(u.parents() == t.parents());
  CHECK(u.root() == t.root());
  CHECK(u.arcs() == t.arcs());

  std::istringstream bad("tree 3 0\n1 0 down\n2 1 sideways\n");
  try {
    read_tree(bad, "t");
    FAIL("expected an input error");
  } catch (const InputError& e) {
    CHECK(std::string(e.what()).find("t:3") != std::string::npos);
  }
  std::istringstream cyc("tree 3 0\n1 2 down\n2 1 down\n");
  CHECK_THROWS_AS(read_tree(cyc), InputError);
}
