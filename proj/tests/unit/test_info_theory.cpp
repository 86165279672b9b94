#include <cmath>

#include "doctest.h"
#include "treecount/errors.hpp"
#include "treecount/info_theory.hpp"
#include "treecount/rng.hpp"

using namespace treecount;

namespace {

DiscreteDistribution uniform(int k) { return DiscreteDistribution(std::vector<double>(k, 1.0 / k)); }

EventMask first(int k, int total) {
  EventMask e;
  e.member.assign(total, false);
  for (int i = 0; i < k; ++i) e.member[i] = true;
  return e;
}

}  // namespace

TEST_CASE("entropy of small distributions") {
  CHECK(entropy(uniform(16)) == doctest::Approx(4.0));
  CHECK(entropy(DiscreteDistribution({1.0, 0.0})) == 0.0);
  CHECK(entropy(DiscreteDistribution({0.5, 0.25, 0.25})) == doctest::Approx(1.5));
  CHECK(entropy_term(0.0) == 0.0);
  CHECK_THROWS_AS(DiscreteDistribution({0.5, 0.6}), InputError);
  CHECK_THROWS_AS(DiscreteDistribution({1.5, -0.5}), InputError);
}

TEST_CASE("conditional entropy") {
  CHECK(conditional_entropy(uniform(16), first(8, 16)) == doctest::Approx(3.0));
  CHECK(conditional_entropy(uniform(5), first(5, 5)) == doctest::Approx(entropy(uniform(5))));
  EventMask e{{false, true, true}};
  CHECK(conditional_entropy(DiscreteDistribution({0.5, 0.3, 0.2}), e) == doctest::Approx(0.970951).epsilon(1e-6));
}

TEST_CASE("entropy gap bound") {
  const GapVerdict v = entropy_gap_bound(uniform(16), first(8, 16), 16.0);
  CHECK(v.gap == doctest::Approx(1.0));
  CHECK(v.bound == doctest::Approx(4.0));
  CHECK(v.holds);
  const GapVerdict full = entropy_gap_bound(uniform(20), first(20, 20), 20.0);
  CHECK(full.gap == doctest::Approx(0.0));
  CHECK(full.bound == doctest::Approx(0.0));
  CHECK(full.holds);
  CHECK_THROWS_AS(entropy_gap_bound(uniform(16), first(8, 16), 8.0), InputError);
  CHECK_THROWS_AS(entropy_gap_bound(uniform(16), first(4, 16), 16.0), InputError);
}

TEST_CASE("azuma tail") {
  CHECK(azuma_tail(1, 1, 1) == doctest::Approx(2.0 * std::exp(-0.5)));
  CHECK(azuma_tail(8, 2, 8) == doctest::Approx(2.0 * std::exp(-1.0)));
  double last = azuma_tail(4, 1, 0.5);
  for (double t = 1.0; t < 40.0; t += 1.0) {
    const double now = azuma_tail(4, 1, t);
    CHECK(now < last);
    last = now;
  }
  CHECK(last < 1e-40);
}

TEST_CASE("plug-in entropy") {
  CHECK(plugin_entropy({5, 5, 5, 5}) == doctest::Approx(2.0));
  CHECK(plugin_entropy({7, 0}) == 0.0);
}
