#include <gtest/gtest.h>

#include <cmath>
#include <set>

#include "rgr/rng.hpp"

namespace {

using rgr::derive_seed;
using rgr::Rng;

TEST(Rng, SameSeedSameStream) {
  Rng a(42);
  Rng b(42);
  for (int i = 0; i < 1000; ++i) ASSERT_EQ(a(), b());
}

TEST(Rng, DerivedSeedsAreDistinctAndPure) {
  std::set<std::uint64_t> seen;
  for (std::uint64_t i = 0; i < 10000; ++i) seen.insert(derive_seed(7, i));
  EXPECT_EQ(seen.size(), 10000U);
  EXPECT_EQ(derive_seed(7, 3), derive_seed(7, 3));
  EXPECT_NE(derive_seed(7, 3), derive_seed(8, 3));
}

TEST(Rng, BelowStaysInRangeAndIsRoughlyUniform) {
  Rng r(1);
  std::vector<int> counts(6, 0);
  const int draws = 60000;
  for (int i = 0; i < draws; ++i) {
    const auto v = r.below(6);
    ASSERT_LT(v, 6U);
    ++counts[v];
  }
  for (int c : counts) EXPECT_NEAR(c, draws / 6, 5 * std::sqrt(draws / 6.0));
}

TEST(Rng, UnitInHalfOpenInterval) {
  Rng r(9);
  double sum = 0.0;
  for (int i = 0; i < 100000; ++i) {
    const double u = r.unit();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
    sum += u;
  }
  EXPECT_NEAR(sum / 100000, 0.5, 0.005);
}

TEST(Rng, BernoulliExtremes) {
  Rng r(3);
  for (int i = 0; i < 1000; ++i) {
    ASSERT_FALSE(r.bernoulli(0.0));
    ASSERT_TRUE(r.bernoulli(1.0));
  }
}

}  // namespace
