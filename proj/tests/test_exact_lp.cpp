#include <gtest/gtest.h>

#include "rgr/exact_lp.hpp"
#include "rgr/rng.hpp"

namespace {

using namespace rgr;

struct Constraint {
  std::vector<mpq_class> a;
  Relation rel;
  mpq_class b;
};

bool satisfied(const std::vector<Constraint>& cs, const std::vector<mpq_class>& x) {
  for (const auto& c : cs) {
    mpq_class lhs = 0;
    for (std::size_t j = 0; j < x.size(); ++j) lhs += c.a[j] * x[j];
    if (c.rel == Relation::less_equal && lhs > c.b) return false;
    if (c.rel == Relation::greater_equal && lhs < c.b) return false;
    if (c.rel == Relation::equal && lhs != c.b) return false;
  }
  for (const auto& v : x) {
    if (sgn(v) < 0) return false;
  }
  return true;
}

// Solves a square system exactly by Gauss-Jordan; nullopt when singular.
std::optional<std::vector<mpq_class>> solve_square(std::vector<std::vector<mpq_class>> m,
                                                   std::vector<mpq_class> rhs) {
  const std::size_t n = rhs.size();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && sgn(m[p][c]) == 0) ++p;
    if (p == n) return std::nullopt;
    std::swap(m[p], m[c]);
    std::swap(rhs[p], rhs[c]);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || sgn(m[r][c]) == 0) continue;
      const mpq_class f = m[r][c] / m[c][c];
      for (std::size_t k = 0; k < n; ++k) m[r][k] -= f * m[c][k];
      rhs[r] -= f * rhs[c];
    }
  }
  std::vector<mpq_class> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = rhs[i] / m[i][i];
  return x;
}

// A nonempty polyhedron inside x >= 0 has a vertex: try every choice of n
// tight hyperplanes among the constraints and the coordinate planes.
bool vertex_feasible(const std::vector<Constraint>& cs, std::size_t n) {
  std::vector<std::vector<mpq_class>> planes;
  std::vector<mpq_class> values;
  for (const auto& c : cs) {
    planes.push_back(c.a);
    values.push_back(c.b);
  }
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<mpq_class> e(n, 0);
    e[j] = 1;
    planes.push_back(e);
    values.push_back(0);
  }
  const std::size_t total = planes.size();
  std::vector<std::size_t> pick(n);
  // Enumerate n-subsets in lexicographic order.
  for (std::size_t i = 0; i < n; ++i) pick[i] = i;
  while (true) {
    std::vector<std::vector<mpq_class>> m;
    std::vector<mpq_class> rhs;
    for (auto p : pick) {
      m.push_back(planes[p]);
      rhs.push_back(values[p]);
    }
    if (auto x = solve_square(m, rhs); x && satisfied(cs, *x)) return true;
    std::size_t i = n;
    while (i > 0 && pick[i - 1] == total - n + i - 1) --i;
    if (i == 0) return false;
    ++pick[i - 1];
    for (std::size_t k = i; k < n; ++k) pick[k] = pick[k - 1] + 1;
  }
}

TEST(ExactLp, NoConstraints) {
  const LinearFeasibility lp(3);
  const auto x = lp.solve();
  ASSERT_TRUE(x.has_value());
  EXPECT_EQ(x->size(), 3U);
}

TEST(ExactLp, SmallSystems) {
  LinearFeasibility contradictory(2);
  contradictory.add({1, 1}, Relation::less_equal, 1);
  contradictory.add({1, 0}, Relation::greater_equal, 2);
  EXPECT_FALSE(contradictory.solve().has_value());

  LinearFeasibility equal(2);
  equal.add({1, 1}, Relation::equal, 3);
  equal.add({1, -1}, Relation::equal, 1);
  const auto x = equal.solve();
  ASSERT_TRUE(x.has_value());
  EXPECT_EQ((*x)[0], 2);
  EXPECT_EQ((*x)[1], 1);

  LinearFeasibility negative_only(1);
  negative_only.add({1}, Relation::less_equal, -1);
  EXPECT_FALSE(negative_only.solve().has_value());

  LinearFeasibility fractional(2);
  fractional.add({3, 0}, Relation::equal, 1);
  fractional.add({1, 2}, Relation::greater_equal, mpq_class(5, 2));
  const auto y = fractional.solve();
  ASSERT_TRUE(y.has_value());
  EXPECT_EQ((*y)[0], mpq_class(1, 3));
  EXPECT_THROW(fractional.add({1}, Relation::equal, 0), std::invalid_argument);
}

TEST(ExactLp, AgreesWithVertexEnumeration) {
  Rng rng(2024);
  int feasible = 0;
  for (int t = 0; t < 400; ++t) {
    const std::size_t n = 2 + t % 3;
    const std::size_t m = 1 + rng.below(6);
    std::vector<Constraint> cs;
    LinearFeasibility lp(n);
    for (std::size_t r = 0; r < m; ++r) {
      Constraint c;
      for (std::size_t j = 0; j < n; ++j) c.a.emplace_back(static_cast<long>(rng.below(7)) - 3);
      c.rel = static_cast<Relation>(rng.below(3));
      c.b = static_cast<long>(rng.below(9)) - 4;
      lp.add(c.a, c.rel, c.b);
      cs.push_back(std::move(c));
    }
    const auto x = lp.solve();
    const bool expected = vertex_feasible(cs, n);
    ASSERT_EQ(x.has_value(), expected) << "trial " << t;
    if (x) {
      EXPECT_TRUE(satisfied(cs, *x)) << "trial " << t;
      ++feasible;
    }
  }
  // Both outcomes occur often enough to make the comparison meaningful.
  EXPECT_GT(feasible, 50);
  EXPECT_LT(feasible, 350);
}

TEST(ExactLp, DegenerateSystemMatchesEnumeration) {
  // Many redundant rows tight at the origin stress the anti-cycling rule.
  std::vector<Constraint> cs;
  for (long k = 0; k < 12; ++k) {
    cs.push_back({{1, -1, k % 3, -(k % 2)}, Relation::equal, 0});
    cs.push_back({{k % 4, 1, -1, 1}, Relation::greater_equal, 0});
  }
  cs.push_back({{1, 1, 1, 1}, Relation::equal, 1});
  LinearFeasibility lp(4);
  for (const auto& c : cs) lp.add(c.a, c.rel, c.b);
  const auto x = lp.solve();
  ASSERT_EQ(x.has_value(), vertex_feasible(cs, 4));
  if (x) EXPECT_TRUE(satisfied(cs, *x));
}

}  // namespace
