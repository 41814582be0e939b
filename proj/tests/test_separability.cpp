#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <sstream>

#include "rgr/errors.hpp"
#include "rgr/separability.hpp"
#include "rgr/tree_realizer.hpp"

namespace {

using namespace rgr;

Graph make(std::size_t n, std::vector<Edge> edges) { return Graph(n, edges); }

// rows[i * n + u] is coordinate i of vertex u.
Embedding from_rows(std::size_t n, std::size_t d, double x, double y, const std::vector<std::uint8_t>& rows) {
  const std::size_t words = Embedding::words_for(d);
  std::vector<std::uint64_t> bits(n * words, 0);
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t u = 0; u < n; ++u) {
      if (rows[i * n + u] != 0) bits[u * words + i / 64] |= std::uint64_t{1} << (i % 64);
    }
  }
  return Embedding(n, d, x, y, std::move(bits));
}

// Every vertex gets a distinct binary code: columns are the binary digits of
// the vertex index.
Embedding injective(std::size_t n, std::size_t d) {
  std::vector<std::uint8_t> rows(n * d);
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t u = 0; u < n; ++u) rows[i * n + u] = (u >> i) & 1U;
  }
  return from_rows(n, d, 0.0, 1.0, rows);
}

// Realizability by exhaustive Boolean weights, straight from the definition.
bool boolean_realizable(const Graph& g, const Embedding& f) {
  const std::size_t d = f.dimension();
  const std::size_t n = g.vertex_count();
  for (std::uint32_t mask = 0; mask < (1U << d); ++mask) {
    long max_edge = -1;
    long min_non = std::numeric_limits<long>::max();
    for (Vertex u = 0; u < n; ++u) {
      for (Vertex v = u + 1; v < n; ++v) {
        long c = 0;
        for (std::size_t i = 0; i < d; ++i) c += ((mask >> i) & 1U) && f.bit(u, i) != f.bit(v, i);
        if (g.has_edge(u, v)) {
          max_edge = std::max(max_edge, c);
        } else {
          min_non = std::min(min_non, c);
        }
      }
    }
    if (max_edge < min_non && min_non > 0) return true;
  }
  return false;
}

// Small integer weights 0..3 per coordinate, also straight from the definition.
bool integer_grid_realizable(const Graph& g, const Embedding& f) {
  const std::size_t d = f.dimension();
  const std::size_t n = g.vertex_count();
  std::vector<long> w(d, 0);
  while (true) {
    long max_edge = -1;
    long min_non = std::numeric_limits<long>::max();
    for (Vertex u = 0; u < n; ++u) {
      for (Vertex v = u + 1; v < n; ++v) {
        long c = 0;
        for (std::size_t i = 0; i < d; ++i) c += f.bit(u, i) != f.bit(v, i) ? w[i] : 0;
        (g.has_edge(u, v) ? max_edge = std::max(max_edge, c) : min_non = std::min(min_non, c));
      }
    }
    if (max_edge < min_non && min_non > 0) return true;
    std::size_t i = 0;
    while (i < d && w[i] == 3) w[i++] = 0;
    if (i == d) return false;
    ++w[i];
  }
}

TEST(Verify, CompleteGraphWithOnes) {
  const Embedding f = sample_embedding(6, 40, 0.0, 1.0, 1);
  const RealizationReport r = verify_realization(complete_graph(6), f, WeightVector::ones(40));
  EXPECT_TRUE(r.realized);
  EXPECT_EQ(r.min_nonedge_dist, std::numeric_limits<double>::infinity());
  EXPECT_EQ(r.window_high, std::numeric_limits<double>::infinity());
}

TEST(Verify, EmptyGraphOnInjectiveEmbedding) {
  const Embedding f = injective(8, 3);
  const RealizationReport r = verify_realization(Graph(8), f, WeightVector::ones(3));
  EXPECT_TRUE(r.realized);
  EXPECT_EQ(r.max_edge_dist, -std::numeric_limits<double>::infinity());
  EXPECT_EQ(r.window_low, 0.0);
  EXPECT_EQ(r.window_high, 1.0);
  // A repeated point ruins the empty graph.
  EXPECT_FALSE(verify_realization(Graph(9), injective(9, 3), WeightVector::ones(3)).realized);
}

TEST(Verify, CoincidentNonAdjacentPoints) {
  // f(0) = f(2), path 0-1-2.
  const std::vector<std::uint8_t> rows{0, 1, 0, 1, 1, 1, 0, 0, 0};
  const Embedding f = from_rows(3, 3, 0.0, 1.0, rows);
  const Graph p3 = path_graph(3);
  for (std::uint32_t mask = 0; mask < 8; ++mask) {
    std::vector<std::uint8_t> w{static_cast<std::uint8_t>(mask & 1U), static_cast<std::uint8_t>((mask >> 1) & 1U),
                                static_cast<std::uint8_t>((mask >> 2) & 1U)};
    EXPECT_FALSE(verify_realization(p3, f, WeightVector::boolean(w)).realized);
  }
  EXPECT_FALSE(lp_realizability(p3, f, LpMode::nonnegative).feasible);
  EXPECT_FALSE(lp_realizability(p3, f, LpMode::free).feasible);
}

TEST(Verify, Errors) {
  const Embedding f = sample_embedding(4, 10, 0.0, 1.0, 2);
  EXPECT_THROW(verify_realization(path_graph(4), f, WeightVector::ones(9)), std::invalid_argument);
  EXPECT_THROW(verify_realization(path_graph(5), f, WeightVector::ones(10)), std::invalid_argument);
  EXPECT_THROW(verify_realization(Graph(1), sample_embedding(1, 10, 0, 1, 1), WeightVector::ones(10)),
               std::invalid_argument);
}

TEST(Lp, SingleEdgeIsFeasible) {
  for (Seed s = 0; s < 10; ++s) {
    const Graph g = make(2, {{0, 1}});
    const Embedding f = sample_embedding(2, 3, 0.0, 1.0, s);
    for (LpMode mode : {LpMode::nonnegative, LpMode::free}) {
      const FeasibilityResult r = lp_realizability(g, f, mode);
      ASSERT_TRUE(r.feasible);
      EXPECT_TRUE(witness_realizes(g, f, *r.witness));
    }
  }
}

TEST(Lp, IdenticalFeaturesOnBothSidesAreInfeasible) {
  // g(0,1) = g(2,3): 0,2 share a column and 1,3 share a column.
  const std::vector<std::uint8_t> rows{0, 1, 0, 1, 1, 1, 1, 1};
  const Embedding f = from_rows(4, 2, 0.0, 1.0, rows);
  const Graph g = make(4, {{0, 1}});
  EXPECT_FALSE(lp_realizability(g, f, LpMode::free).feasible);
}

TEST(Lp, AgreesWithBruteForceOnSmallInstances) {
  int boolean_hits = 0;
  for (int t = 0; t < 300; ++t) {
    const std::size_t n = 2 + t % 4;
    const std::size_t d = 1 + (t / 4) % 4;
    const Graph g = sample_er_graph(n, 0.5, derive_seed(3, t));
    const Embedding f = sample_embedding(n, d, 0.0, 1.0, derive_seed(4, t));
    const FeasibilityResult nonneg = lp_realizability(g, f, LpMode::nonnegative);
    const FeasibilityResult free = lp_realizability(g, f, LpMode::free);
    if (boolean_realizable(g, f)) {
      ++boolean_hits;
      EXPECT_TRUE(nonneg.feasible) << "trial " << t;
    }
    if (integer_grid_realizable(g, f)) EXPECT_TRUE(nonneg.feasible) << "trial " << t;
    if (nonneg.feasible) EXPECT_TRUE(free.feasible) << "trial " << t;
    for (const FeasibilityResult* r : {&nonneg, &free}) {
      if (!r->feasible) continue;
      EXPECT_TRUE(witness_realizes(g, f, *r->witness)) << "trial " << t;
      EXPECT_TRUE(verify_realization(g, f, r->witness->weight_vector()).realized) << "trial " << t;
    }
    if (nonneg.feasible) {
      for (const auto& w : nonneg.witness->weights) EXPECT_GE(sgn(w), 0);
    }
  }
  EXPECT_GT(boolean_hits, 30);
}

TEST(Lp, ScaledAlphabetKeepsWitnessSound) {
  for (int t = 0; t < 50; ++t) {
    const Graph g = sample_er_graph(5, 0.5, derive_seed(5, t));
    const Embedding f = sample_embedding(5, 4, -1.0, 2.5, derive_seed(6, t));
    for (LpMode mode : {LpMode::nonnegative, LpMode::free}) {
      const FeasibilityResult r = lp_realizability(g, f, mode);
      EXPECT_EQ(r.feasible, lp_realizability(g, f.relabeled(0.0, 1.0), mode).feasible);
      if (r.feasible) EXPECT_TRUE(witness_realizes(g, f, *r.witness));
    }
  }
}

TEST(Lp, RandomGraphsAreMostlyInfeasible) {
  int infeasible = 0;
  for (int t = 0; t < 100; ++t) {
    const Graph g = sample_er_graph(8, 0.5, derive_seed(7, t));
    const Embedding f = sample_embedding(8, 4, 0.0, 1.0, derive_seed(8, t));
    infeasible += !lp_realizability(g, f, LpMode::free).feasible;
  }
  EXPECT_GE(infeasible, 90);
}

TEST(Lp, HintCertifiesWithoutChangingVerdict) {
  const Tree tree = sample_random_tree(12, 9);
  const Embedding f = sample_embedding(12, 20000, 0.0, 1.0, 10);
  const WeightVector w = realize_tree(tree, f).weights;
  ASSERT_TRUE(verify_realization(tree.graph(), f, w).realized);
  const FeasibilityResult r = lp_realizability(tree.graph(), f, LpMode::free, &w);
  EXPECT_TRUE(r.feasible);
  EXPECT_TRUE(r.from_hint);
  EXPECT_TRUE(witness_realizes(tree.graph(), f, *r.witness));
  // A failing hint falls through to the exact solver.
  const Embedding small = sample_embedding(6, 3, 0.0, 1.0, 11);
  const Graph g = sample_er_graph(6, 0.5, 12);
  const WeightVector zeros = WeightVector::zeros(3);
  const FeasibilityResult a = lp_realizability(g, small, LpMode::free, &zeros);
  EXPECT_FALSE(a.from_hint);
  EXPECT_EQ(a.feasible, lp_realizability(g, small, LpMode::free).feasible);
}

TEST(Witness, TextRoundTrip) {
  Witness w;
  w.theta = mpq_class(7, 3);
  w.weights = {mpq_class(0), mpq_class(-1, 2), mpq_class(5)};
  std::stringstream s;
  write_witness(s, w);
  const Witness back = read_witness(s);
  EXPECT_EQ(back.theta, w.theta);
  EXPECT_EQ(back.weights, w.weights);
  std::istringstream bad("theta 1/2\nfoo\n");
  EXPECT_THROW(read_witness(bad), FormatError);
  std::istringstream no_header("1/2\n");
  EXPECT_THROW(read_witness(no_header), FormatError);
}

std::vector<FeatureVector> points(std::vector<std::vector<double>> raw) {
  std::vector<FeatureVector> out;
  for (auto& p : raw) out.push_back({std::move(p)});
  return out;
}

TEST(Hulls, Examples) {
  EXPECT_FALSE(hulls_intersect(points({{0}}), points({{1}})));
  EXPECT_TRUE(hulls_intersect(points({{0, 0}, {1, 1}}), points({{0, 1}, {1, 0}})));
  EXPECT_TRUE(hulls_intersect(points({{0, 0, 1}, {1, 1, 0}}), points({{1, 1, 0}})));
  EXPECT_FALSE(hulls_intersect(points({{0, 0}, {1, 0}}), points({{0, 1}, {1, 1}})));
  EXPECT_TRUE(hulls_intersect(points({{0.5, 0.25}}), points({{0, 0}, {1, 0.5}})));
  EXPECT_THROW(hulls_intersect(points({}), points({{1}})), std::invalid_argument);
  EXPECT_THROW(hulls_intersect(points({{1, 0}}), points({{1}})), std::invalid_argument);
}

TEST(Hulls, OneDimensionalIntervals) {
  // In 1-D the hulls are intervals; enumerate all small colored multisets.
  for (std::uint32_t code = 0; code < 4096; ++code) {
    std::vector<std::vector<double>> red;
    std::vector<std::vector<double>> blue;
    std::uint32_t c = code;
    for (int k = 0; k < 4; ++k, c >>= 3) {
      const int value = static_cast<int>(c & 3U);
      if (value == 3) continue;  // point absent
      ((c >> 2) & 1U ? red : blue).push_back({static_cast<double>(value)});
    }
    if (red.empty() || blue.empty()) continue;
    double rlo = 9, rhi = -9, blo = 9, bhi = -9;
    for (auto& p : red) rlo = std::min(rlo, p[0]), rhi = std::max(rhi, p[0]);
    for (auto& p : blue) blo = std::min(blo, p[0]), bhi = std::max(bhi, p[0]);
    EXPECT_EQ(hulls_intersect(points(red), points(blue)), rlo <= bhi && blo <= rhi) << code;
  }
}

TEST(Duality, HullIntersectionImpliesFreeInfeasibility) {
  int intersecting = 0;
  for (int t = 0; t < 300; ++t) {
    const std::size_t n = 3 + t % 4;
    const Graph g = sample_er_graph(n, 0.5, derive_seed(13, t));
    const Embedding f = sample_embedding(n, 1 + t % 6, 0.0, 1.0, derive_seed(14, t));
    const FeatureSplit split = split_features(g, f);
    const bool free = lp_realizability(g, f, LpMode::free).feasible;
    if (split.edges.empty() || split.non_edges.empty()) continue;
    if (hulls_intersect(split.edges, split.non_edges)) {
      ++intersecting;
      EXPECT_FALSE(free) << "trial " << t;
    }
  }
  EXPECT_GT(intersecting, 50);
}

// Exact probability for d = 1, m = 3: 8 point tuples times 8 colorings.
double exact_radon_d1_m3() {
  int hits = 0;
  for (int pts = 0; pts < 8; ++pts) {
    for (int col = 0; col < 8; ++col) {
      int rlo = 9, rhi = -9, blo = 9, bhi = -9;
      for (int k = 0; k < 3; ++k) {
        const int v = (pts >> k) & 1;
        if ((col >> k) & 1) {
          rlo = std::min(rlo, v), rhi = std::max(rhi, v);
        } else {
          blo = std::min(blo, v), bhi = std::max(bhi, v);
        }
      }
      hits += rlo != 9 && blo != 9 && rlo <= bhi && blo <= rhi;
    }
  }
  return hits / 64.0;
}

TEST(Radon, OneDimensionMatchesEnumeration) {
  const RadonResult r = radon_experiment(1, 3, 20000, 15);
  const double p = exact_radon_d1_m3();
  EXPECT_NEAR(r.fraction, p, 4 * std::sqrt(p * (1 - p) / 20000));
  EXPECT_GT(r.duplicate_rate, 0.3);
}

TEST(Radon, TwoDistinctPointsNeverIntersect) {
  const RadonResult r = radon_experiment(40, 2, 2000, 16);
  EXPECT_EQ(r.intersecting, 0U);
  EXPECT_EQ(r.duplicate_rate, 0.0);
}

TEST(Radon, SixTimesDimensionPointsIntersect) {
  const RadonResult r = radon_experiment(5, 30, 200, 17);
  EXPECT_GE(r.fraction, 0.9);
  // Deterministic in the seed, and each trial replays from its own seed.
  EXPECT_EQ(radon_experiment(5, 30, 200, 17).intersecting, r.intersecting);
  std::size_t replay = 0;
  for (std::size_t t = 0; t < 200; ++t) replay += radon_trial(5, 30, derive_seed(17, t));
  EXPECT_EQ(replay, r.intersecting);
  EXPECT_THROW(radon_experiment(0, 3, 1, 1), std::invalid_argument);
  EXPECT_THROW(radon_experiment(3, 1, 1, 1), std::invalid_argument);
}

TEST(Radon, DistinctPointsStillMostlyIntersectAtSixD) {
  // Same experiment restricted to duplicate-free trials, so the rate is not an
  // artifact of repeated points.
  std::size_t kept = 0;
  std::size_t hits = 0;
  for (std::size_t t = 0; kept < 100 && t < 100000; ++t) {
    std::size_t dup = 0;
    const bool hit = radon_trial(8, 48, derive_seed(18, t), &dup);
    if (dup != 0) continue;
    ++kept;
    hits += hit;
  }
  ASSERT_EQ(kept, 100U);
  EXPECT_GE(hits, 90U);
}

TEST(ScaleInvariance, WindowScalesExactly) {
  for (int t = 0; t < 100; ++t) {
    const std::size_t n = 3 + t % 6;
    const Graph g = sample_er_graph(n, 0.3, derive_seed(19, t));
    const Embedding f = sample_embedding(n, 6 + t % 20, 0.0, 1.0, derive_seed(20, t));
    std::vector<double> ints(f.dimension());
    Rng r(derive_seed(21, t));
    for (double& v : ints) v = static_cast<double>(r.below(5));
    const WeightVector w = WeightVector::nonnegative(ints);
    const RealizationReport base = verify_realization(g, f, w);
    for (double c : {0.5, 3.0, 10.0}) {
      const RealizationReport s = verify_realization(g, f, w.scaled(c));
      EXPECT_EQ(s.realized, base.realized);
      EXPECT_EQ(s.max_edge_dist, c * base.max_edge_dist);
      EXPECT_EQ(s.min_nonedge_dist, c * base.min_nonedge_dist);
      EXPECT_EQ(s.window_low, c * base.window_low);
      EXPECT_EQ(s.window_high, c * base.window_high);
    }
  }
}

}  // namespace
