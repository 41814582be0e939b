#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "rgr/embedding.hpp"
#include "rgr/graph.hpp"
#include "rgr/rng.hpp"

namespace rgr {

/// Multiplier in d = C n ln n for trees at alpha = 1/4, q = 1/6: 6 / (2 q alpha)^2.
inline constexpr double kTreeDimensionConstant = 864.0;

enum class CensusVariant {
  agreement,     // select when the agreeing fraction lies in the window
  disagreement,  // same window applied to the disagreeing fraction
  random_sample  // select when one uniformly drawn edge agrees
};

struct CensusParams {
  double alpha = 0.25;
  CensusVariant variant = CensusVariant::agreement;
  /// Only read by the random-sample variant.
  Seed sample_seed = 0;
};

/// Throws std::invalid_argument unless 0 < alpha < 1/2.
void validate(const CensusParams& params);

/// Selection window 1/2 + alpha/sqrt(n) <= a/m <= 3/4 for agreement counts
/// a in [0, m], both ends inclusive. Decided exactly in rational arithmetic
/// (alpha is taken as the exact binary value of the double).
class CensusWindow {
 public:
  CensusWindow(std::size_t n, std::size_t edge_count, double alpha);

  bool contains(std::size_t agree) const { return table_[agree] != 0; }
  std::size_t edge_count() const noexcept { return table_.size() - 1; }

 private:
  std::vector<std::uint8_t> table_;
};

/// Per-coordinate census record: p_i = agree_count[i] / edge_count.
struct CensusTrace {
  std::size_t edge_count = 0;
  std::vector<std::uint32_t> agree_count;
  std::vector<std::uint8_t> selected;

  std::size_t dimension() const noexcept { return selected.size(); }
  std::size_t selected_count() const noexcept;
  /// Realized selection rate (#selected) / d.
  double q_hat() const noexcept;
};

/// CSV with header "coordinate,agree_count,p_num,p_den,selected"; p_num/p_den
/// is p_i in lowest terms.
void write_census_csv(std::ostream& out, const CensusTrace& trace);

struct TreeRealization {
  WeightVector weights;
  CensusTrace trace;
};

/// Agreement count of every coordinate over the given edges.
std::vector<std::uint32_t> census_counts(const Embedding& f, std::span<const Edge> edges);

/// Boolean weights from the census over T's edges. Throws
/// std::invalid_argument when T has fewer than 2 vertices or f does not have
/// one column per vertex.
TreeRealization realize_tree(const Tree& tree, const Embedding& f, const CensusParams& params = {});

/// Random-sample strategy: coordinate i draws an edge uniformly and is
/// selected iff that edge agrees at i.
WeightVector realize_tree_sampling(const Tree& tree, const Embedding& f, Seed seed);

/// (1 + (2p - 1)^t) / 2: probability that vertices t tree-steps apart agree at
/// a coordinate whose edges agree independently with probability p.
double pr_agree_predicted(double p, std::size_t t);

/// s^2 q (2 alpha / sqrt(n)) (1 - alpha / sqrt(n)).
double gap_lower_bound(double s, double q, double alpha, std::size_t n);

/// ceil(864 n ln n). Throws std::invalid_argument for n < 20.
std::size_t required_dimension_tree(std::size_t n);

/// ceil(6 s^4 ln n / delta^2), the dimension that makes a per-coordinate gap
/// delta survive the union bound.
std::size_t dimension_from_gap(double s, double delta, std::size_t n);

/// d delta / 2 with delta = gap_lower_bound(s, q_hat, alpha, n).
double theoretical_threshold(std::size_t d, double s, std::size_t n, double alpha, double q_hat);

struct Estimate {
  double value = 0.0;
  double standard_error = 0.0;
  std::size_t trials = 0;
};

/// Monte Carlo estimate of Pr[w_i = 1] for the agreement census on a fixed
/// random tree with n vertices (one fresh coordinate per trial).
Estimate empirical_q(std::size_t n, double alpha, std::size_t trials, Seed seed);

/// Monte Carlo estimate of Pr[Z >= E Z + alpha sqrt(n)] for Z ~ Bin(n-1, 1/2).
Estimate binomial_tail_estimate(std::size_t n, double alpha, std::size_t trials, Seed seed);

}  // namespace rgr
