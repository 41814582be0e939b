#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "rgr/embedding.hpp"
#include "rgr/graph.hpp"
#include "rgr/rng.hpp"

namespace rgr {

/// Outcome of checking "edge iff weighted squared distance < theta".
struct RealizationReport {
  /// -infinity when the graph has no edges.
  double max_edge_dist = 0.0;
  /// +infinity when the graph is complete.
  double min_nonedge_dist = 0.0;
  /// Some theta > 0 puts every edge strictly below it and every non-edge at
  /// or above it.
  bool realized = false;
  /// Open interval of valid thresholds when realized:
  /// (max(max_edge_dist, 0), min_nonedge_dist).
  double window_low = 0.0;
  double window_high = 0.0;

  double window_width() const noexcept { return realized ? window_high - window_low : 0.0; }
};

/// Throws std::invalid_argument when the dimensions of f and w differ, when f
/// and g disagree on n, or when n < 2.
RealizationReport verify_realization(const Graph& g, const Embedding& f, const WeightVector& w);

enum class LpMode {
  nonnegative,  // w >= 0
  free          // w unrestricted in sign
};

/// Exact weights and threshold in embedding units.
struct Witness {
  std::vector<mpq_class> weights;
  mpq_class theta;

  /// Nearest doubles, as nonnegative or unrestricted weights.
  WeightVector weight_vector() const;
};

struct FeasibilityResult {
  bool feasible = false;
  LpMode mode = LpMode::nonnegative;
  std::optional<Witness> witness;
  /// True when a supplied Boolean hint certified feasibility without the LP.
  bool from_hint = false;
};

/// Decides whether some (w, theta) with theta > 0 realizes g on f. Strict
/// inequalities are normalized to unit margins on features divided by s^2:
///   <w, h(e)> + 1 <= theta (edges),  <w, h(e')> >= theta + 1 (non-edges),
///   theta >= 1.
/// Infeasible verdicts always come from the exact simplex. A Boolean `hint`
/// that realizes g (checked with exact integer counts) short-cuts to
/// feasible. Requires n >= 2.
FeasibilityResult lp_realizability(const Graph& g, const Embedding& f, LpMode mode,
                                   const WeightVector* hint = nullptr);

/// Exact replay: every edge distance < theta <= every non-edge distance and
/// theta > 0, with all arithmetic in rationals.
bool witness_realizes(const Graph& g, const Embedding& f, const Witness& witness);

/// Text form: "theta p/q" then one "p/q" per line for each weight.
void write_witness(std::ostream& out, const Witness& witness);
Witness read_witness(std::istream& in);

/// True iff conv(red) and conv(blue) share a point, decided exactly (the
/// doubles are read as exact binary rationals). Throws std::invalid_argument
/// when either set is empty or dimensions differ.
bool hulls_intersect(std::span<const FeatureVector> red, std::span<const FeatureVector> blue);

/// Feature vectors of the edges and of the non-edges of g under f.
struct FeatureSplit {
  std::vector<FeatureVector> edges;
  std::vector<FeatureVector> non_edges;
};
FeatureSplit split_features(const Graph& g, const Embedding& f);

struct RadonResult {
  double fraction = 0.0;
  std::size_t intersecting = 0;
  std::size_t trials = 0;
  /// Mean fraction of sampled points that repeat an earlier point of their trial.
  double duplicate_rate = 0.0;
};

/// Samples m points of {0,1}^d with replacement, colors each by a fair coin,
/// and records whether the color hulls meet. A trial with an empty color
/// class counts as separable. Trial t uses derive_seed(seed, t).
RadonResult radon_experiment(std::size_t d, std::size_t m, std::size_t trials, Seed seed);

/// One trial of radon_experiment; exposed so callers can replay a trial seed.
bool radon_trial(std::size_t d, std::size_t m, Seed trial_seed, std::size_t* duplicates = nullptr);

}  // namespace rgr
