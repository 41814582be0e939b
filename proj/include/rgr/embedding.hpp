#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "rgr/graph.hpp"
#include "rgr/rng.hpp"

namespace rgr {

/// A map of n vertices into {x,y}^d, stored bit-packed per vertex: bit 0
/// stands for x and bit 1 for y. Every distance is a function of the
/// disagreement pattern scaled by the span s = |x - y|.
class Embedding {
 public:
  /// `bits` holds n columns of words_for(d) words each; bits past d must be 0.
  Embedding(std::size_t n, std::size_t d, double x, double y, std::vector<std::uint64_t> bits);

  /// Builds from a d x n 0/1 matrix given row by row (row i = coordinate i).
  static Embedding from_rows(std::size_t n, std::size_t d, double x, double y,
                             std::span<const std::uint8_t> rows);

  static constexpr std::size_t words_for(std::size_t d) noexcept { return (d + 63) / 64; }

  std::size_t vertex_count() const noexcept { return n_; }
  std::size_t dimension() const noexcept { return d_; }
  double x() const noexcept { return x_; }
  double y() const noexcept { return y_; }
  double span() const noexcept { return x_ < y_ ? y_ - x_ : x_ - y_; }

  std::size_t words_per_column() const noexcept { return words_; }
  std::span<const std::uint64_t> column(Vertex u) const {
    return {bits_.data() + static_cast<std::size_t>(u) * words_, words_};
  }

  /// True when coordinate i of vertex u is y.
  bool bit(Vertex u, std::size_t i) const {
    return (column(u)[i / 64] >> (i % 64)) & 1U;
  }
  double value(Vertex u, std::size_t i) const { return bit(u, i) ? y_ : x_; }

  /// Same cells over a different alphabet.
  Embedding relabeled(double x, double y) const { return Embedding(n_, d_, x, y, bits_); }

  friend bool operator==(const Embedding&, const Embedding&) = default;

 private:
  std::size_t n_;
  std::size_t d_;
  double x_;
  double y_;
  std::size_t words_;
  std::vector<std::uint64_t> bits_;
};

enum class WeightMode {
  boolean,      // every weight is 0 or 1
  nonnegative,  // every weight >= 0
  unrestricted  // any real, used when probing lower bounds
};

/// Per-coordinate weights. Boolean vectors also keep a packed mask so
/// distances reduce to masked popcounts.
class WeightVector {
 public:
  static WeightVector boolean(std::span<const std::uint8_t> selected);
  static WeightVector zeros(std::size_t d);
  static WeightVector ones(std::size_t d);
  /// Throws std::invalid_argument on a negative entry.
  static WeightVector nonnegative(std::vector<double> values);
  static WeightVector unrestricted(std::vector<double> values);

  std::size_t size() const noexcept { return values_.size(); }
  WeightMode mode() const noexcept { return mode_; }
  std::span<const double> values() const noexcept { return values_; }
  double operator[](std::size_t i) const { return values_[i]; }

  /// Bit i set iff weight i is nonzero.
  std::span<const std::uint64_t> mask() const noexcept { return mask_; }
  std::size_t nonzero_count() const noexcept;

  /// c * w. Positive c keeps nonnegativity; Boolean vectors become general
  /// nonnegative unless c == 1.
  WeightVector scaled(double c) const;

  friend bool operator==(const WeightVector& a, const WeightVector& b) {
    return a.mode_ == b.mode_ && a.values_ == b.values_;
  }

 private:
  WeightVector(WeightMode mode, std::vector<double> values);

  WeightMode mode_;
  std::vector<double> values_;
  std::vector<std::uint64_t> mask_;
};

/// g(u,v): squared coordinate differences, each entry 0 or s^2.
struct FeatureVector {
  std::vector<double> entries;

  std::size_t size() const noexcept { return entries.size(); }
  double operator[](std::size_t i) const { return entries[i]; }
  friend bool operator==(const FeatureVector&, const FeatureVector&) = default;
};

Embedding sample_embedding(std::size_t n, std::size_t d, double x, double y, Seed seed);

/// Number of coordinates where u and v differ (exact).
std::size_t disagreement_count(const Embedding& f, Vertex u, Vertex v);

/// Number of coordinates where u and v differ among the nonzero weights of w.
std::size_t disagreement_count(const Embedding& f, Vertex u, Vertex v, const WeightVector& w);

/// Sum of w_i over coordinates where u and v differ. Both distances below are
/// this sum times s^2 or s.
double weighted_disagreement(const Embedding& f, Vertex u, Vertex v, const WeightVector& w);

/// sum_i w_i (f(u)_i - f(v)_i)^2. Throws std::invalid_argument when the
/// dimensions of f and w differ.
double weighted_sq_distance(const Embedding& f, Vertex u, Vertex v, const WeightVector& w);

/// sum_i w_i |f(u)_i - f(v)_i|. Same error contract.
double weighted_l1_distance(const Embedding& f, Vertex u, Vertex v, const WeightVector& w);

FeatureVector feature_vector(const Embedding& f, Vertex u, Vertex v);

double inner_product(const WeightVector& w, const FeatureVector& g);

/// Dump format: header "n d x y seed", then d rows of n characters '0'/'1'.
void write_embedding(std::ostream& out, const Embedding& f, Seed seed);

struct EmbeddingDump {
  Embedding embedding;
  Seed seed;
};
EmbeddingDump read_embedding(std::istream& in);

/// Weight file: the count d, then d whitespace-separated values. Vectors with
/// only 0/1 entries load as Boolean, nonnegative ones as nonnegative.
void write_weights(std::ostream& out, const WeightVector& w);
WeightVector read_weights(std::istream& in);

}  // namespace rgr
