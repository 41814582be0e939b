#include "rgr/embedding.hpp"

#include <bit>
#include <iomanip>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "rgr/errors.hpp"

namespace rgr {
namespace {

std::uint64_t tail_mask(std::size_t d) {
  const std::size_t r = d % 64;
  return r == 0 ? ~std::uint64_t{0} : (std::uint64_t{1} << r) - 1;
}

void check_same_dimension(const Embedding& f, const WeightVector& w) {
  if (f.dimension() != w.size()) {
    throw std::invalid_argument("embedding has dimension " + std::to_string(f.dimension()) +
                                " but weight vector has " + std::to_string(w.size()));
  }
}

void check_vertex(const Embedding& f, Vertex u) {
  if (u >= f.vertex_count()) throw std::invalid_argument("vertex out of range for embedding");
}

// Calls fn(i) for every coordinate i where u and v differ, in increasing order.
template <typename Fn>
void for_each_disagreement(const Embedding& f, Vertex u, Vertex v, Fn&& fn) {
  const auto a = f.column(u);
  const auto b = f.column(v);
  for (std::size_t k = 0; k < a.size(); ++k) {
    for (std::uint64_t diff = a[k] ^ b[k]; diff != 0; diff &= diff - 1) {
      fn(k * 64 + static_cast<std::size_t>(std::countr_zero(diff)));
    }
  }
}

}  // namespace

Embedding::Embedding(std::size_t n, std::size_t d, double x, double y,
                     std::vector<std::uint64_t> bits)
    : n_(n), d_(d), x_(x), y_(y), words_(words_for(d)), bits_(std::move(bits)) {
  if (bits_.size() != n_ * words_) {
    throw std::invalid_argument("embedding bit storage has the wrong size");
  }
  if (words_ > 0) {
    const std::uint64_t keep = tail_mask(d_);
    for (std::size_t u = 0; u < n_; ++u) {
      if (bits_[u * words_ + words_ - 1] & ~keep) {
        throw std::invalid_argument("embedding has bits past its dimension");
      }
    }
  }
}

Embedding Embedding::from_rows(std::size_t n, std::size_t d, double x, double y,
                               std::span<const std::uint8_t> rows) {
  if (rows.size() != n * d) throw std::invalid_argument("row data must have d*n cells");
  const std::size_t words = words_for(d);
  std::vector<std::uint64_t> bits(n * words, 0);
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t u = 0; u < n; ++u) {
      const std::uint8_t cell = rows[i * n + u];
      if (cell > 1) throw std::invalid_argument("embedding cells must be 0 or 1");
      if (cell) bits[u * words + i / 64] |= std::uint64_t{1} << (i % 64);
    }
  }
  return Embedding(n, d, x, y, std::move(bits));
}

WeightVector::WeightVector(WeightMode mode, std::vector<double> values)
    : mode_(mode), values_(std::move(values)), mask_(Embedding::words_for(values_.size()), 0) {
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (values_[i] != 0.0) mask_[i / 64] |= std::uint64_t{1} << (i % 64);
  }
}

WeightVector WeightVector::boolean(std::span<const std::uint8_t> selected) {
  std::vector<double> values(selected.size());
  for (std::size_t i = 0; i < selected.size(); ++i) {
    if (selected[i] > 1) throw std::invalid_argument("Boolean weights must be 0 or 1");
    values[i] = selected[i];
  }
  return WeightVector(WeightMode::boolean, std::move(values));
}

WeightVector WeightVector::zeros(std::size_t d) {
  return WeightVector(WeightMode::boolean, std::vector<double>(d, 0.0));
}

WeightVector WeightVector::ones(std::size_t d) {
  return WeightVector(WeightMode::boolean, std::vector<double>(d, 1.0));
}

WeightVector WeightVector::nonnegative(std::vector<double> values) {
  for (double v : values) {
    if (!(v >= 0.0)) throw std::invalid_argument("nonnegative weights required");
  }
  return WeightVector(WeightMode::nonnegative, std::move(values));
}

WeightVector WeightVector::unrestricted(std::vector<double> values) {
  return WeightVector(WeightMode::unrestricted, std::move(values));
}

std::size_t WeightVector::nonzero_count() const noexcept {
  std::size_t count = 0;
  for (std::uint64_t word : mask_) count += static_cast<std::size_t>(std::popcount(word));
  return count;
}

WeightVector WeightVector::scaled(double c) const {
  if (c == 1.0) return *this;
  std::vector<double> values(values_);
  for (double& v : values) v *= c;
  if (mode_ != WeightMode::unrestricted && c >= 0.0) {
    return WeightVector(WeightMode::nonnegative, std::move(values));
  }
  return WeightVector(WeightMode::unrestricted, std::move(values));
}

Embedding sample_embedding(std::size_t n, std::size_t d, double x, double y, Seed seed) {
  if (n == 0 || d == 0) throw std::invalid_argument("embedding needs n >= 1 and d >= 1");
  const std::size_t words = Embedding::words_for(d);
  std::vector<std::uint64_t> bits(n * words);
  Rng rng(seed);
  const std::uint64_t keep = tail_mask(d);
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t k = 0; k < words; ++k) bits[u * words + k] = rng();
    bits[u * words + words - 1] &= keep;
  }
  return Embedding(n, d, x, y, std::move(bits));
}

std::size_t disagreement_count(const Embedding& f, Vertex u, Vertex v) {
  check_vertex(f, u);
  check_vertex(f, v);
  const auto a = f.column(u);
  const auto b = f.column(v);
  std::size_t count = 0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    count += static_cast<std::size_t>(std::popcount(a[k] ^ b[k]));
  }
  return count;
}

std::size_t disagreement_count(const Embedding& f, Vertex u, Vertex v, const WeightVector& w) {
  check_same_dimension(f, w);
  check_vertex(f, u);
  check_vertex(f, v);
  const auto a = f.column(u);
  const auto b = f.column(v);
  const auto m = w.mask();
  std::size_t count = 0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    count += static_cast<std::size_t>(std::popcount((a[k] ^ b[k]) & m[k]));
  }
  return count;
}

double weighted_disagreement(const Embedding& f, Vertex u, Vertex v, const WeightVector& w) {
  check_same_dimension(f, w);
  check_vertex(f, u);
  check_vertex(f, v);
  if (w.mode() == WeightMode::boolean) {
    return static_cast<double>(disagreement_count(f, u, v, w));
  }
  double total = 0.0;
  const auto values = w.values();
  for_each_disagreement(f, u, v, [&](std::size_t i) { total += values[i]; });
  return total;
}

double weighted_sq_distance(const Embedding& f, Vertex u, Vertex v, const WeightVector& w) {
  const double s = f.span();
  return s * s * weighted_disagreement(f, u, v, w);
}

double weighted_l1_distance(const Embedding& f, Vertex u, Vertex v, const WeightVector& w) {
  return f.span() * weighted_disagreement(f, u, v, w);
}

FeatureVector feature_vector(const Embedding& f, Vertex u, Vertex v) {
  check_vertex(f, u);
  check_vertex(f, v);
  const double s = f.span();
  FeatureVector g{std::vector<double>(f.dimension(), 0.0)};
  for_each_disagreement(f, u, v, [&](std::size_t i) { g.entries[i] = s * s; });
  return g;
}

double inner_product(const WeightVector& w, const FeatureVector& g) {
  if (w.size() != g.size()) throw std::invalid_argument("inner product of unequal lengths");
  double total = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) total += w[i] * g[i];
  return total;
}

void write_embedding(std::ostream& out, const Embedding& f, Seed seed) {
  out << f.vertex_count() << ' ' << f.dimension() << ' '
      << std::setprecision(std::numeric_limits<double>::max_digits10) << f.x() << ' ' << f.y()
      << ' ' << seed << '\n';
  std::string row(f.vertex_count(), '0');
  for (std::size_t i = 0; i < f.dimension(); ++i) {
    for (Vertex u = 0; u < f.vertex_count(); ++u) row[u] = f.bit(u, i) ? '1' : '0';
    out << row << '\n';
  }
}

EmbeddingDump read_embedding(std::istream& in) {
  std::size_t n = 0;
  std::size_t d = 0;
  double x = 0.0;
  double y = 0.0;
  Seed seed = 0;
  if (!(in >> n >> d >> x >> y >> seed)) throw FormatError("embedding: bad header 'n d x y seed'");
  std::vector<std::uint8_t> cells(n * d);
  std::string row;
  for (std::size_t i = 0; i < d; ++i) {
    if (!(in >> row) || row.size() != n) {
      throw FormatError("embedding: row " + std::to_string(i) + " must have " +
                        std::to_string(n) + " characters");
    }
    for (std::size_t u = 0; u < n; ++u) {
      if (row[u] != '0' && row[u] != '1') throw FormatError("embedding: cells must be '0'/'1'");
      cells[i * n + u] = row[u] == '1';
    }
  }
  return {Embedding::from_rows(n, d, x, y, cells), seed};
}

void write_weights(std::ostream& out, const WeightVector& w) {
  out << w.size() << '\n' << std::setprecision(std::numeric_limits<double>::max_digits10);
  for (double v : w.values()) out << v << '\n';
}

WeightVector read_weights(std::istream& in) {
  std::size_t d = 0;
  if (!(in >> d)) throw FormatError("weights: missing count");
  std::vector<double> values(d);
  bool boolean = true;
  bool nonnegative = true;
  for (auto& v : values) {
    if (!(in >> v)) throw FormatError("weights: expected " + std::to_string(d) + " values");
    boolean = boolean && (v == 0.0 || v == 1.0);
    nonnegative = nonnegative && v >= 0.0;
  }
  if (boolean) {
    std::vector<std::uint8_t> bits(values.begin(), values.end());
    return WeightVector::boolean(bits);
  }
  return nonnegative ? WeightVector::nonnegative(std::move(values))
                     : WeightVector::unrestricted(std::move(values));
}

}  // namespace rgr
