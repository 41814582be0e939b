#include "rgr/tree_realizer.hpp"

#include <gmpxx.h>

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <ostream>
#include <stdexcept>

namespace rgr {
namespace {

void check_alpha(double alpha) {
  if (!(alpha > 0.0 && alpha < 0.5)) throw std::invalid_argument("alpha must lie in (0, 1/2)");
}

// True when (2k - m) / (2m) >= alpha / sqrt(n), i.e. k/m >= 1/2 + alpha/sqrt(n),
// evaluated exactly.
bool clears_margin(std::size_t k, std::size_t m, std::size_t n, const mpq_class& alpha_sq) {
  if (2 * k <= m) return false;
  const mpz_class excess = static_cast<unsigned long>(2 * k - m);
  const mpq_class lhs = mpq_class(excess * excess * static_cast<unsigned long>(n));
  const mpz_class mm = static_cast<unsigned long>(m);
  const mpq_class rhs = alpha_sq * mpq_class(4 * mm * mm);
  return lhs >= rhs;
}

void check_inputs(const Tree& tree, const Embedding& f) {
  if (tree.vertex_count() < 2) throw std::invalid_argument("tree realization needs n >= 2");
  if (f.vertex_count() != tree.vertex_count()) {
    throw std::invalid_argument("embedding must have one column per tree vertex");
  }
}

}  // namespace

void validate(const CensusParams& params) { check_alpha(params.alpha); }

CensusWindow::CensusWindow(std::size_t n, std::size_t edge_count, double alpha)
    : table_(edge_count + 1, 0) {
  check_alpha(alpha);
  const mpq_class a(alpha);
  const mpq_class alpha_sq = a * a;
  for (std::size_t k = 0; k <= edge_count; ++k) {
    const bool upper = 4 * k <= 3 * edge_count;
    table_[k] = upper && clears_margin(k, edge_count, n, alpha_sq);
  }
}

std::size_t CensusTrace::selected_count() const noexcept {
  return static_cast<std::size_t>(std::count(selected.begin(), selected.end(), std::uint8_t{1}));
}

double CensusTrace::q_hat() const noexcept {
  if (selected.empty()) return 0.0;
  return static_cast<double>(selected_count()) / static_cast<double>(selected.size());
}

void write_census_csv(std::ostream& out, const CensusTrace& trace) {
  out << "coordinate,agree_count,p_num,p_den,selected\n";
  for (std::size_t i = 0; i < trace.dimension(); ++i) {
    const std::size_t a = trace.agree_count[i];
    const std::size_t g = std::gcd(a, trace.edge_count);
    const std::size_t num = g == 0 ? 0 : a / g;
    const std::size_t den = g == 0 ? 0 : trace.edge_count / g;
    out << i << ',' << a << ',' << num << ',' << den << ',' << int{trace.selected[i]} << '\n';
  }
}

std::vector<std::uint32_t> census_counts(const Embedding& f, std::span<const Edge> edges) {
  const std::size_t d = f.dimension();
  std::vector<std::uint32_t> disagree(d, 0);
  for (const Edge& e : edges) {
    const auto a = f.column(e.u);
    const auto b = f.column(e.v);
    for (std::size_t k = 0; k < a.size(); ++k) {
      for (std::uint64_t diff = a[k] ^ b[k]; diff != 0; diff &= diff - 1) {
        ++disagree[k * 64 + static_cast<std::size_t>(std::countr_zero(diff))];
      }
    }
  }
  const auto m = static_cast<std::uint32_t>(edges.size());
  for (auto& c : disagree) c = m - c;
  return disagree;
}

TreeRealization realize_tree(const Tree& tree, const Embedding& f, const CensusParams& params) {
  check_inputs(tree, f);
  validate(params);
  if (params.variant == CensusVariant::random_sample) {
    WeightVector w = realize_tree_sampling(tree, f, params.sample_seed);
    CensusTrace trace{tree.edges().size(), census_counts(f, tree.edges()), {}};
    trace.selected.resize(w.size());
    for (std::size_t i = 0; i < w.size(); ++i) trace.selected[i] = w[i] != 0.0;
    return {std::move(w), std::move(trace)};
  }

  const std::size_t m = tree.edges().size();
  const CensusWindow window(tree.vertex_count(), m, params.alpha);
  CensusTrace trace{m, census_counts(f, tree.edges()), {}};
  trace.selected.resize(f.dimension());
  const bool flip = params.variant == CensusVariant::disagreement;
  for (std::size_t i = 0; i < f.dimension(); ++i) {
    const std::size_t a = trace.agree_count[i];
    trace.selected[i] = window.contains(flip ? m - a : a);
  }
  return {WeightVector::boolean(trace.selected), std::move(trace)};
}

WeightVector realize_tree_sampling(const Tree& tree, const Embedding& f, Seed seed) {
  check_inputs(tree, f);
  Rng rng(seed);
  const auto edges = tree.edges();
  std::vector<std::uint8_t> selected(f.dimension());
  for (std::size_t i = 0; i < f.dimension(); ++i) {
    const Edge& e = edges[rng.below(edges.size())];
    selected[i] = f.bit(e.u, i) == f.bit(e.v, i);
  }
  return WeightVector::boolean(selected);
}

double pr_agree_predicted(double p, std::size_t t) {
  const double bias = 2.0 * p - 1.0;
  double power = 1.0;
  for (std::size_t k = 0; k < t; ++k) power *= bias;
  return 0.5 * (1.0 + power);
}

double gap_lower_bound(double s, double q, double alpha, std::size_t n) {
  const double margin = alpha / std::sqrt(static_cast<double>(n));
  return s * s * q * (2.0 * margin) * (1.0 - margin);
}

std::size_t required_dimension_tree(std::size_t n) {
  if (n < 20) throw std::invalid_argument("the tree dimension bound is established for n >= 20");
  const double nn = static_cast<double>(n);
  return static_cast<std::size_t>(std::ceil(kTreeDimensionConstant * nn * std::log(nn)));
}

std::size_t dimension_from_gap(double s, double delta, std::size_t n) {
  if (!(delta > 0.0)) throw std::invalid_argument("gap must be positive");
  const double s2 = s * s;
  return static_cast<std::size_t>(
      std::ceil(6.0 * s2 * s2 * std::log(static_cast<double>(n)) / (delta * delta)));
}

double theoretical_threshold(std::size_t d, double s, std::size_t n, double alpha, double q_hat) {
  return static_cast<double>(d) * gap_lower_bound(s, q_hat, alpha, n) / 2.0;
}

Estimate empirical_q(std::size_t n, double alpha, std::size_t trials, Seed seed) {
  if (n < 2 || trials == 0) throw std::invalid_argument("empirical_q needs n >= 2 and trials >= 1");
  // Each trial is one coordinate, so a d = trials embedding covers all of them.
  const Tree tree = sample_random_tree(n, derive_seed(seed, 0));
  const Embedding f = sample_embedding(n, trials, 0.0, 1.0, derive_seed(seed, 1));
  const double q = realize_tree(tree, f, {alpha}).trace.q_hat();
  const double t = static_cast<double>(trials);
  return {q, std::sqrt(q * (1.0 - q) / t), trials};
}

Estimate binomial_tail_estimate(std::size_t n, double alpha, std::size_t trials, Seed seed) {
  if (n < 2 || trials == 0) {
    throw std::invalid_argument("tail estimate needs n >= 2 and trials >= 1");
  }
  check_alpha(alpha);
  const mpq_class a(alpha);
  const mpq_class alpha_sq = a * a;
  // Z >= (n-1)/2 + alpha sqrt(n)  <=>  (2Z - (n-1))^2 >= 4 alpha^2 n with 2Z > n-1.
  std::vector<std::uint8_t> hit(n, 0);
  for (std::size_t z = 0; z < n; ++z) {
    if (2 * z <= n - 1) continue;
    const mpz_class excess = static_cast<unsigned long>(2 * z - (n - 1));
    hit[z] = mpq_class(excess * excess) >= alpha_sq * mpq_class(4 * static_cast<unsigned long>(n));
  }
  Rng rng(seed);
  std::size_t count = 0;
  const std::size_t bits = n - 1;
  for (std::size_t t = 0; t < trials; ++t) {
    std::size_t z = 0;
    for (std::size_t left = bits; left > 0;) {
      const std::size_t take = left < 64 ? left : 64;
      std::uint64_t word = rng();
      if (take < 64) word &= (std::uint64_t{1} << take) - 1;
      z += static_cast<std::size_t>(std::popcount(word));
      left -= take;
    }
    count += hit[z];
  }
  const double q = static_cast<double>(count) / static_cast<double>(trials);
  return {q, std::sqrt(q * (1.0 - q) / static_cast<double>(trials)), trials};
}

}  // namespace rgr
