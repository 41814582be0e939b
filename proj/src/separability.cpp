#include "rgr/separability.hpp"

#include <algorithm>
#include <istream>
#include <limits>
#include <map>
#include <ostream>
#include <set>
#include <stdexcept>
#include <string>

#include "rgr/errors.hpp"
#include "rgr/exact_lp.hpp"

namespace rgr {
namespace {

void check_pair_inputs(const Graph& g, const Embedding& f) {
  if (g.vertex_count() < 2) throw std::invalid_argument("realization needs n >= 2");
  if (f.vertex_count() != g.vertex_count()) {
    throw std::invalid_argument("embedding must have one column per graph vertex");
  }
}

// Disagreement pattern of (u, v) as packed words.
std::vector<std::uint64_t> pattern(const Embedding& f, Vertex u, Vertex v) {
  const auto a = f.column(u);
  const auto b = f.column(v);
  std::vector<std::uint64_t> out(a.size());
  for (std::size_t k = 0; k < a.size(); ++k) out[k] = a[k] ^ b[k];
  return out;
}

bool pattern_bit(const std::vector<std::uint64_t>& p, std::size_t i) {
  return (p[i / 64] >> (i % 64)) & 1U;
}

mpq_class span_squared(const Embedding& f) {
  const mpq_class s(f.span());
  return s * s;
}

// Exact-count check of a Boolean hint; fills the witness when it realizes g.
std::optional<Witness> certify_hint(const Graph& g, const Embedding& f, const WeightVector& hint) {
  if (hint.mode() != WeightMode::boolean || hint.size() != f.dimension()) return std::nullopt;
  const std::size_t n = g.vertex_count();
  long long max_edge = -1;
  long long min_non = -1;
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v = u + 1; v < n; ++v) {
      const auto c = static_cast<long long>(disagreement_count(f, u, v, hint));
      if (g.has_edge(u, v)) {
        max_edge = std::max(max_edge, c);
      } else if (min_non < 0 || c < min_non) {
        min_non = c;
      }
    }
  }
  const mpq_class s2 = span_squared(f);
  const long long low = std::max(max_edge, 0LL);
  Witness w;
  w.weights.reserve(hint.size());
  for (double v : hint.values()) w.weights.emplace_back(v);
  if (min_non < 0) {
    w.theta = sgn(s2) == 0 ? mpq_class(1) : mpq_class(s2 * mpq_class(static_cast<long>(low + 1)));
    return w;
  }
  if (!(max_edge < min_non && min_non > 0) || sgn(s2) == 0) return std::nullopt;
  w.theta = s2 * mpq_class(static_cast<long>(low + min_non), 2L);
  w.theta.canonicalize();
  return w;
}

}  // namespace

RealizationReport verify_realization(const Graph& g, const Embedding& f, const WeightVector& w) {
  check_pair_inputs(g, f);
  if (w.size() != f.dimension()) {
    throw std::invalid_argument("embedding has dimension " + std::to_string(f.dimension()) +
                                " but weight vector has " + std::to_string(w.size()));
  }
  constexpr double inf = std::numeric_limits<double>::infinity();
  RealizationReport r;
  r.max_edge_dist = -inf;
  r.min_nonedge_dist = inf;
  const std::size_t n = g.vertex_count();
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v = u + 1; v < n; ++v) {
      const double dist = weighted_sq_distance(f, u, v, w);
      if (g.has_edge(u, v)) {
        r.max_edge_dist = std::max(r.max_edge_dist, dist);
      } else {
        r.min_nonedge_dist = std::min(r.min_nonedge_dist, dist);
      }
    }
  }
  r.realized = r.max_edge_dist < r.min_nonedge_dist && r.min_nonedge_dist > 0.0;
  if (r.realized) {
    r.window_low = std::max(r.max_edge_dist, 0.0);
    r.window_high = r.min_nonedge_dist;
  }
  return r;
}

WeightVector Witness::weight_vector() const {
  std::vector<double> values;
  values.reserve(weights.size());
  bool nonnegative = true;
  for (const auto& q : weights) {
    values.push_back(q.get_d());
    nonnegative = nonnegative && sgn(q) >= 0;
  }
  return nonnegative ? WeightVector::nonnegative(std::move(values))
                     : WeightVector::unrestricted(std::move(values));
}

FeasibilityResult lp_realizability(const Graph& g, const Embedding& f, LpMode mode,
                                   const WeightVector* hint) {
  check_pair_inputs(g, f);
  FeasibilityResult result;
  result.mode = mode;
  if (hint != nullptr) {
    if (auto w = certify_hint(g, f, *hint)) {
      result.feasible = true;
      result.from_hint = true;
      result.witness = std::move(*w);
      return result;
    }
  }

  // Distinct disagreement patterns, tagged 1 for edge and 2 for non-edge.
  const std::size_t n = g.vertex_count();
  std::map<std::vector<std::uint64_t>, int> patterns;
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v = u + 1; v < n; ++v) {
      int& tag = patterns[pattern(f, u, v)];
      tag |= g.has_edge(u, v) ? 1 : 2;
      if (tag == 3) return result;  // same point must sit on both sides
    }
  }

  const std::size_t d = f.dimension();
  const bool free = mode == LpMode::free;
  const std::size_t vars = (free ? 2 * d : d) + 1;
  const std::size_t theta = vars - 1;
  LinearFeasibility lp(vars);
  for (const auto& [p, tag] : patterns) {
    std::vector<mpq_class> row(vars, 0);
    for (std::size_t i = 0; i < d; ++i) {
      if (!pattern_bit(p, i)) continue;
      row[i] = 1;
      if (free) row[d + i] = -1;
    }
    row[theta] = -1;
    if (tag == 1) {
      lp.add(std::move(row), Relation::less_equal, -1);
    } else {
      lp.add(std::move(row), Relation::greater_equal, 1);
    }
  }
  std::vector<mpq_class> floor_row(vars, 0);
  floor_row[theta] = 1;
  lp.add(std::move(floor_row), Relation::greater_equal, 1);

  const auto x = lp.solve();
  if (!x) return result;
  const mpq_class s2 = span_squared(f);
  Witness w;
  w.weights.resize(d);
  for (std::size_t i = 0; i < d; ++i) {
    mpq_class v = free ? mpq_class((*x)[i] - (*x)[d + i]) : (*x)[i];
    if (sgn(s2) != 0) v /= s2;
    w.weights[i] = std::move(v);
  }
  w.theta = (*x)[theta];
  result.feasible = true;
  result.witness = std::move(w);
  return result;
}

bool witness_realizes(const Graph& g, const Embedding& f, const Witness& witness) {
  check_pair_inputs(g, f);
  if (witness.weights.size() != f.dimension()) {
    throw std::invalid_argument("witness dimension does not match the embedding");
  }
  if (sgn(witness.theta) <= 0) return false;
  const mpq_class s2 = span_squared(f);
  const std::size_t n = g.vertex_count();
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v = u + 1; v < n; ++v) {
      const auto p = pattern(f, u, v);
      mpq_class sum = 0;
      for (std::size_t i = 0; i < f.dimension(); ++i) {
        if (pattern_bit(p, i)) sum += witness.weights[i];
      }
      sum *= s2;
      const bool below = sum < witness.theta;
      if (below != g.has_edge(u, v)) return false;
    }
  }
  return true;
}

void write_witness(std::ostream& out, const Witness& witness) {
  out << "theta " << witness.theta.get_str() << '\n';
  for (const auto& q : witness.weights) out << q.get_str() << '\n';
}

Witness read_witness(std::istream& in) {
  std::string label;
  std::string token;
  if (!(in >> label >> token) || label != "theta") {
    throw FormatError("witness: expected 'theta p/q' first");
  }
  Witness w;
  try {
    w.theta = mpq_class(token);
    w.theta.canonicalize();
    while (in >> token) {
      mpq_class q(token);
      q.canonicalize();
      w.weights.push_back(std::move(q));
    }
  } catch (const std::invalid_argument&) {
    throw FormatError("witness: '" + token + "' is not a rational");
  }
  return w;
}

bool hulls_intersect(std::span<const FeatureVector> red, std::span<const FeatureVector> blue) {
  if (red.empty() || blue.empty()) throw std::invalid_argument("hull of an empty set");
  const std::size_t d = red.front().size();
  auto exact_set = [d](std::span<const FeatureVector> pts) {
    std::set<std::vector<mpq_class>> out;
    for (const auto& p : pts) {
      if (p.size() != d) throw std::invalid_argument("points of different dimension");
      std::vector<mpq_class> q;
      q.reserve(d);
      for (double v : p.entries) q.emplace_back(v);
      out.insert(std::move(q));
    }
    return out;
  };
  const auto r = exact_set(red);
  const auto b = exact_set(blue);
  for (const auto& p : r) {
    if (b.count(p)) return true;
  }

  // lambda over red, mu over blue: both sum to 1, sum lambda r = sum mu b.
  const std::size_t vars = r.size() + b.size();
  LinearFeasibility lp(vars);
  std::vector<mpq_class> ones_r(vars, 0);
  std::vector<mpq_class> ones_b(vars, 0);
  for (std::size_t j = 0; j < r.size(); ++j) ones_r[j] = 1;
  for (std::size_t j = r.size(); j < vars; ++j) ones_b[j] = 1;
  lp.add(std::move(ones_r), Relation::equal, 1);
  lp.add(std::move(ones_b), Relation::equal, 1);
  for (std::size_t i = 0; i < d; ++i) {
    std::vector<mpq_class> row(vars, 0);
    std::size_t j = 0;
    for (const auto& p : r) row[j++] = p[i];
    for (const auto& p : b) row[j++] = -p[i];
    lp.add(std::move(row), Relation::equal, 0);
  }
  return lp.solve().has_value();
}

FeatureSplit split_features(const Graph& g, const Embedding& f) {
  if (f.vertex_count() != g.vertex_count()) {
    throw std::invalid_argument("embedding must have one column per graph vertex");
  }
  FeatureSplit out;
  const std::size_t n = g.vertex_count();
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v = u + 1; v < n; ++v) {
      (g.has_edge(u, v) ? out.edges : out.non_edges).push_back(feature_vector(f, u, v));
    }
  }
  return out;
}

bool radon_trial(std::size_t d, std::size_t m, Seed trial_seed, std::size_t* duplicates) {
  Rng rng(trial_seed);
  std::vector<std::vector<std::uint8_t>> points(m, std::vector<std::uint8_t>(d));
  for (auto& p : points) {
    std::uint64_t word = 0;
    for (std::size_t i = 0; i < d; ++i) {
      if (i % 64 == 0) word = rng();
      p[i] = (word >> (i % 64)) & 1U;
    }
  }
  if (duplicates != nullptr) {
    std::set<std::vector<std::uint8_t>> seen;
    std::size_t dup = 0;
    for (const auto& p : points) dup += !seen.insert(p).second;
    *duplicates = dup;
  }
  std::vector<FeatureVector> red;
  std::vector<FeatureVector> blue;
  for (const auto& p : points) {
    FeatureVector fv{std::vector<double>(p.begin(), p.end())};
    ((rng() & 1U) ? red : blue).push_back(std::move(fv));
  }
  if (red.empty() || blue.empty()) return false;
  return hulls_intersect(red, blue);
}

RadonResult radon_experiment(std::size_t d, std::size_t m, std::size_t trials, Seed seed) {
  if (d == 0 || m < 2 || trials == 0) {
    throw std::invalid_argument("radon experiment needs d >= 1, m >= 2, trials >= 1");
  }
  RadonResult out;
  out.trials = trials;
  double dup_total = 0.0;
  for (std::size_t t = 0; t < trials; ++t) {
    std::size_t dup = 0;
    out.intersecting += radon_trial(d, m, derive_seed(seed, t), &dup);
    dup_total += static_cast<double>(dup) / static_cast<double>(m);
  }
  out.fraction = static_cast<double>(out.intersecting) / static_cast<double>(trials);
  out.duplicate_rate = dup_total / static_cast<double>(trials);
  return out;
}

}  // namespace rgr
