#include "rgr/graph_realizer.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace rgr {

FamilySpec FamilySpec::forest_partition(const Graph& g) {
  ForestFamily family = rgr::forest_partition(g);
  const double r = family.min_inclusion();
  return FamilySpec(FamilyKind::forest_partition, std::move(family), r);
}

FamilySpec FamilySpec::spanning_trees(const Graph& g) {
  if (g.vertex_count() == 0 || !g.connected()) {
    throw std::invalid_argument("spanning-tree families need a connected graph");
  }
  double r = 1.0;
  if (g.edge_count() > 0) {
    const ResistanceTable table = effective_resistance(g);
    for (const Edge& e : g.edges()) r = std::min(r, table(e.u, e.v));
  }
  return FamilySpec(FamilyKind::spanning_trees, ForestFamily{}, r);
}

FamilySpec FamilySpec::explicit_family(ForestFamily family) {
  const double r = family.min_inclusion();
  return FamilySpec(FamilyKind::explicit_family, std::move(family), r);
}

FamilySampler::FamilySampler(const Graph& g, const FamilySpec& spec, Seed seed)
    : g_(g), spec_(spec), rng_(seed) {
  if (spec.kind() != FamilyKind::spanning_trees && spec.family().inclusion().size() != g.edge_count()) {
    throw std::invalid_argument("family does not belong to this graph");
  }
}

const std::vector<std::size_t>& FamilySampler::next() {
  if (spec_.kind() == FamilyKind::spanning_trees) {
    scratch_ = uniform_spanning_tree_edges(g_, rng_);
    member_id_ = kNoMemberId;
    return scratch_;
  }
  const auto members = spec_.family().members();
  if (members.empty()) throw std::logic_error("cannot sample from an empty family");
  // Zero-edge members carry no census signal; redraw.
  for (;;) {
    const auto id = static_cast<std::uint32_t>(rng_.below(members.size()));
    if (!members[id].empty()) {
      member_id_ = id;
      return members[id];
    }
  }
}

GraphRealization realize_graph(const Graph& g, const Embedding& f, const FamilySpec& family,
                               const CensusParams& params, Seed seed) {
  validate(params);
  if (f.vertex_count() != g.vertex_count()) {
    throw std::invalid_argument("embedding must have one column per graph vertex");
  }
  const std::size_t d = f.dimension();
  if (g.edge_count() == 0) return {WeightVector::ones(d), {}};

  const bool by_member = family.kind() != FamilyKind::spanning_trees;
  const bool flip = params.variant == CensusVariant::disagreement;
  const bool single_edge = params.variant == CensusVariant::random_sample;

  // Per-member agreement counts over all coordinates, for indexed families.
  std::vector<std::vector<std::uint32_t>> member_counts;
  if (by_member && !single_edge) {
    for (const auto& member : family.family().members()) {
      std::vector<Edge> edges;
      for (std::size_t e : member) edges.push_back(g.edges()[e]);
      member_counts.push_back(census_counts(f, edges));
    }
  }

  std::map<std::size_t, CensusWindow> windows;
  auto window_for = [&](std::size_t m) -> const CensusWindow& {
    auto it = windows.find(m);
    if (it == windows.end()) {
      it = windows.emplace(m, CensusWindow(g.vertex_count(), m, params.alpha)).first;
    }
    return it->second;
  };

  FamilySampler sampler(g, family, seed);
  Rng edge_rng(derive_seed(seed, 1));
  std::vector<std::uint8_t> selected(d, 0);
  std::vector<std::uint32_t> ids;
  if (by_member) ids.resize(d);
  for (std::size_t i = 0; i < d; ++i) {
    const auto& member = sampler.next();
    if (by_member) ids[i] = sampler.member_id();
    if (single_edge) {
      const Edge& e = g.edges()[member[edge_rng.below(member.size())]];
      selected[i] = f.bit(e.u, i) == f.bit(e.v, i);
      continue;
    }
    const std::size_t m = member.size();
    std::size_t agree = 0;
    if (by_member) {
      agree = member_counts[sampler.member_id()][i];
    } else {
      for (std::size_t e : member) {
        const Edge& ed = g.edges()[e];
        agree += f.bit(ed.u, i) == f.bit(ed.v, i);
      }
    }
    selected[i] = window_for(m).contains(flip ? m - agree : agree);
  }
  return {WeightVector::boolean(selected), std::move(ids)};
}

SparserSideRealization realize_graph_sparser_side(const Graph& g, const Embedding& f,
                                                  const CensusParams& params, Seed seed) {
  const Graph other = complement(g);
  FamilySpec direct = FamilySpec::forest_partition(g);
  FamilySpec flipped = FamilySpec::forest_partition(other);
  if (flipped.family().size() < direct.family().size()) {
    CensusParams inverted = params;
    inverted.variant = params.variant == CensusVariant::disagreement ? CensusVariant::agreement
                                                                      : CensusVariant::disagreement;
    const std::size_t k = flipped.family().size();
    return {realize_graph(other, f, flipped, inverted, seed), true, k};
  }
  const std::size_t k = direct.family().size();
  return {realize_graph(g, f, direct, params, seed), false, k};
}

std::size_t predict_dimension_graph(std::size_t n, double r_min, double constant) {
  if (!(r_min > 0.0 && r_min <= 1.0)) throw std::invalid_argument("r_min must lie in (0, 1]");
  if (n == 0) throw std::invalid_argument("n must be positive");
  const double nn = static_cast<double>(n);
  return static_cast<std::size_t>(std::ceil(constant * (nn / (r_min * r_min)) * std::log(nn)));
}

std::size_t arboricity_upper_bound(std::size_t m) {
  std::size_t a = static_cast<std::size_t>(std::sqrt(static_cast<double>(m) / 2.0));
  while (a > 0 && 2 * (a - 1) * (a - 1) >= m) --a;
  while (2 * a * a < m) ++a;
  return a;
}

std::size_t worst_case_dimension(std::size_t n, std::size_t m) {
  if (m == 0) return 0;
  return predict_dimension_graph(n, 1.0 / static_cast<double>(arboricity_upper_bound(m)));
}

}  // namespace rgr
