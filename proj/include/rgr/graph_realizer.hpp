#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "rgr/embedding.hpp"
#include "rgr/graph.hpp"
#include "rgr/tree_realizer.hpp"

namespace rgr {

enum class FamilyKind { forest_partition, spanning_trees, explicit_family };

/// Covering family of acyclic subgraphs plus its smallest per-edge inclusion
/// probability r_min.
class FamilySpec {
 public:
  /// Edge-disjoint balanced forests; r_min = 1/k.
  static FamilySpec forest_partition(const Graph& g);

  /// All spanning trees under the uniform distribution; r_min is the smallest
  /// edge effective resistance. Throws std::invalid_argument if g is
  /// disconnected.
  static FamilySpec spanning_trees(const Graph& g);

  static FamilySpec explicit_family(ForestFamily family);

  FamilyKind kind() const noexcept { return kind_; }
  /// Members for partition/explicit kinds; empty for spanning trees.
  const ForestFamily& family() const noexcept { return family_; }
  double r_min() const noexcept { return r_min_; }

 private:
  FamilySpec(FamilyKind kind, ForestFamily family, double r_min)
      : kind_(kind), family_(std::move(family)), r_min_(r_min) {}

  FamilyKind kind_;
  ForestFamily family_;
  double r_min_;
};

/// Draws family members from one stream.
class FamilySampler {
 public:
  FamilySampler(const Graph& g, const FamilySpec& spec, Seed seed);

  /// Edge indices (into g.edges()) of the next member; never empty while g
  /// has edges. member_id() then names it (partition/explicit kinds) or is
  /// kNoMemberId (spanning trees).
  const std::vector<std::size_t>& next();
  std::uint32_t member_id() const noexcept { return member_id_; }

  static constexpr std::uint32_t kNoMemberId = 0xffffffffU;

 private:
  const Graph& g_;
  const FamilySpec& spec_;
  Rng rng_;
  std::vector<std::size_t> scratch_;
  std::uint32_t member_id_ = kNoMemberId;
};

struct GraphRealization {
  WeightVector weights;
  /// Member used at each coordinate; empty for spanning-tree families.
  std::vector<std::uint32_t> member_ids;
};

/// Boolean weights by running the census, at every coordinate, over a member
/// drawn afresh from the family. The selection window keeps n = |V| and uses
/// the member's edge count as denominator. Empty graphs get all-ones weights.
GraphRealization realize_graph(const Graph& g, const Embedding& f, const FamilySpec& family,
                               const CensusParams& params = {}, Seed seed = 0);

/// Realizes g through whichever of g and its complement has the smaller
/// forest partition; the complement side runs the disagreement census.
struct SparserSideRealization {
  GraphRealization realization;
  bool used_complement = false;
  std::size_t member_count = 0;
};
SparserSideRealization realize_graph_sparser_side(const Graph& g, const Embedding& f,
                                                  const CensusParams& params = {},
                                                  Seed seed = 0);

/// ceil(constant * (n / r_min^2) * ln n). Throws std::invalid_argument unless
/// 0 < r_min <= 1 and n >= 1.
std::size_t predict_dimension_graph(std::size_t n, double r_min,
                                    double constant = kTreeDimensionConstant);

/// Smallest a with a >= sqrt(m/2).
std::size_t arboricity_upper_bound(std::size_t m);

/// predict_dimension_graph with r_min = 1 / ceil(sqrt(m/2)); 0 when m = 0.
std::size_t worst_case_dimension(std::size_t n, std::size_t m);

}  // namespace rgr
