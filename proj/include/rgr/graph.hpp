#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "rgr/rng.hpp"

namespace rgr {

using Vertex = std::uint32_t;

/// Unordered vertex pair, stored with u < v.
struct Edge {
  Vertex u = 0;
  Vertex v = 0;

  Edge() = default;
  Edge(Vertex a, Vertex b) : u(a < b ? a : b), v(a < b ? b : a) {}

  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Undirected simple graph on vertices 0..n-1. Immutable once built.
class Graph {
 public:
  Graph() = default;
  explicit Graph(std::size_t n);

  /// Throws std::invalid_argument on self-loops, duplicates, or out-of-range
  /// endpoints. Edges are kept in sorted order.
  Graph(std::size_t n, std::span<const Edge> edges);

  std::size_t vertex_count() const noexcept { return n_; }
  std::size_t edge_count() const noexcept { return edges_.size(); }
  std::span<const Edge> edges() const noexcept { return edges_; }
  std::span<const Vertex> neighbors(Vertex v) const { return adjacency_[v]; }
  std::size_t degree(Vertex v) const { return adjacency_[v].size(); }

  bool has_edge(Vertex a, Vertex b) const {
    return a != b && matrix_[static_cast<std::size_t>(a) * n_ + b] != 0;
  }

  /// Index of edge (a,b) in edges(), or edge_count() when absent.
  std::size_t edge_index(Vertex a, Vertex b) const;

  bool connected() const;

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.n_ == b.n_ && a.edges_ == b.edges_;
  }

 private:
  std::size_t n_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::vector<Vertex>> adjacency_;
  std::vector<std::uint8_t> matrix_;
};

/// A connected acyclic Graph with a parent/depth structure rooted at 0.
class Tree {
 public:
  /// Throws std::invalid_argument unless g is a tree with at least one vertex.
  explicit Tree(Graph g);

  const Graph& graph() const noexcept { return graph_; }
  std::size_t vertex_count() const noexcept { return graph_.vertex_count(); }
  std::span<const Edge> edges() const noexcept { return graph_.edges(); }

  /// Parent in the BFS tree rooted at vertex 0; the root is its own parent.
  Vertex parent(Vertex v) const { return parent_[v]; }
  std::size_t depth(Vertex v) const { return depth_[v]; }

 private:
  Graph graph_;
  std::vector<Vertex> parent_;
  std::vector<std::size_t> depth_;
};

/// Family of acyclic edge subsets of a host graph. Members hold indices into
/// host.edges(); inclusion[e] is the fraction of members containing edge e.
class ForestFamily {
 public:
  ForestFamily() = default;

  /// Validates that every member is acyclic and that the members cover every
  /// host edge. Throws std::invalid_argument otherwise.
  static ForestFamily from_members(const Graph& host,
                                   std::vector<std::vector<std::size_t>> members);

  std::size_t size() const noexcept { return members_.size(); }
  bool empty() const noexcept { return members_.empty(); }
  std::span<const std::vector<std::size_t>> members() const noexcept { return members_; }
  std::span<const double> inclusion() const noexcept { return inclusion_; }

  /// Smallest inclusion probability over host edges; 1 when the host has no edges.
  double min_inclusion() const noexcept;

  bool pairwise_disjoint() const;

 private:
  std::vector<std::vector<std::size_t>> members_;
  std::vector<double> inclusion_;
};

/// Symmetric table of effective resistances under unit edge resistances.
class ResistanceTable {
 public:
  ResistanceTable(std::size_t n, std::vector<double> values)
      : n_(n), values_(std::move(values)) {}

  std::size_t vertex_count() const noexcept { return n_; }
  double operator()(Vertex u, Vertex v) const {
    return values_[static_cast<std::size_t>(u) * n_ + v];
  }

 private:
  std::size_t n_;
  std::vector<double> values_;
};

// Named graphs used throughout tests and experiments.
Graph complete_graph(std::size_t n);
Graph path_graph(std::size_t n);
Graph cycle_graph(std::size_t n);
Graph star_graph(std::size_t n);
Graph grid_graph(std::size_t rows, std::size_t cols);

/// True when the edges form a forest on n vertices (union-find check).
bool is_forest(std::size_t n, std::span<const Edge> edges);

/// G(n, p): every pair (in lexicographic order) is an edge independently with
/// probability p.
Graph sample_er_graph(std::size_t n, double p, Seed seed);

/// Uniform labeled tree on n >= 2 vertices via Prüfer-sequence decoding.
Tree sample_random_tree(std::size_t n, Seed seed);

/// Decodes a Prüfer sequence of length n-2 with entries in [0, n).
Tree tree_from_pruefer(std::size_t n, std::span<const Vertex> sequence);

/// Edge-disjoint forests covering E with the minimum possible member count
/// (matroid-partition augmentation), rebalanced so member sizes differ by at
/// most one. Inclusion probability is 1/k for every edge.
ForestFamily forest_partition(const Graph& g);

/// Uniform spanning tree by Wilson's loop-erased random walk.
/// Throws std::invalid_argument if g is disconnected.
Tree uniform_spanning_tree(const Graph& g, Seed seed);

/// Spanning-tree edge sample drawn from an existing stream, for callers that
/// draw many trees. Requires g connected with at least one vertex; returns
/// edge indices into g.edges().
std::vector<std::size_t> uniform_spanning_tree_edges(const Graph& g, Rng& rng);

/// Effective resistances from the Laplacian pseudoinverse.
/// Throws std::invalid_argument if g is disconnected or empty.
ResistanceTable effective_resistance(const Graph& g);

Graph complement(const Graph& g);

/// Number of edges on the unique u-v path.
std::size_t tree_path_length(const Tree& t, Vertex u, Vertex v);

}  // namespace rgr
