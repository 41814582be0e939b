#include "rgr/graph.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <limits>
#include <numeric>
#include <optional>
#include <queue>
#include <stdexcept>
#include <string>

namespace rgr {
namespace {

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n) {
    std::iota(parent_.begin(), parent_.end(), std::size_t{0});
  }

  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent_[a] = b;
    return true;
  }

 private:
  std::vector<std::size_t> parent_;
};

// Forests of a matroid partition, kept as adjacency lists so a path query
// costs one BFS over a single forest.
class ForestSet {
 public:
  ForestSet(const Graph& g) : g_(g), color_(g.edge_count(), -1) {}

  int count() const { return static_cast<int>(adj_.size()); }
  int color(std::size_t e) const { return color_[e]; }

  void add_forest() { adj_.emplace_back(g_.vertex_count()); }

  void place(std::size_t e, int forest) {
    if (color_[e] >= 0) unlink(e, color_[e]);
    color_[e] = forest;
    const Edge& ed = g_.edges()[e];
    adj_[forest][ed.u].emplace_back(ed.v, e);
    adj_[forest][ed.v].emplace_back(ed.u, e);
  }

  // Edge indices on the path between a and b in the given forest, or nullopt
  // when a and b lie in different components.
  std::optional<std::vector<std::size_t>> path(int forest, Vertex a, Vertex b) const {
    const auto& adj = adj_[forest];
    std::vector<std::size_t> via(g_.vertex_count(), kNone);
    std::vector<Vertex> prev(g_.vertex_count());
    std::vector<bool> seen(g_.vertex_count(), false);
    std::queue<Vertex> queue;
    queue.push(a);
    seen[a] = true;
    while (!queue.empty()) {
      const Vertex x = queue.front();
      queue.pop();
      if (x == b) break;
      for (const auto& [y, e] : adj[x]) {
        if (seen[y]) continue;
        seen[y] = true;
        via[y] = e;
        prev[y] = x;
        queue.push(y);
      }
    }
    if (!seen[b]) return std::nullopt;
    std::vector<std::size_t> edges;
    for (Vertex x = b; x != a; x = prev[x]) edges.push_back(via[x]);
    return edges;
  }

  // Inserts e into some forest by a shortest augmenting sequence of swaps.
  bool insert(std::size_t e0) {
    constexpr std::size_t kUnseen = kNone - 1;
    std::vector<std::size_t> from(g_.edge_count(), kUnseen);
    std::queue<std::size_t> queue;
    from[e0] = kNone;
    queue.push(e0);
    while (!queue.empty()) {
      const std::size_t e = queue.front();
      queue.pop();
      const Edge& ed = g_.edges()[e];
      for (int j = 0; j < count(); ++j) {
        if (j == color_[e]) continue;
        auto cycle = path(j, ed.u, ed.v);
        if (!cycle) {
          int target = j;
          for (std::size_t cur = e; cur != kNone; cur = from[cur]) {
            const int old = color_[cur];
            place(cur, target);
            target = old;
          }
          return true;
        }
        for (std::size_t f : *cycle) {
          if (from[f] == kUnseen) {
            from[f] = e;
            queue.push(f);
          }
        }
      }
    }
    return false;
  }

  std::vector<std::vector<std::size_t>> members() const {
    std::vector<std::vector<std::size_t>> out(adj_.size());
    for (std::size_t e = 0; e < color_.size(); ++e) out[color_[e]].push_back(e);
    return out;
  }

 private:
  static constexpr std::size_t kNone = static_cast<std::size_t>(-1);

  void unlink(std::size_t e, int forest) {
    const Edge& ed = g_.edges()[e];
    for (Vertex x : {ed.u, ed.v}) {
      auto& list = adj_[forest][x];
      list.erase(std::find_if(list.begin(), list.end(),
                              [e](const auto& entry) { return entry.second == e; }));
    }
  }

  const Graph& g_;
  std::vector<int> color_;
  std::vector<std::vector<std::vector<std::pair<Vertex, std::size_t>>>> adj_;
};

void check_vertex(const Graph& g, Vertex v) {
  if (v >= g.vertex_count()) {
    throw std::invalid_argument("vertex " + std::to_string(v) + " out of range");
  }
}

}  // namespace

Graph::Graph(std::size_t n) : n_(n), adjacency_(n), matrix_(n * n, 0) {}

Graph::Graph(std::size_t n, std::span<const Edge> edges) : Graph(n) {
  edges_.assign(edges.begin(), edges.end());
  std::sort(edges_.begin(), edges_.end());
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    const Edge& e = edges_[i];
    if (e.u == e.v) throw std::invalid_argument("self-loop at vertex " + std::to_string(e.u));
    if (e.v >= n) throw std::invalid_argument("edge endpoint out of range");
    if (i > 0 && edges_[i - 1] == e) {
      throw std::invalid_argument("duplicate edge (" + std::to_string(e.u) + "," +
                                  std::to_string(e.v) + ")");
    }
    adjacency_[e.u].push_back(e.v);
    adjacency_[e.v].push_back(e.u);
    matrix_[e.u * n + e.v] = 1;
    matrix_[e.v * n + e.u] = 1;
  }
}

std::size_t Graph::edge_index(Vertex a, Vertex b) const {
  if (!has_edge(a, b)) return edges_.size();
  const Edge key(a, b);
  return static_cast<std::size_t>(std::lower_bound(edges_.begin(), edges_.end(), key) -
                                  edges_.begin());
}

bool Graph::connected() const {
  if (n_ == 0) return true;
  std::vector<bool> seen(n_, false);
  std::vector<Vertex> stack{0};
  seen[0] = true;
  std::size_t reached = 1;
  while (!stack.empty()) {
    const Vertex x = stack.back();
    stack.pop_back();
    for (Vertex y : adjacency_[x]) {
      if (!seen[y]) {
        seen[y] = true;
        ++reached;
        stack.push_back(y);
      }
    }
  }
  return reached == n_;
}

Tree::Tree(Graph g) : graph_(std::move(g)) {
  const std::size_t n = graph_.vertex_count();
  if (n == 0) throw std::invalid_argument("a tree needs at least one vertex");
  if (graph_.edge_count() != n - 1) {
    throw std::invalid_argument("a tree on " + std::to_string(n) + " vertices needs " +
                                std::to_string(n - 1) + " edges");
  }
  if (!graph_.connected()) throw std::invalid_argument("graph is not connected");
  parent_.assign(n, 0);
  depth_.assign(n, 0);
  std::vector<bool> seen(n, false);
  std::queue<Vertex> queue;
  queue.push(0);
  seen[0] = true;
  while (!queue.empty()) {
    const Vertex x = queue.front();
    queue.pop();
    for (Vertex y : graph_.neighbors(x)) {
      if (seen[y]) continue;
      seen[y] = true;
      parent_[y] = x;
      depth_[y] = depth_[x] + 1;
      queue.push(y);
    }
  }
}

ForestFamily ForestFamily::from_members(const Graph& host,
                                        std::vector<std::vector<std::size_t>> members) {
  ForestFamily family;
  std::vector<std::size_t> hits(host.edge_count(), 0);
  for (auto& member : members) {
    std::sort(member.begin(), member.end());
    std::vector<Edge> edges;
    for (std::size_t e : member) {
      if (e >= host.edge_count()) throw std::invalid_argument("member edge index out of range");
      edges.push_back(host.edges()[e]);
    }
    if (std::adjacent_find(member.begin(), member.end()) != member.end()) {
      throw std::invalid_argument("member lists an edge twice");
    }
    if (!is_forest(host.vertex_count(), edges)) {
      throw std::invalid_argument("family member contains a cycle");
    }
    for (std::size_t e : member) ++hits[e];
  }
  family.inclusion_.resize(host.edge_count());
  for (std::size_t e = 0; e < hits.size(); ++e) {
    if (hits[e] == 0) {
      throw std::invalid_argument("family does not cover edge " + std::to_string(e));
    }
    family.inclusion_[e] = static_cast<double>(hits[e]) / static_cast<double>(members.size());
  }
  family.members_ = std::move(members);
  return family;
}

double ForestFamily::min_inclusion() const noexcept {
  if (inclusion_.empty()) return 1.0;
  return *std::min_element(inclusion_.begin(), inclusion_.end());
}

bool ForestFamily::pairwise_disjoint() const {
  std::size_t total = 0;
  for (const auto& m : members_) total += m.size();
  return total == inclusion_.size();
}

Graph complete_graph(std::size_t n) {
  std::vector<Edge> edges;
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v) edges.emplace_back(u, v);
  return Graph(n, edges);
}

Graph path_graph(std::size_t n) {
  std::vector<Edge> edges;
  for (Vertex u = 0; u + 1 < n; ++u) edges.emplace_back(u, u + 1);
  return Graph(n, edges);
}

Graph cycle_graph(std::size_t n) {
  if (n < 3) throw std::invalid_argument("a cycle needs at least 3 vertices");
  std::vector<Edge> edges;
  for (Vertex u = 0; u < n; ++u) edges.emplace_back(u, static_cast<Vertex>((u + 1) % n));
  return Graph(n, edges);
}

Graph star_graph(std::size_t n) {
  std::vector<Edge> edges;
  for (Vertex v = 1; v < n; ++v) edges.emplace_back(0, v);
  return Graph(n, edges);
}

Graph grid_graph(std::size_t rows, std::size_t cols) {
  std::vector<Edge> edges;
  auto id = [cols](std::size_t r, std::size_t c) { return static_cast<Vertex>(r * cols + c); };
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      if (c + 1 < cols) edges.emplace_back(id(r, c), id(r, c + 1));
      if (r + 1 < rows) edges.emplace_back(id(r, c), id(r + 1, c));
    }
  }
  return Graph(rows * cols, edges);
}

bool is_forest(std::size_t n, std::span<const Edge> edges) {
  DisjointSets sets(n);
  for (const Edge& e : edges) {
    if (!sets.unite(e.u, e.v)) return false;
  }
  return true;
}

Graph sample_er_graph(std::size_t n, double p, Seed seed) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("edge probability outside [0,1]");
  Rng rng(seed);
  std::vector<Edge> edges;
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v = u + 1; v < n; ++v) {
      if (rng.bernoulli(p)) edges.emplace_back(u, v);
    }
  }
  return Graph(n, edges);
}

Tree tree_from_pruefer(std::size_t n, std::span<const Vertex> sequence) {
  if (n < 2) throw std::invalid_argument("a Prüfer code needs n >= 2");
  if (sequence.size() != n - 2) throw std::invalid_argument("Prüfer code must have length n-2");
  std::vector<std::size_t> degree(n, 1);
  for (Vertex x : sequence) {
    if (x >= n) throw std::invalid_argument("Prüfer entry out of range");
    ++degree[x];
  }
  std::size_t ptr = 0;
  while (degree[ptr] != 1) ++ptr;
  std::size_t leaf = ptr;
  std::vector<Edge> edges;
  edges.reserve(n - 1);
  for (Vertex v : sequence) {
    edges.emplace_back(static_cast<Vertex>(leaf), v);
    if (--degree[v] == 1 && v < ptr) {
      leaf = v;
    } else {
      ++ptr;
      while (degree[ptr] != 1) ++ptr;
      leaf = ptr;
    }
  }
  edges.emplace_back(static_cast<Vertex>(leaf), static_cast<Vertex>(n - 1));
  return Tree(Graph(n, edges));
}

Tree sample_random_tree(std::size_t n, Seed seed) {
  if (n < 2) throw std::invalid_argument("random tree needs n >= 2");
  Rng rng(seed);
  std::vector<Vertex> code(n - 2);
  for (auto& x : code) x = static_cast<Vertex>(rng.below(n));
  return tree_from_pruefer(n, code);
}

ForestFamily forest_partition(const Graph& g) {
  ForestSet forests(g);
  for (std::size_t e = 0; e < g.edge_count(); ++e) {
    if (!forests.insert(e)) {
      forests.add_forest();
      forests.place(e, forests.count() - 1);
    }
  }
  auto members = forests.members();

  // Level member sizes. A smaller forest S and larger forest L always admit an
  // edge of L that keeps S acyclic (matroid augmentation). Among those, move
  // the one joining the two smallest components of S: long paths inside one
  // member couple the agreement of their endpoints once the census conditions
  // on the member's agreement count.
  const std::size_t n = g.vertex_count();
  while (members.size() > 1) {
    auto [small, large] = std::minmax_element(
        members.begin(), members.end(),
        [](const auto& a, const auto& b) { return a.size() < b.size(); });
    if (large->size() - small->size() < 2) break;
    DisjointSets sets(n);
    for (std::size_t e : *small) sets.unite(g.edges()[e].u, g.edges()[e].v);
    std::vector<std::size_t> comp_size(n, 0);
    for (Vertex v = 0; v < n; ++v) ++comp_size[sets.find(v)];
    auto movable = large->end();
    std::size_t best = std::numeric_limits<std::size_t>::max();
    for (auto it = large->begin(); it != large->end(); ++it) {
      const std::size_t a = sets.find(g.edges()[*it].u);
      const std::size_t b = sets.find(g.edges()[*it].v);
      if (a == b || comp_size[a] + comp_size[b] >= best) continue;
      best = comp_size[a] + comp_size[b];
      movable = it;
    }
    if (movable == large->end()) throw std::logic_error("forest rebalancing found no exchange");
    small->push_back(*movable);
    large->erase(movable);
  }
  return ForestFamily::from_members(g, std::move(members));
}

std::vector<std::size_t> uniform_spanning_tree_edges(const Graph& g, Rng& rng) {
  const std::size_t n = g.vertex_count();
  std::vector<bool> in_tree(n, false);
  std::vector<Vertex> next(n, 0);
  std::vector<std::size_t> edges;
  edges.reserve(n > 0 ? n - 1 : 0);
  if (n == 0) return edges;
  in_tree[0] = true;
  for (Vertex start = 0; start < n; ++start) {
    for (Vertex u = start; !in_tree[u]; u = next[u]) {
      const auto nbrs = g.neighbors(u);
      next[u] = nbrs[rng.below(nbrs.size())];
    }
    for (Vertex u = start; !in_tree[u]; u = next[u]) {
      in_tree[u] = true;
      edges.push_back(g.edge_index(u, next[u]));
    }
  }
  return edges;
}

Tree uniform_spanning_tree(const Graph& g, Seed seed) {
  if (g.vertex_count() == 0 || !g.connected()) {
    throw std::invalid_argument("uniform spanning tree needs a connected graph");
  }
  Rng rng(seed);
  std::vector<Edge> edges;
  for (std::size_t e : uniform_spanning_tree_edges(g, rng)) edges.push_back(g.edges()[e]);
  return Tree(Graph(g.vertex_count(), edges));
}

ResistanceTable effective_resistance(const Graph& g) {
  const std::size_t n = g.vertex_count();
  if (n == 0 || !g.connected()) {
    throw std::invalid_argument("effective resistance needs a connected graph");
  }
  const auto size = static_cast<Eigen::Index>(n);
  Eigen::MatrixXd laplacian = Eigen::MatrixXd::Zero(size, size);
  for (const Edge& e : g.edges()) {
    laplacian(e.u, e.u) += 1.0;
    laplacian(e.v, e.v) += 1.0;
    laplacian(e.u, e.v) -= 1.0;
    laplacian(e.v, e.u) -= 1.0;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(laplacian);
  const auto& lambda = solver.eigenvalues();
  const auto& vectors = solver.eigenvectors();
  const double cutoff = 1e-9 * std::max(lambda.maxCoeff(), 0.0);
  Eigen::MatrixXd pinv = Eigen::MatrixXd::Zero(size, size);
  for (Eigen::Index k = 0; k < size; ++k) {
    if (lambda(k) > cutoff) pinv += (vectors.col(k) / lambda(k)) * vectors.col(k).transpose();
  }
  std::vector<double> values(n * n, 0.0);
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = u + 1; v < n; ++v) {
      const auto a = static_cast<Eigen::Index>(u);
      const auto b = static_cast<Eigen::Index>(v);
      const double r = pinv(a, a) + pinv(b, b) - 2.0 * pinv(a, b);
      values[u * n + v] = r;
      values[v * n + u] = r;
    }
  }
  return ResistanceTable(n, std::move(values));
}

Graph complement(const Graph& g) {
  std::vector<Edge> edges;
  const std::size_t n = g.vertex_count();
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v)
      if (!g.has_edge(u, v)) edges.emplace_back(u, v);
  return Graph(n, edges);
}

std::size_t tree_path_length(const Tree& t, Vertex u, Vertex v) {
  check_vertex(t.graph(), u);
  check_vertex(t.graph(), v);
  std::size_t length = 0;
  while (t.depth(u) > t.depth(v)) { u = t.parent(u); ++length; }
  while (t.depth(v) > t.depth(u)) { v = t.parent(v); ++length; }
  while (u != v) {
    u = t.parent(u);
    v = t.parent(v);
    length += 2;
  }
  return length;
}

}  // namespace rgr
