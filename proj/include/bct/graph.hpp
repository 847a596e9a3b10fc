#pragma once

// Simple undirected graphs with sorted adjacency lists and a bit matrix for
// constant-time adjacency tests.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <queue>
#include <utility>
#include <vector>

#include "bct/errors.hpp"
#include "bct/permutation.hpp"

namespace bct {

using Edge = std::pair<Point, Point>;

class Graph {
 public:
  Graph() = default;
  explicit Graph(std::size_t n) : n_(n), adj_(n), words_((n + 63) / 64), bits_(n * words_, 0) {}

  /// Builds from an edge list; rejects loops and out-of-range endpoints,
  /// merges duplicate edges.
  static Graph from_edges(std::size_t n, const std::vector<Edge>& edges) {
    Graph g(n);
    for (auto [u, v] : edges) g.add_edge(u, v);
    return g;
  }

  std::size_t order() const noexcept { return n_; }
  const std::vector<Point>& neighbours(Point v) const { return adj_[v]; }
  std::size_t degree(Point v) const { return adj_[v].size(); }

  bool has_edge(Point u, Point v) const noexcept {
    return (bits_[static_cast<std::size_t>(u) * words_ + (v >> 6U)] >> (v & 63U)) & 1U;
  }

  /// Returns false when the edge was already present.
  bool add_edge(Point u, Point v) {
    if (u >= n_ || v >= n_) throw ValidationError("edge endpoint out of range");
    if (u == v) throw ValidationError("loops are not allowed");
    if (has_edge(u, v)) return false;
    set_bit(u, v);
    set_bit(v, u);
    adj_[u].insert(std::lower_bound(adj_[u].begin(), adj_[u].end(), v), v);
    adj_[v].insert(std::lower_bound(adj_[v].begin(), adj_[v].end(), u), u);
    ++edge_count_;
    return true;
  }

  std::size_t edge_count() const noexcept { return edge_count_; }

  /// Edges as (u, v) with u < v, lexicographically sorted.
  std::vector<Edge> edges() const {
    std::vector<Edge> out;
    out.reserve(edge_count_);
    for (Point u = 0; u < n_; ++u)
      for (Point v : adj_[u])
        if (u < v) out.emplace_back(u, v);
    return out;
  }

  /// Common valency, or nothing for irregular (or empty) graphs.
  std::optional<std::size_t> valency() const {
    if (n_ == 0) return std::nullopt;
    const std::size_t d = adj_[0].size();
    for (Point v = 1; v < n_; ++v)
      if (adj_[v].size() != d) return std::nullopt;
    return d;
  }

  bool is_automorphism(const Permutation& p) const {
    if (p.degree() != n_) return false;
    for (Point u = 0; u < n_; ++u) {
      if (adj_[p[u]].size() != adj_[u].size()) return false;
      for (Point v : adj_[u])
        if (!has_edge(p[u], p[v])) return false;
    }
    return true;
  }

  /// Graph with vertex v renamed to p[v].
  Graph relabel(const Permutation& p) const {
    Graph g(n_);
    for (auto [u, v] : edges()) g.add_edge(p[u], p[v]);
    return g;
  }

  friend bool operator==(const Graph& a, const Graph& b) { return a.n_ == b.n_ && a.adj_ == b.adj_; }

 private:
  void set_bit(Point u, Point v) { bits_[static_cast<std::size_t>(u) * words_ + (v >> 6U)] |= std::uint64_t{1} << (v & 63U); }

  std::size_t n_ = 0;
  std::vector<std::vector<Point>> adj_;
  std::size_t words_ = 0;
  std::vector<std::uint64_t> bits_;
  std::size_t edge_count_ = 0;
};

/// A graph with a vertex colouring; automorphisms must preserve colours.
struct ColoredGraph {
  Graph graph;
  std::vector<std::uint32_t> colors;  // empty means a single colour class

  ColoredGraph() = default;
  ColoredGraph(Graph g, std::vector<std::uint32_t> c = {}) : graph(std::move(g)), colors(std::move(c)) {  // NOLINT
    if (!colors.empty() && colors.size() != graph.order())
      throw ValidationError("colouring length does not match graph order");
  }

  std::uint32_t color(Point v) const { return colors.empty() ? 0 : colors[v]; }
};

/// BFS distances from v; unreachable vertices get nothing.
inline std::vector<std::optional<std::size_t>> bfs_distances(const Graph& g, Point v) {
  std::vector<std::optional<std::size_t>> dist(g.order());
  std::queue<Point> q;
  dist[v] = 0;
  q.push(v);
  while (!q.empty()) {
    Point u = q.front();
    q.pop();
    for (Point w : g.neighbours(u)) {
      if (!dist[w]) {
        dist[w] = *dist[u] + 1;
        q.push(w);
      }
    }
  }
  return dist;
}

inline bool is_connected(const Graph& g) {
  if (g.order() == 0) return true;
  auto d = bfs_distances(g, 0);
  return std::all_of(d.begin(), d.end(), [](const auto& x) { return x.has_value(); });
}

/// Cells Gamma_i(v) = {u : d(u, v) = i} for i = 0, 1, ... over the component of v.
inline std::vector<std::vector<Point>> distance_partition(const Graph& g, Point v) {
  auto dist = bfs_distances(g, v);
  std::vector<std::vector<Point>> cells;
  for (Point u = 0; u < g.order(); ++u) {
    if (!dist[u]) continue;
    if (cells.size() <= *dist[u]) cells.resize(*dist[u] + 1);
    cells[*dist[u]].push_back(u);
  }
  return cells;
}

}  // namespace bct
