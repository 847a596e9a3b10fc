#pragma once

// Edge-transitivity taxonomy of a graph from its automorphism group, with
// girth, diameter, short-cycle census and worthiness diagnostics.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "bct/graph.hpp"
#include "bct/permgroup.hpp"

namespace bct {

/// Shortest cycle length, or nothing for forests.
inline std::optional<std::size_t> girth(const Graph& g) {
  std::optional<std::size_t> best;
  const std::size_t n = g.order();
  std::vector<std::int64_t> dist(n), parent(n);
  std::vector<Point> queue;
  for (Point root = 0; root < n; ++root) {
    std::fill(dist.begin(), dist.end(), -1);
    queue.assign(1, root);
    dist[root] = 0;
    parent[root] = -1;
    for (std::size_t qi = 0; qi < queue.size(); ++qi) {
      Point u = queue[qi];
      if (best && static_cast<std::size_t>(2 * dist[u] + 1) >= *best) break;
      for (Point w : g.neighbours(u)) {
        if (dist[w] < 0) {
          dist[w] = dist[u] + 1;
          parent[w] = u;
          queue.push_back(w);
        } else if (parent[u] != static_cast<std::int64_t>(w)) {
          auto len = static_cast<std::size_t>(dist[u] + dist[w] + 1);
          if (!best || len < *best) best = len;
        }
      }
    }
  }
  return best;
}

/// Maximum eccentricity; nothing if disconnected or empty.
inline std::optional<std::size_t> diameter(const Graph& g) {
  if (g.order() == 0) return std::nullopt;
  std::size_t d = 0;
  for (Point v = 0; v < g.order(); ++v) {
    for (const auto& x : bfs_distances(g, v)) {
      if (!x) return std::nullopt;
      d = std::max(d, *x);
    }
  }
  return d;
}

/// Number of distinct cycles of length `len` through the edge {u, v}, each
/// counted once regardless of traversal direction.
inline std::size_t cycles_through_edge(const Graph& g, Edge e, std::size_t len) {
  if (len < 3 || !g.has_edge(e.first, e.second)) return 0;
  const Point target = e.first;
  std::vector<char> used(g.order(), 0);
  used[e.first] = used[e.second] = 1;
  std::size_t count = 0;
  // Simple paths v -> u of length len - 1; the first step never returns to u
  // when len > 2, so each cycle through u-v is met exactly once.
  auto dfs = [&](auto& self, Point x, std::size_t depth) -> void {
    for (Point y : g.neighbours(x)) {
      if (depth + 1 == len - 1) {
        if (y == target) ++count;
        continue;
      }
      if (used[y]) continue;
      used[y] = 1;
      self(self, y, depth + 1);
      used[y] = 0;
    }
  };
  dfs(dfs, e.second, 0);
  return count;
}

/// Sides of a proper 2-colouring, or nothing when the graph is not bipartite.
inline std::optional<std::pair<std::vector<Point>, std::vector<Point>>> bipartition(const Graph& g) {
  std::vector<int> side(g.order(), -1);
  for (Point s = 0; s < g.order(); ++s) {
    if (side[s] >= 0) continue;
    side[s] = 0;
    std::vector<Point> stack{s};
    while (!stack.empty()) {
      Point u = stack.back();
      stack.pop_back();
      for (Point w : g.neighbours(u)) {
        if (side[w] < 0) {
          side[w] = 1 - side[u];
          stack.push_back(w);
        } else if (side[w] == side[u]) {
          return std::nullopt;
        }
      }
    }
  }
  std::pair<std::vector<Point>, std::vector<Point>> out;
  for (Point v = 0; v < g.order(); ++v) (side[v] == 0 ? out.first : out.second).push_back(v);
  return out;
}

struct WorthinessResult {
  bool worthy = true;
  std::optional<std::pair<Point, Point>> offending_pair;
};

/// A graph is worthy when no two vertices have the same neighbourhood.
inline WorthinessResult is_worthy(const Graph& g) {
  std::map<std::vector<Point>, Point> seen;
  for (Point v = 0; v < g.order(); ++v) {
    auto [it, inserted] = seen.emplace(g.neighbours(v), v);
    if (!inserted) return WorthinessResult{false, std::make_pair(it->second, v)};
  }
  return {};
}

struct EdgeCycleCensus {
  Edge edge;
  std::size_t four_cycles = 0;
  std::size_t six_cycles = 0;
};

struct SymmetryReport {
  std::size_t order = 0;
  std::size_t edges = 0;
  std::optional<std::size_t> valency;
  std::optional<std::pair<std::size_t, std::size_t>> bipartite_valencies;
  std::optional<std::size_t> girth;
  std::optional<std::size_t> diameter;
  std::optional<std::uint64_t> aut_order;  // absent when above 2^64
  std::string aut_order_decimal;
  bool connected = false;
  bool bipartite = false;
  bool vertex_transitive = false;
  bool edge_transitive = false;
  bool arc_transitive = false;
  bool two_arc_transitive = false;
  bool three_arc_transitive = false;
  bool half_arc_transitive = false;
  bool semisymmetric = false;
  bool edge_regular = false;
  std::optional<unsigned> s_arc_regular;  // largest s in {1, 2} with A regular on s-arcs
  bool worthy = false;
  std::size_t vertex_orbits = 0;
  std::size_t edge_orbits = 0;
  std::size_t arc_orbits = 0;
  std::vector<EdgeCycleCensus> cycle_census;  // one entry per edge orbit
};

/// Full classification; `aut` must be the automorphism group of `g`.
inline SymmetryReport classify(const Graph& g, const PermGroup& aut) {
  SymmetryReport r;
  r.order = g.order();
  r.edges = g.edge_count();
  r.valency = g.valency();
  r.aut_order = aut.try_order();
  r.aut_order_decimal = aut.order_decimal();
  r.connected = is_connected(g);
  auto bip = bipartition(g);
  r.bipartite = bip.has_value() && g.edge_count() > 0;
  if (r.bipartite && !r.valency) {
    auto common = [&g](const std::vector<Point>& part) -> std::optional<std::size_t> {
      if (part.empty()) return std::nullopt;
      for (Point v : part)
        if (g.degree(v) != g.degree(part.front())) return std::nullopt;
      return g.degree(part.front());
    };
    auto d0 = common(bip->first), d1 = common(bip->second);
    if (d0 && d1) r.bipartite_valencies = std::make_pair(*d0, *d1);
  }
  r.girth = girth(g);
  r.diameter = r.connected ? diameter(g) : std::nullopt;
  r.worthy = is_worthy(g).worthy;

  r.vertex_orbits = aut.orbits().size();
  auto edge_orb = orbits_on(aut, g, OrbitDomain::edges);
  auto arc_orb = orbits_on(aut, g, OrbitDomain::arcs);
  r.edge_orbits = edge_orb.count;
  r.arc_orbits = arc_orb.count;
  const bool has_edges = g.edge_count() > 0;
  r.vertex_transitive = r.vertex_orbits == 1;
  r.edge_transitive = has_edges && r.edge_orbits == 1;
  r.arc_transitive = has_edges && r.arc_orbits == 1;
  if (r.arc_transitive) {
    SArcIndex two(g, 2);
    if (two.size() > 0) {
      r.two_arc_transitive = orbits_on(aut, g, OrbitDomain::two_arcs).count == 1;
      if (r.two_arc_transitive) {
        SArcIndex three(g, 3);
        r.three_arc_transitive = three.size() > 0 && orbits_on(aut, g, OrbitDomain::three_arcs).count == 1;
      }
    }
  }
  r.half_arc_transitive = r.vertex_transitive && r.edge_transitive && !r.arc_transitive;
  r.semisymmetric = r.edge_transitive && !r.vertex_transitive && r.valency.has_value();
  r.edge_regular = r.edge_transitive && r.aut_order == std::uint64_t{g.edge_count()};
  if (r.arc_transitive && r.aut_order == std::uint64_t{2 * g.edge_count()}) r.s_arc_regular = 1;
  if (r.two_arc_transitive && r.aut_order == std::uint64_t{SArcIndex(g, 2).size()}) r.s_arc_regular = 2;

  for (const auto& rep : edge_orb.representatives) {
    Edge e{rep[0], rep[1]};
    r.cycle_census.push_back(EdgeCycleCensus{e, cycles_through_edge(g, e, 4), cycles_through_edge(g, e, 6)});
  }
  return r;
}

inline nlohmann::json report_to_json(const SymmetryReport& r) {
  auto opt = [](const auto& o) -> nlohmann::json { return o ? nlohmann::json(*o) : nlohmann::json(nullptr); };
  nlohmann::json census = nlohmann::json::array();
  for (const auto& c : r.cycle_census)
    census.push_back({{"edge", {c.edge.first, c.edge.second}}, {"four_cycles", c.four_cycles}, {"six_cycles", c.six_cycles}});
  nlohmann::json bv = nullptr;
  if (r.bipartite_valencies) bv = {r.bipartite_valencies->first, r.bipartite_valencies->second};
  return nlohmann::json{
      {"order", r.order},
      {"edges", r.edges},
      {"valency", opt(r.valency)},
      {"bipartite_valencies", bv},
      {"girth", opt(r.girth)},
      {"diameter", opt(r.diameter)},
      {"aut_order", opt(r.aut_order)},
      {"aut_order_decimal", r.aut_order_decimal},
      {"connected", r.connected},
      {"bipartite", r.bipartite},
      {"vertex_transitive", r.vertex_transitive},
      {"edge_transitive", r.edge_transitive},
      {"arc_transitive", r.arc_transitive},
      {"two_arc_transitive", r.two_arc_transitive},
      {"three_arc_transitive", r.three_arc_transitive},
      {"half_arc_transitive", r.half_arc_transitive},
      {"semisymmetric", r.semisymmetric},
      {"edge_regular", r.edge_regular},
      {"s_arc_regular", opt(r.s_arc_regular)},
      {"worthy", r.worthy},
      {"vertex_orbits", r.vertex_orbits},
      {"edge_orbits", r.edge_orbits},
      {"arc_orbits", r.arc_orbits},
      {"cycle_census", census},
  };
}

inline SymmetryReport report_from_json(const nlohmann::json& j) {
  SymmetryReport r;
  auto opt = [&j](const char* k) -> std::optional<std::size_t> {
    if (!j.contains(k) || j.at(k).is_null()) return std::nullopt;
    return j.at(k).get<std::size_t>();
  };
  r.order = j.at("order").get<std::size_t>();
  r.edges = j.at("edges").get<std::size_t>();
  r.valency = opt("valency");
  if (!j.at("bipartite_valencies").is_null())
    r.bipartite_valencies = std::make_pair(j["bipartite_valencies"][0].get<std::size_t>(),
                                           j["bipartite_valencies"][1].get<std::size_t>());
  r.girth = opt("girth");
  r.diameter = opt("diameter");
  if (!j.at("aut_order").is_null()) r.aut_order = j.at("aut_order").get<std::uint64_t>();
  r.aut_order_decimal = j.at("aut_order_decimal").get<std::string>();
  r.connected = j.at("connected").get<bool>();
  r.bipartite = j.at("bipartite").get<bool>();
  r.vertex_transitive = j.at("vertex_transitive").get<bool>();
  r.edge_transitive = j.at("edge_transitive").get<bool>();
  r.arc_transitive = j.at("arc_transitive").get<bool>();
  r.two_arc_transitive = j.at("two_arc_transitive").get<bool>();
  r.three_arc_transitive = j.at("three_arc_transitive").get<bool>();
  r.half_arc_transitive = j.at("half_arc_transitive").get<bool>();
  r.semisymmetric = j.at("semisymmetric").get<bool>();
  r.edge_regular = j.at("edge_regular").get<bool>();
  if (auto s = opt("s_arc_regular")) r.s_arc_regular = static_cast<unsigned>(*s);
  r.worthy = j.at("worthy").get<bool>();
  r.vertex_orbits = j.at("vertex_orbits").get<std::size_t>();
  r.edge_orbits = j.at("edge_orbits").get<std::size_t>();
  r.arc_orbits = j.at("arc_orbits").get<std::size_t>();
  for (const auto& c : j.at("cycle_census"))
    r.cycle_census.push_back(EdgeCycleCensus{{c["edge"][0].get<Point>(), c["edge"][1].get<Point>()},
                                             c["four_cycles"].get<std::size_t>(), c["six_cycles"].get<std::size_t>()});
  return r;
}

}  // namespace bct
