#pragma once

// Exhaustive searches over enumerated bi-Cayley triples, filtered by a
// symmetry predicate computed from the full automorphism group.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "bct/bicayley.hpp"
#include "bct/errors.hpp"
#include "bct/families.hpp"
#include "bct/graph_auto.hpp"
#include "bct/symmetry_classify.hpp"

namespace bct {

enum class Predicate {
  vertex_transitive,
  edge_transitive,
  arc_transitive,
  two_arc_transitive,
  half_arc_transitive,
  semisymmetric,
  edge_regular,
};

inline const char* to_string(Predicate p) {
  switch (p) {
    case Predicate::vertex_transitive: return "vertex_transitive";
    case Predicate::edge_transitive: return "edge_transitive";
    case Predicate::arc_transitive: return "arc_transitive";
    case Predicate::two_arc_transitive: return "two_arc_transitive";
    case Predicate::half_arc_transitive: return "half_arc_transitive";
    case Predicate::semisymmetric: return "semisymmetric";
    case Predicate::edge_regular: return "edge_regular";
  }
  return "edge_transitive";
}

inline Predicate predicate_from_string(const std::string& s) {
  for (auto p : {Predicate::vertex_transitive, Predicate::edge_transitive, Predicate::arc_transitive,
                 Predicate::two_arc_transitive, Predicate::half_arc_transitive, Predicate::semisymmetric,
                 Predicate::edge_regular})
    if (s == to_string(p)) return p;
  throw ValidationError("unknown predicate: " + s);
}

inline bool holds(Predicate p, const SymmetryReport& r) {
  switch (p) {
    case Predicate::vertex_transitive: return r.vertex_transitive;
    case Predicate::edge_transitive: return r.edge_transitive;
    case Predicate::arc_transitive: return r.arc_transitive;
    case Predicate::two_arc_transitive: return r.two_arc_transitive;
    case Predicate::half_arc_transitive: return r.half_arc_transitive;
    case Predicate::semisymmetric: return r.semisymmetric;
    case Predicate::edge_regular: return r.edge_regular;
  }
  return false;
}

namespace detail {

inline bool implies_edge_transitive(Predicate p) { return p != Predicate::vertex_transitive; }

/// Necessary conditions checked before computing Aut: edge-transitive graphs
/// have the same number of 4-cycles through every edge, semisymmetric graphs
/// are bipartite, vertex-transitive graphs have the same 4-cycle count at every
/// vertex.
inline bool passes_prefilter(Predicate p, const Graph& g) {
  if (p == Predicate::semisymmetric && !bipartition(g)) return false;
  const auto edges = g.edges();
  if (edges.empty()) return false;
  if (implies_edge_transitive(p)) {
    const std::size_t c0 = cycles_through_edge(g, edges.front(), 4);
    for (const auto& e : edges)
      if (cycles_through_edge(g, e, 4) != c0) return false;
  } else {
    std::vector<std::size_t> at(g.order(), 0);
    for (const auto& e : edges) {
      const std::size_t c = cycles_through_edge(g, e, 4);
      at[e.first] += c;
      at[e.second] += c;
    }
    for (std::size_t c : at)
      if (c != at.front()) return false;
  }
  return true;
}

}  // namespace detail

struct CensusHit {
  BiCayleyTriple triple;
  SymmetryReport report;
};

struct CensusSummary {
  std::size_t triples = 0;
  std::size_t classified = 0;
  std::size_t hits = 0;
};

/// Classifies every enumerated triple over `h` that survives the prefilter and
/// reports those satisfying `p`.
inline CensusSummary census(const GroupPtr& h, const EnumerationConstraints& c, Predicate p,
                            const std::function<void(const CensusHit&)>& on_hit, const AutOptions& opts = {}) {
  CensusSummary sum;
  enumerate_triples(h, c, [&](const BiCayleyTriple& t) {
    ++sum.triples;
    const auto bg = build_graph(t);
    if (!detail::passes_prefilter(p, bg.graph)) return true;
    ++sum.classified;
    const auto aut = automorphism_group(bg.graph, opts);
    auto rep = classify(bg.graph, aut);
    if (holds(p, rep)) {
      ++sum.hits;
      on_hit(CensusHit{t, std::move(rep)});
    }
    return true;
  });
  return sum;
}

/// Host groups named on the command line: "cyclic", "dihedral", "abelian".
inline std::vector<GroupPtr> host_groups(const std::string& host, std::size_t max_n) {
  std::vector<GroupPtr> out;
  if (host == "cyclic") {
    for (std::size_t n = 1; n <= max_n; ++n) out.push_back(detail::share(make_cyclic(n)));
  } else if (host == "dihedral") {
    for (std::size_t n = 3; n <= max_n; ++n) out.push_back(detail::share(make_dihedral(n)));
  } else if (host == "abelian") {
    out = abelian_groups_up_to(max_n);
  } else {
    throw ValidationError("unknown host family: " + host);
  }
  return out;
}

}  // namespace bct
