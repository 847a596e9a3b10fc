#pragma once

// Bi-Cayley graphs BiCay(H, R, L, S): construction, the sigma/delta
// permutations, the parameter sets F and I, the normaliser of R(H) and the
// "normal" transitivity predicates.
//
// Vertex ids: h in [0, n) is h_0, n + h is h_1, where n = |H|.

#include <algorithm>
#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "bct/errors.hpp"
#include "bct/graph.hpp"
#include "bct/group_core.hpp"
#include "bct/permgroup.hpp"
#include "bct/permutation.hpp"

namespace bct {

struct BiCayleyTriple {
  GroupPtr group;
  ElementSet R, L, S;

  const FiniteGroup& H() const { return *group; }
  std::size_t n() const { return group->order(); }
};

inline BiCayleyTriple validate_triple(GroupPtr h, ElementSet r, ElementSet l, ElementSet s) {
  if (!h) throw ValidationError("missing host group");
  r = make_set(std::move(r));
  l = make_set(std::move(l));
  s = make_set(std::move(s));
  for (const auto* set : {&r, &l, &s})
    for (Elem x : *set)
      if (x >= h->order()) throw ValidationError("element index " + std::to_string(x) + " out of range");
  if (!r.empty() && r.front() == 0) throw ValidationError("R contains the identity");
  if (!l.empty() && l.front() == 0) throw ValidationError("L contains the identity");
  if (inverse_set(*h, r) != r) throw ValidationError("R is not closed under inverses");
  if (inverse_set(*h, l) != l) throw ValidationError("L is not closed under inverses");
  if (r.size() != l.size()) throw ValidationError("|R| != |L|");
  return BiCayleyTriple{std::move(h), std::move(r), std::move(l), std::move(s)};
}

inline BiCayleyTriple validate_triple(const FiniteGroup& h, ElementSet r, ElementSet l, ElementSet s) {
  return validate_triple(std::make_shared<const FiniteGroup>(h), std::move(r), std::move(l), std::move(s));
}

/// (R, g^-1 L g, g^-1 S) for the least g in S, so that 1 lies in S.
inline BiCayleyTriple normalize_triple(const BiCayleyTriple& t) {
  if (t.S.empty()) throw ValidationError("S is empty; cannot normalise");
  const Elem g = t.S.front();
  if (g == 0) return t;
  const auto& h = t.H();
  return BiCayleyTriple{t.group, t.R, conjugate_set(h, t.L, g), left_translate(h, h.inv(g), t.S)};
}

struct BiCayleyGraph {
  BiCayleyTriple triple;
  Graph graph;
  bool connected = false;

  std::size_t n() const { return triple.n(); }

  std::string vertex_label(Point v) const {
    const std::size_t n0 = n();
    return triple.H().name(static_cast<Elem>(v % n0)) + (v < n0 ? "_0" : "_1");
  }

  std::vector<std::string> labels() const {
    std::vector<std::string> out;
    for (Point v = 0; v < graph.order(); ++v) out.push_back(vertex_label(v));
    return out;
  }
};

inline BiCayleyGraph build_graph(const BiCayleyTriple& t) {
  const auto& h = t.H();
  const auto n = static_cast<Point>(t.n());
  Graph g(2 * n);
  for (Elem x = 0; x < n; ++x) {
    for (Elem r : t.R) g.add_edge(x, h.mul(r, x));
    for (Elem l : t.L) g.add_edge(n + x, n + h.mul(l, x));
    for (Elem s : t.S) g.add_edge(x, n + h.mul(s, x));
  }
  BiCayleyGraph out{t, std::move(g), false};
  out.connected = is_connected(out.graph);
  return out;
}

// ---------------------------------------------------------------------------
// Permutations of the vertex set.

/// h_i -> (hg)_i
inline Permutation right_translation(const BiCayleyTriple& t, Elem g) {
  const auto& h = t.H();
  const auto n = static_cast<Point>(t.n());
  Permutation p;
  p.image.resize(2 * n);
  for (Elem x = 0; x < n; ++x) {
    p.image[x] = h.mul(x, g);
    p.image[n + x] = n + h.mul(x, g);
  }
  return p;
}

inline std::vector<Permutation> right_regular_generators(const BiCayleyTriple& t) {
  std::vector<Permutation> out;
  for (Elem g : t.H().generators()) out.push_back(right_translation(t, g));
  if (out.empty()) out.push_back(Permutation::identity(2 * t.n()));
  return out;
}

/// h_0 -> (h^a)_0, h_1 -> (g h^a)_1
inline Permutation sigma(const BiCayleyTriple& t, const GroupAutomorphism& a, Elem g) {
  const auto& h = t.H();
  const auto n = static_cast<Point>(t.n());
  Permutation p;
  p.image.resize(2 * n);
  for (Elem x = 0; x < n; ++x) {
    p.image[x] = a(x);
    p.image[n + x] = n + h.mul(g, a(x));
  }
  return p;
}

/// h_0 -> (x h^a)_1, h_1 -> (y h^a)_0
inline Permutation delta(const BiCayleyTriple& t, const GroupAutomorphism& a, Elem x, Elem y) {
  const auto& h = t.H();
  const auto n = static_cast<Point>(t.n());
  Permutation p;
  p.image.resize(2 * n);
  for (Elem e = 0; e < n; ++e) {
    p.image[e] = n + h.mul(x, a(e));
    p.image[n + e] = h.mul(y, a(e));
  }
  return p;
}

/// True when p = R(g) for some g (p maps 0 to g_0 and agrees with R(g)).
inline bool is_right_translation(const BiCayleyTriple& t, const Permutation& p) {
  if (p.degree() != 2 * t.n() || p[0] >= t.n()) return false;
  return p == right_translation(t, static_cast<Elem>(p[0]));
}

// ---------------------------------------------------------------------------
// F and I.

struct FPair {
  GroupAutomorphism alpha;
  Elem g;
};

struct ITriple {
  GroupAutomorphism alpha;
  Elem x, y;
};

/// All (alpha, g) with R^a = R, L^a = g^-1 L g, S^a = g^-1 S; sorted by (alpha, g).
inline std::vector<FPair> compute_F(const BiCayleyTriple& t, const std::vector<GroupAutomorphism>& auts) {
  const auto& h = t.H();
  std::vector<FPair> out;
  for (const auto& a : auts) {
    if (a.apply(t.R) != t.R) continue;
    const ElementSet l_img = a.apply(t.L);
    const ElementSet s_img = a.apply(t.S);
    std::vector<Elem> candidates;
    if (t.S.empty()) {
      candidates.resize(h.order());
      std::iota(candidates.begin(), candidates.end(), Elem{0});
    } else {
      // g s^a lies in S for every s, so g lies in S (t^a)^-1 for a fixed t in S.
      const Elem t_img_inv = h.inv(a(t.S.front()));
      for (Elem s : t.S) candidates.push_back(h.mul(s, t_img_inv));
      candidates = make_set(std::move(candidates));
    }
    for (Elem g : candidates) {
      if (left_translate(h, h.inv(g), t.S) != s_img) continue;
      if (conjugate_set(h, t.L, g) != l_img) continue;
      out.push_back(FPair{a, g});
    }
  }
  return out;
}

inline std::vector<FPair> compute_F(const BiCayleyTriple& t) { return compute_F(t, enumerate_automorphisms(t.H())); }

/// All (alpha, x, y) with R^a = x^-1 L x, L^a = y^-1 R y, S^a = y^-1 S^-1 x;
/// sorted by (alpha, x, y).
inline std::vector<ITriple> compute_I(const BiCayleyTriple& t, const std::vector<GroupAutomorphism>& auts) {
  const auto& h = t.H();
  const ElementSet s_inv = inverse_set(h, t.S);
  std::vector<ITriple> out;
  for (const auto& a : auts) {
    const ElementSet r_img = a.apply(t.R);
    const ElementSet l_img = a.apply(t.L);
    const ElementSet s_img = a.apply(t.S);
    std::vector<std::pair<Elem, Elem>> candidates;
    for (Elem y = 0; y < h.order(); ++y) {
      if (t.S.empty()) {
        for (Elem x = 0; x < h.order(); ++x) candidates.emplace_back(x, y);
        continue;
      }
      // t^a = y^-1 u^-1 x for some u in S, hence x = u y t^a.
      const Elem t_img = a(t.S.front());
      for (Elem u : t.S) candidates.emplace_back(h.mul(h.mul(u, y), t_img), y);
    }
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
    for (auto [x, y] : candidates) {
      if (right_translate(h, left_translate(h, h.inv(y), s_inv), x) != s_img) continue;
      if (conjugate_set(h, t.L, x) != r_img) continue;
      if (conjugate_set(h, t.R, y) != l_img) continue;
      out.push_back(ITriple{a, x, y});
    }
  }
  return out;
}

inline std::vector<ITriple> compute_I(const BiCayleyTriple& t) { return compute_I(t, enumerate_automorphisms(t.H())); }

// ---------------------------------------------------------------------------
// Normaliser of R(H).

enum class NormaliserShape { semidirect_F, extended_by_delta };

inline const char* to_string(NormaliserShape s) {
  return s == NormaliserShape::semidirect_F ? "R(H):F" : "R(H).<F,delta>";
}

struct NormaliserDescription {
  std::vector<FPair> F;
  std::vector<ITriple> I;
  std::vector<Permutation> generators;
  NormaliserShape shape = NormaliserShape::semidirect_F;
  PermGroup group;
};

inline void require_connected(const BiCayleyGraph& g) {
  if (!g.connected) throw DisconnectedGraph("bi-Cayley graph is disconnected");
}

inline NormaliserDescription normaliser_group(const BiCayleyGraph& g, const std::vector<GroupAutomorphism>& auts) {
  require_connected(g);
  const auto& t = g.triple;
  NormaliserDescription d;
  d.F = compute_F(t, auts);
  d.I = compute_I(t, auts);
  for (Elem h : t.H().generators()) d.generators.push_back(right_translation(t, h));
  for (const auto& f : d.F) d.generators.push_back(sigma(t, f.alpha, f.g));
  if (!d.I.empty()) {
    d.generators.push_back(delta(t, d.I.front().alpha, d.I.front().x, d.I.front().y));
    d.shape = NormaliserShape::extended_by_delta;
  }
  d.group = PermGroup(2 * t.n(), d.generators, {0});
  return d;
}

inline NormaliserDescription normaliser_group(const BiCayleyGraph& g) {
  return normaliser_group(g, enumerate_automorphisms(g.triple.H()));
}

// ---------------------------------------------------------------------------
// Cayley realisation when some delta_{a,1,1} with a^2 = 1 lies in I.

struct CayleyRealization {
  FiniteGroup group;            // element v is the unique k with (1_0)^k = v
  ElementSet connection_set;    // elements adjacent to the identity
  GroupAutomorphism alpha;
};

inline CayleyRealization cayley_realization(const BiCayleyGraph& g, const std::vector<ITriple>& I) {
  const auto& t = g.triple;
  const ITriple* witness = nullptr;
  for (const auto& it : I) {
    if (it.x == 0 && it.y == 0 && it.alpha.then(it.alpha).is_identity()) {
      witness = &it;
      break;
    }
  }
  if (!witness) throw ValidationError("no delta_{alpha,1,1} with alpha^2 = 1 in I");
  const Permutation d = delta(t, witness->alpha, 0, 0);
  const auto n = static_cast<Point>(t.n());
  // k_v as a permutation: R(h) for v = h_0 and delta R(h) for v = h_1.
  std::vector<Permutation> k(2 * n);
  for (Elem h = 0; h < n; ++h) {
    k[h] = right_translation(t, h);
    k[n + h] = d.then(k[h]);
  }
  std::vector<std::vector<Elem>> table(2 * n, std::vector<Elem>(2 * n));
  for (Point v = 0; v < 2 * n; ++v)
    for (Point w = 0; w < 2 * n; ++w) table[v][w] = k[w][v];
  FiniteGroup grp = FiniteGroup::from_table(table);
  ElementSet conn(g.graph.neighbours(0).begin(), g.graph.neighbours(0).end());
  // Certify: u ~ v iff u = c v for some c in the connection set.
  for (Point v = 0; v < 2 * n; ++v) {
    for (Elem c : conn)
      if (!g.graph.has_edge(grp.mul(c, v), v)) throw ValidationError("Cayley realisation failed edge check");
    if (g.graph.degree(v) != conn.size()) throw ValidationError("Cayley realisation failed degree check");
  }
  return CayleyRealization{std::move(grp), std::move(conn), witness->alpha};
}

inline CayleyRealization cayley_realization(const BiCayleyGraph& g) {
  return cayley_realization(g, compute_I(g.triple));
}

// ---------------------------------------------------------------------------
// Predicates on the normaliser X = N_Aut(R(H)).

struct EdgeTransitivityCertificate {
  bool holds = false;
  std::vector<std::vector<Point>> edge_orbit_representatives;
};

inline EdgeTransitivityCertificate normal_edge_transitive(const BiCayleyGraph& g, const NormaliserDescription& x) {
  require_connected(g);
  auto orb = orbits_on(x.group, g.graph, OrbitDomain::edges);
  return EdgeTransitivityCertificate{orb.count == 1, orb.representatives};
}

namespace detail {

inline bool one_orbit_on(const PermGroup& stab, const std::vector<Point>& points) {
  if (points.empty()) return true;
  auto orb = stab.orbit(points.front());
  return std::all_of(points.begin(), points.end(),
                     [&orb](Point v) { return std::binary_search(orb.begin(), orb.end(), v); });
}

inline bool exists_inverting_automorphism(const BiCayleyTriple& t, const std::vector<GroupAutomorphism>& auts) {
  const ElementSet s_inv = inverse_set(t.H(), t.S);
  return std::any_of(auts.begin(), auts.end(), [&](const auto& a) { return a.apply(t.S) == s_inv; });
}

inline bool bi_abelian_shape(const BiCayleyTriple& t) { return t.R.empty() && t.L.empty(); }

}  // namespace detail

/// Every vertex stabiliser in X is transitive on the neighbourhood. With R = L
/// empty this reduces to Gamma(1_0) being one orbit of the sigma-subgroup F.
inline bool normal_locally_arc_transitive(const BiCayleyGraph& g, const NormaliserDescription& x) {
  require_connected(g);
  const auto& t = g.triple;
  if (detail::bi_abelian_shape(t) && t.S.size() > 0 && t.S.front() == 0) {
    std::vector<Permutation> fgens;
    for (const auto& f : x.F) fgens.push_back(sigma(t, f.alpha, f.g));
    PermGroup fg(2 * t.n(), fgens);
    return detail::one_orbit_on(fg, g.graph.neighbours(0));
  }
  const auto n = static_cast<Point>(t.n());
  for (Point v : {Point{0}, n}) {
    if (!detail::one_orbit_on(x.group.point_stabiliser(v), g.graph.neighbours(v))) return false;
  }
  return true;
}

inline bool normal_arc_transitive(const BiCayleyGraph& g, const NormaliserDescription& x,
                                  const std::vector<GroupAutomorphism>& auts) {
  require_connected(g);
  if (detail::bi_abelian_shape(g.triple))
    return normal_locally_arc_transitive(g, x) && detail::exists_inverting_automorphism(g.triple, auts);
  return orbits_on(x.group, g.graph, OrbitDomain::arcs).count == 1;
}

/// X is transitive on vertices and edges but not on arcs.
inline bool normal_half_arc_transitive(const BiCayleyGraph& g, const NormaliserDescription& x,
                                       const std::vector<GroupAutomorphism>& auts) {
  require_connected(g);
  const auto& t = g.triple;
  if (!(detail::bi_abelian_shape(t) && !t.S.empty() && t.S.front() == 0)) {
    return x.group.is_transitive() && orbits_on(x.group, g.graph, OrbitDomain::edges).count == 1 &&
           orbits_on(x.group, g.graph, OrbitDomain::arcs).count > 1;
  }
  const auto n = static_cast<Point>(t.n());
  const PermGroup stab = x.group.point_stabiliser(0);
  const auto& nb = g.graph.neighbours(0);
  const auto o1 = stab.orbit(n);  // orbit of 1_1
  std::vector<Point> in_o1, rest;
  for (Point v : nb) (std::binary_search(o1.begin(), o1.end(), v) ? in_o1 : rest).push_back(v);
  if (rest.empty() || in_o1.size() != rest.size() || !detail::one_orbit_on(stab, rest)) return false;
  const auto& h = t.H();
  const ElementSet s_inv = inverse_set(h, t.S);
  for (Point v : rest) {
    const Elem xe = static_cast<Elem>(v - n);
    const ElementSet target = right_translate(h, s_inv, xe);
    for (const auto& a : auts)
      if (a.apply(t.S) == target) return true;
  }
  return false;
}

struct TwoArcConditions {
  bool a = false;  // some alpha with S^alpha = S^-1
  bool b = false;  // setwise stabiliser of S\{1} in Aut(H) transitive on S\{1}
  bool c = false;  // for every s in S\{1} some beta with S^beta = s^-1 S
  bool all() const { return a && b && c; }
};

inline TwoArcConditions normal_two_arc_conditions(const BiCayleyTriple& t, const std::vector<GroupAutomorphism>& auts) {
  if (!detail::bi_abelian_shape(t)) throw ValidationError("two-arc conditions require R = L = empty");
  if (t.S.empty() || t.S.front() != 0) throw ValidationError("two-arc conditions require 1 in S");
  const auto& h = t.H();
  TwoArcConditions out;
  out.a = detail::exists_inverting_automorphism(t, auts);
  const ElementSet rest(t.S.begin() + 1, t.S.end());
  if (rest.empty()) {
    out.b = true;
  } else {
    std::vector<bool> reached(h.order(), false);
    for (const auto& a : auts)
      if (a.apply(rest) == rest) reached[a(rest.front())] = true;
    out.b = std::all_of(rest.begin(), rest.end(), [&](Elem s) { return reached[s]; });
  }
  out.c = std::all_of(rest.begin(), rest.end(), [&](Elem s) {
    const ElementSet target = left_translate(h, h.inv(s), t.S);
    return std::any_of(auts.begin(), auts.end(), [&](const auto& a) { return a.apply(t.S) == target; });
  });
  return out;
}

inline TwoArcConditions normal_two_arc_conditions(const BiCayleyTriple& t) {
  return normal_two_arc_conditions(t, enumerate_automorphisms(t.H()));
}

struct ArcStabiliserDescription {
  std::vector<Permutation> generators;  // sigma_{alpha,1}, alpha in Aut(H, S\{1})
  // For each s in S\{1}: the neighbour (s^-1)_0 of 1_1 fixed by the stabiliser
  // of the 2-arc (1_1, 1_0, s_1), which blocks 3-arc-transitivity at valency >= 3.
  std::vector<std::pair<Elem, Point>> fixed_neighbour;
};

inline ArcStabiliserDescription arc_stabiliser_description(const BiCayleyTriple& t,
                                                          const std::vector<GroupAutomorphism>& auts) {
  if (!detail::bi_abelian_shape(t) || t.S.empty() || t.S.front() != 0)
    throw ValidationError("arc stabiliser description requires R = L = empty and 1 in S");
  const auto& h = t.H();
  const ElementSet rest(t.S.begin() + 1, t.S.end());
  ArcStabiliserDescription d;
  for (const auto& a : auts)
    if (a.apply(rest) == rest) d.generators.push_back(sigma(t, a, 0));
  for (Elem s : rest) d.fixed_neighbour.emplace_back(s, static_cast<Point>(h.inv(s)));
  return d;
}

// ---------------------------------------------------------------------------
// JSON descriptor {group, R, L, S}.

inline nlohmann::json triple_to_json(const BiCayleyTriple& t) {
  return nlohmann::json{{"group", group_to_json(t.H())}, {"R", t.R}, {"L", t.L}, {"S", t.S}};
}

inline BiCayleyTriple triple_from_json(const nlohmann::json& j) {
  try {
    auto g = std::make_shared<const FiniteGroup>(group_from_json(j.at("group")));
    auto get = [&j](const char* k) { return j.contains(k) ? j.at(k).get<std::vector<Elem>>() : std::vector<Elem>{}; };
    return validate_triple(std::move(g), get("R"), get("L"), get("S"));
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("malformed triple descriptor: ") + e.what());
  }
}

}  // namespace bct
