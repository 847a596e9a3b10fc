#include <gtest/gtest.h>

#include <random>
#include <set>
#include <tuple>

#include "bct/bct.hpp"
#include "support/oracles.hpp"

using namespace bct;

namespace {

GroupPtr shared(FiniteGroup g) { return detail::share(std::move(g)); }

/// Subgroup generated by `gens`, by closing under right multiplication.
std::size_t generated_order(const FiniteGroup& h, const ElementSet& gens) {
  std::vector<char> seen(h.order(), 0);
  std::vector<Elem> todo{0};
  seen[0] = 1;
  while (!todo.empty()) {
    const Elem x = todo.back();
    todo.pop_back();
    for (Elem g : gens) {
      const Elem y = h.mul(x, g);
      if (!seen[y]) seen[y] = 1, todo.push_back(y);
    }
  }
  return static_cast<std::size_t>(std::count(seen.begin(), seen.end(), 1));
}

GroupAutomorphism find_automorphism(const FiniteGroup& h, Elem a, Elem a_img, Elem b, Elem b_img) {
  for (const auto& x : enumerate_automorphisms(h))
    if (x(a) == a_img && x(b) == b_img) return x;
  ADD_FAILURE() << "no automorphism with the requested generator images";
  return GroupAutomorphism::identity(h.order());
}

std::vector<BiCayleyTriple> small_corpus(std::size_t per_group) {
  std::vector<BiCayleyTriple> out;
  const std::vector<FiniteGroup> groups{make_cyclic(3),  make_cyclic(4),       make_cyclic(5),      make_cyclic(6),
                                        make_dihedral(3), make_cyclic(7),      make_abelian2(2, 4), make_dihedral(4),
                                        make_cyclic(8),   make_cyclic(9),      make_abelian2(3, 3), make_dihedral(5),
                                        make_cyclic(10),  make_abelian2(2, 6), make_dihedral(6),    make_cyclic(13)};
  for (const auto& g : groups) {
    EnumerationConstraints c;
    c.max_valency = 4;
    c.min_valency = 2;
    std::size_t taken = 0;
    enumerate_triples(shared(g), c, [&](const BiCayleyTriple& t) {
      out.push_back(t);
      return ++taken < per_group;
    });
  }
  return out;
}

std::vector<BiCayleyTriple> bi_abelian_corpus() {
  std::vector<BiCayleyTriple> out;
  for (const auto& h : abelian_groups_up_to(16)) {
    EnumerationConstraints c;
    c.max_valency = 4;
    c.min_valency = 2;
    c.bi_abelian_only = true;
    for (auto& t : enumerate_triples(h, c)) out.push_back(std::move(t));
  }
  for (std::size_t n : {3u, 4u, 5u, 6u, 7u}) {
    EnumerationConstraints c;
    c.max_valency = 3;
    c.min_valency = 2;
    c.bi_abelian_only = true;
    for (auto& t : enumerate_triples(shared(make_dihedral(n)), c)) out.push_back(std::move(t));
  }
  return out;
}

}  // namespace

TEST(Triple, Validation) {
  EXPECT_NO_THROW(petersen());
  EXPECT_THROW(validate_triple(make_cyclic(4), {1}, {1}, {0}), ValidationError);
  EXPECT_THROW(validate_triple(make_cyclic(4), {0}, {0}, {0}), ValidationError);
  EXPECT_THROW(validate_triple(make_cyclic(5), {1, 4}, {}, {0}), ValidationError);
  EXPECT_THROW(validate_triple(make_cyclic(5), {}, {}, {7}), ValidationError);
  EXPECT_THROW(validate_triple(GroupPtr{}, {}, {}, {0}), ValidationError);
  const auto d = gamma_dihedral({21, 2, 3}).triple;
  EXPECT_TRUE(d.R.empty() && d.L.empty());
  EXPECT_EQ(d.S.size(), 6u);
  // (D_5, {}, {ba}, {a}) has |R| != |L|.
  EXPECT_THROW(validate_triple(make_dihedral(5), {}, {6}, {1}), ValidationError);
}

TEST(Triple, Normalize) {
  const auto t = validate_triple(make_cyclic(6), {}, {}, {1, 3});
  const auto n = normalize_triple(t);
  EXPECT_EQ(n.S, (ElementSet{0, 2}));
  const auto p = petersen().triple;
  EXPECT_EQ(normalize_triple(p).S, p.S);
  EXPECT_THROW(normalize_triple(validate_triple(make_cyclic(3), {}, {}, {})), ValidationError);

  // Conjugation of L in D_5: R = {b}, L = {b a}, S = {a, b a^2}.
  const auto d = validate_triple(make_dihedral(5), {5}, {6}, {1, 7});
  const auto dn = normalize_triple(d);
  EXPECT_EQ(dn.S.front(), 0u);
  EXPECT_EQ(dn.L, conjugate_set(d.H(), d.L, 1));
  EXPECT_TRUE(are_isomorphic(build_graph(d).graph, build_graph(dn).graph));

  std::mt19937 rng(17);
  for (int i = 0; i < 40; ++i) {
    const auto r = oracle::random_triple(shared(make_dihedral(6)), rng);
    const auto rn = normalize_triple(r);
    ASSERT_EQ(rn.S.front(), 0u);
    ASSERT_TRUE(are_isomorphic(build_graph(r).graph, build_graph(rn).graph));
  }
}

TEST(BuildGraph, SmallExamples) {
  const auto sq = build_graph(validate_triple(make_cyclic(2), {}, {}, {0, 1}));
  EXPECT_EQ(sq.graph.order(), 4u);
  EXPECT_EQ(sq.graph.edge_count(), 4u);
  EXPECT_EQ(sq.graph.valency(), std::optional<std::size_t>(2));
  EXPECT_TRUE(sq.connected);
  EXPECT_EQ(sq.labels(), (std::vector<std::string>{"1_0", "a_0", "1_1", "a_1"}));

  const auto hw = build_graph(validate_triple(make_cyclic(7), {}, {}, {0, 1, 3}));
  EXPECT_EQ(hw.graph.order(), 14u);
  EXPECT_EQ(girth(hw.graph), std::optional<std::size_t>(6));
  EXPECT_EQ(automorphism_group(hw.graph).order(), 336u);

  const auto pet = build_graph(petersen().triple);
  EXPECT_EQ(pet.graph.valency(), std::optional<std::size_t>(3));
  EXPECT_EQ(girth(pet.graph), std::optional<std::size_t>(5));
}

TEST(BuildGraph, ConnectedIffGenerating) {
  std::mt19937 rng(3);
  const std::vector<GroupPtr> groups{shared(make_cyclic(12)), shared(make_dihedral(6)), shared(make_abelian2(2, 4)),
                                     shared(make_metacyclic(9, 3, 4))};
  int connected = 0, disconnected = 0;
  for (int i = 0; i < 400; ++i) {
    const auto t = normalize_triple(oracle::random_triple(groups[i % groups.size()], rng));
    ElementSet gens = t.R;
    gens.insert(gens.end(), t.L.begin(), t.L.end());
    gens.insert(gens.end(), t.S.begin(), t.S.end());
    const bool generating = generated_order(t.H(), make_set(gens)) == t.n();
    const auto bg = build_graph(t);
    ASSERT_EQ(bg.connected, generating);
    (bg.connected ? connected : disconnected)++;
  }
  EXPECT_GT(connected, 0);
  EXPECT_GT(disconnected, 0);
}

TEST(RightTranslation, Laws) {
  const auto t = gamma_dihedral({21, 2, 3}).triple;
  const auto bg = build_graph(t);
  EXPECT_EQ(right_translation(t, 0), Permutation::identity(84));
  std::mt19937 rng(11);
  for (int i = 0; i < 100; ++i) {
    const Elem g = rng() % 42, h = rng() % 42;
    ASSERT_EQ(right_translation(t, g).then(right_translation(t, h)), right_translation(t, t.H().mul(g, h)));
    ASSERT_TRUE(bg.graph.is_automorphism(right_translation(t, g)));
    ASSERT_TRUE(is_right_translation(t, right_translation(t, g)));
  }
  const auto sq = validate_triple(make_cyclic(2), {}, {}, {0, 1});
  const auto ra = right_translation(sq, 1);
  EXPECT_EQ(ra.image, (std::vector<Point>{1, 0, 3, 2}));
  EXPECT_EQ(ra.fixed_points(), 0u);
}

TEST(Sigma, DihedralFamilyCertificateCyclesNeighbourhood) {
  int checked = 0;
  for (std::size_t n = 5; n <= 60; ++n)
    for (std::size_t k = 1; k <= 4; ++k)
      for (std::size_t lambda = 2; lambda < n; ++lambda) {
        const DihedralFamilyParams p{n, lambda, k};
        try {
          validate(p);
        } catch (const ValidationError&) {
          continue;
        }
        const auto t = gamma_dihedral(p).triple;
        const auto bg = build_graph(t);
        const auto s = sigma(t, dihedral_family_alpha(p), static_cast<Elem>(n));
        ASSERT_TRUE(bg.graph.is_automorphism(s)) << n << " " << lambda << " " << k;
        ASSERT_EQ(s[0], 0u);
        // Orbit of 1_1 under <s> is the whole neighbourhood of 1_0.
        std::set<Point> orbit;
        Point v = static_cast<Point>(2 * n);
        for (std::size_t i = 0; i < 2 * k; ++i, v = s[v]) orbit.insert(v);
        ASSERT_EQ(v, static_cast<Point>(2 * n));
        const auto& nb = bg.graph.neighbours(0);
        ASSERT_EQ(orbit, std::set<Point>(nb.begin(), nb.end()));
        ++checked;
      }
  EXPECT_GT(checked, 10);
  EXPECT_EQ(sigma(petersen().triple, GroupAutomorphism::identity(5), 0), Permutation::identity(10));
}

TEST(SigmaDelta, MembershipScanMatchesFAndI) {
  std::mt19937 rng(23);
  std::vector<BiCayleyTriple> cases{example_c28().triple, gamma_dihedral({21, 2, 3}).triple, g_p(3).triple,
                                    petersen().triple};
  const std::vector<GroupPtr> groups{shared(make_cyclic(12)), shared(make_dihedral(5)), shared(make_abelian2(3, 6)),
                                     shared(make_metacyclic(7, 3, 2)), shared(make_cyclic(60))};
  for (int i = 0; i < 20; ++i) cases.push_back(oracle::random_triple(groups[i % groups.size()], rng));
  for (const auto& t : cases) {
    const auto& h = t.H();
    const auto auts = enumerate_automorphisms(h);
    const auto g = build_graph(t).graph;
    std::set<std::pair<std::vector<Elem>, Elem>> f;
    for (const auto& p : compute_F(t, auts)) f.emplace(p.alpha.image, p.g);
    for (const auto& a : auts)
      for (Elem x = 0; x < h.order(); ++x)
        ASSERT_EQ(g.is_automorphism(sigma(t, a, x)), f.count({a.image, x}) == 1);
    if (auts.size() * h.order() * h.order() > 400000) continue;
    std::set<std::tuple<std::vector<Elem>, Elem, Elem>> in;
    for (const auto& p : compute_I(t, auts)) in.emplace(p.alpha.image, p.x, p.y);
    for (const auto& a : auts)
      for (Elem x = 0; x < h.order(); ++x)
        for (Elem y = 0; y < h.order(); ++y) {
          const auto d = delta(t, a, x, y);
          const bool member = in.count({a.image, x, y}) == 1;
          ASSERT_EQ(g.is_automorphism(d), member);
          if (member) {
            ASSERT_GE(d[0], h.order());
          }
        }
  }
}

TEST(ComputeF, FullConnectionSet) {
  for (const auto& h : {make_cyclic(6), make_dihedral(4), make_abelian2(2, 4)}) {
    ElementSet all(h.order());
    std::iota(all.begin(), all.end(), Elem{0});
    const auto t = validate_triple(h, {}, {}, all);
    EXPECT_EQ(compute_F(t).size(), enumerate_automorphisms(h).size() * h.order());
  }
}

TEST(ComputeFI, MetacyclicFamilyWitnesses) {
  for (std::size_t p : {3u, 5u}) {
    const auto t = g_p(p).triple;
    const auto& h = t.H();
    const auto ip = static_cast<std::int64_t>(p);
    const Elem a = detail::meta_word(p, 1, 0), b = detail::meta_word(p, 0, 1);
    const auto alpha = find_automorphism(h, a, detail::meta_word(p, -1, 0), b, b);
    const auto beta = find_automorphism(h, a, detail::meta_word(p, -(ip + 1), 0), b, detail::meta_word(p, ip, 1));
    const Elem a2 = detail::meta_word(p, 2, 0), apb2 = detail::meta_word(p, ip, 2);

    const auto F = compute_F(t);
    EXPECT_TRUE(std::any_of(F.begin(), F.end(), [&](const FPair& f) { return f.alpha.image == alpha.image && f.g == a2; }));
    const auto I = compute_I(t);
    EXPECT_TRUE(std::any_of(I.begin(), I.end(), [&](const ITriple& x) {
      return x.alpha.image == beta.image && x.x == apb2 && x.y == 0;
    }));

    const auto n = static_cast<Point>(h.order());
    const auto s = sigma(t, alpha, a2);
    EXPECT_EQ(s[0], 0u);
    EXPECT_EQ(s[n], n + a2);
    const auto d = delta(t, beta, apb2, 0);
    EXPECT_EQ(d[0], n + apb2);
    EXPECT_EQ(d[n], 0u);
    EXPECT_EQ(d.then(d), right_translation(t, apb2));
  }
  // Abelian H with R = L = empty: (inversion, 1, 1) lies in I.
  for (const auto& m : {gamma_abelian({1, 7, 3}), gamma_abelian({2, 3, 2}), gamma_abelian({3, 1, 0})}) {
    const auto& h = m.triple.H();
    std::vector<Elem> inv(h.order());
    for (Elem x = 0; x < h.order(); ++x) inv[x] = h.inv(x);
    const auto I = compute_I(m.triple);
    EXPECT_TRUE(std::any_of(I.begin(), I.end(), [&](const ITriple& x) {
      return x.alpha.image == inv && x.x == 0 && x.y == 0;
    }));
  }
}

TEST(ComputeI, HpDeltaSwapsBaseEdge) {
  const std::size_t p = 5;
  const auto t = h_p(p).triple;
  const auto prm = h_p_parameters(p);
  const Elem w = detail::meta_word(p, static_cast<std::int64_t>(prm.s), 2);
  const auto n = static_cast<Point>(t.n());
  const auto I = compute_I(t);
  const auto it = std::find_if(I.begin(), I.end(), [&](const ITriple& x) { return x.x == w && x.y == 0; });
  ASSERT_NE(it, I.end());
  const auto d = delta(t, it->alpha, w, 0);
  EXPECT_EQ(d[0], n + w);
  EXPECT_EQ(d[n], 0u);
}

TEST(ComputeI, EmptyForSemisymmetricDihedralExample) {
  const auto t = gamma_dihedral({21, 2, 3}).triple;
  EXPECT_TRUE(compute_I(t).empty());
  const auto bg = build_graph(t);
  EXPECT_THROW(cayley_realization(bg), ValidationError);
  const auto x = normaliser_group(bg);
  EXPECT_EQ(x.group.order(), 252u);
  EXPECT_EQ(x.group.orbits().size(), 2u);
  EXPECT_EQ(x.shape, NormaliserShape::semidirect_F);
}

TEST(Normaliser, SmallExamples) {
  const auto sq = build_graph(validate_triple(make_cyclic(2), {}, {}, {0, 1}));
  EXPECT_EQ(normaliser_group(sq).group.order(), 8u);
  EXPECT_EQ(oracle::factorial_aut_order(sq.graph), 8u);

  const auto c54 = build_graph(counterexample_54().triple);
  EXPECT_LT(normaliser_group(c54).group.order(), 1296u);

  Graph g(4);
  const auto disc = build_graph(validate_triple(make_cyclic(4), {}, {}, {0}));
  EXPECT_FALSE(disc.connected);
  EXPECT_THROW(normaliser_group(disc), DisconnectedGraph);
}

TEST(Normaliser, MatchesBruteForceUpToThirtyVertices) {
  auto corpus = small_corpus(12);
  corpus.push_back(petersen().triple);
  corpus.push_back(gamma_abelian({1, 7, 3}).triple);
  corpus.push_back(validate_triple(make_cyclic(2), {}, {}, {0, 1}));
  std::size_t checked = 0;
  for (const auto& t : corpus) {
    const auto bg = build_graph(t);
    ASSERT_LE(bg.graph.order(), 30u);
    const auto aut = automorphism_group(bg.graph);
    if (aut.order() > 50000) continue;
    const auto x = normaliser_group(bg);
    for (const auto& gen : x.generators) ASSERT_TRUE(bg.graph.is_automorphism(gen));
    ASSERT_EQ(x.group.order(), oracle::brute_normaliser_order(aut, right_regular_generators(t)))
        << triple_to_json(t).dump();
    ++checked;
  }
  EXPECT_GT(checked, 100u);
}

TEST(Predicates, FormulaMatchesOrbitComputation) {
  std::size_t checked = 0, lat = 0, half = 0;
  auto corpus = bi_abelian_corpus();
  corpus.push_back(g_p(3).triple);
  corpus.push_back(h_p(5).triple);
  for (const auto& t : corpus) {
    const auto bg = build_graph(t);
    const auto auts = enumerate_automorphisms(t.H());
    const auto x = normaliser_group(bg, auts);
    const auto n = static_cast<Point>(t.n());
    const bool local = detail::one_orbit_on(x.group.point_stabiliser(0), bg.graph.neighbours(0)) &&
                       detail::one_orbit_on(x.group.point_stabiliser(n), bg.graph.neighbours(n));
    const auto edges = orbits_on(x.group, bg.graph, OrbitDomain::edges).count;
    const auto arcs = orbits_on(x.group, bg.graph, OrbitDomain::arcs).count;
    ASSERT_EQ(normal_locally_arc_transitive(bg, x), local);
    ASSERT_EQ(normal_arc_transitive(bg, x, auts), arcs == 1);
    ASSERT_EQ(normal_half_arc_transitive(bg, x, auts), x.group.is_transitive() && edges == 1 && arcs > 1)
        << triple_to_json(t).dump();
    ASSERT_EQ(normal_edge_transitive(bg, x).holds, edges == 1);
    lat += local;
    half += normal_half_arc_transitive(bg, x, auts);
    ++checked;
  }
  EXPECT_GT(checked, 100u);
  EXPECT_GT(lat, 10u);
  EXPECT_GT(half, 0u);
}

TEST(Predicates, NamedExamples) {
  const auto dih = build_graph(gamma_dihedral({21, 2, 3}).triple);
  const auto auts = enumerate_automorphisms(dih.triple.H());
  const auto x = normaliser_group(dih, auts);
  EXPECT_TRUE(normal_edge_transitive(dih, x).holds);
  EXPECT_FALSE(normal_arc_transitive(dih, x, auts));
  EXPECT_FALSE(x.group.is_transitive());

  for (const auto& m : {gamma_abelian({1, 3, 2}), gamma_abelian({2, 1, 0}), gamma_abelian({2, 3, 2}),
                        gamma_abelian({3, 3, 2})}) {
    const auto c = normal_two_arc_conditions(m.triple);
    EXPECT_TRUE(c.a && c.b && c.c) << m.params.dump();
  }
  const auto hw = gamma_abelian({1, 7, 3});
  const auto hwg = build_graph(hw.triple);
  const auto hauts = enumerate_automorphisms(hw.triple.H());
  const auto hx = normaliser_group(hwg, hauts);
  EXPECT_TRUE(normal_arc_transitive(hwg, hx, hauts));
  EXPECT_FALSE(normal_two_arc_conditions(hw.triple).all());

  const auto gp = build_graph(g_p(3).triple);
  const auto gauts = enumerate_automorphisms(gp.triple.H());
  EXPECT_TRUE(normal_half_arc_transitive(gp, normaliser_group(gp, gauts), gauts));

  EXPECT_THROW(normal_two_arc_conditions(petersen().triple), ValidationError);
  EXPECT_THROW(normal_edge_transitive(build_graph(validate_triple(make_cyclic(4), {}, {}, {0})),
                                      NormaliserDescription{}),
               DisconnectedGraph);
}

TEST(Predicates, TwoArcConditionsMatchOrbitCount) {
  std::size_t yes = 0, no = 0;
  auto corpus = bi_abelian_corpus();
  for (std::size_t m = 1; m <= 4; ++m)
    for (std::size_t n = 1; n * m * m <= 60; ++n)
      for (std::size_t l : abelian_family_lambdas(n)) {
        try {
          corpus.push_back(gamma_abelian({m, n, l}).triple);
        } catch (const ValidationError&) {
        }
      }
  for (const auto& t : corpus) {
    const auto bg = build_graph(t);
    const auto auts = enumerate_automorphisms(t.H());
    const auto x = normaliser_group(bg, auts);
    const bool direct = orbits_on(x.group, bg.graph, OrbitDomain::two_arcs).count == 1 &&
                        orbits_on(x.group, bg.graph, OrbitDomain::vertices).count == 1;
    ASSERT_EQ(normal_two_arc_conditions(t, auts).all(), direct) << triple_to_json(t).dump();
    (direct ? yes : no)++;
    if (t.S.size() >= 3) {
      ASSERT_GT(orbits_on(x.group, bg.graph, OrbitDomain::three_arcs).count, 1u);
    }
  }
  EXPECT_GT(yes, 5u);
  EXPECT_GT(no, 5u);
}

TEST(Predicates, ArcStabiliserFixesNeighbour) {
  for (const auto& m : {gamma_abelian({1, 7, 3}), gamma_abelian({1, 3, 2}), g_p(3)}) {
    const auto& t = m.triple;
    const auto auts = enumerate_automorphisms(t.H());
    const auto d = arc_stabiliser_description(t, auts);
    const auto bg = build_graph(t);
    const auto x = normaliser_group(bg, auts);
    const auto n = static_cast<Point>(t.n());
    const PermGroup stab(2 * t.n(), d.generators);
    EXPECT_EQ(stab.order(), x.group.arc_stabiliser(0, n).order());
    for (const auto& [s, v] : d.fixed_neighbour) {
      ASSERT_TRUE(bg.graph.has_edge(n, v));
      const auto two_arc = stab.point_stabiliser(n + s);
      EXPECT_EQ(two_arc.orbit(v), std::vector<Point>{v});
    }
  }
}

TEST(Predicates, NormalEdgeTransitiveImpliesBiAbelianShape) {
  std::size_t hits = 0;
  for (const auto& t : small_corpus(60)) {
    const auto bg = build_graph(t);
    if (!bg.connected) continue;
    const auto x = normaliser_group(bg);
    if (!normal_edge_transitive(bg, x).holds) continue;
    ++hits;
    ASSERT_TRUE(t.R.empty() && t.L.empty()) << triple_to_json(t).dump();
    const auto parts = bipartition(bg.graph);
    ASSERT_TRUE(parts.has_value());
    std::vector<Point> h0(t.n());
    std::iota(h0.begin(), h0.end(), Point{0});
    ASSERT_TRUE(parts->first == h0 || parts->second == h0);
  }
  EXPECT_GT(hits, 10u);
}

TEST(Isomorphism, SwapOnRandomTriples) {
  std::mt19937 rng(2718);
  const std::vector<GroupPtr> groups{shared(make_cyclic(10)), shared(make_dihedral(7)), shared(make_abelian2(3, 3)),
                                     shared(make_metacyclic(9, 3, 4)), shared(make_cyclic(14))};
  for (int i = 0; i < 200; ++i) {
    const auto& h = groups[i % groups.size()];
    const auto t = oracle::random_triple(h, rng);
    const auto swapped = validate_triple(h, t.L, t.R, inverse_set(*h, t.S));
    ASSERT_EQ(canonical_form(build_graph(t).graph), canonical_form(build_graph(swapped).graph));
  }
}

TEST(Cayley, RealizationIsRegular) {
  for (const auto& t : {validate_triple(make_cyclic(2), {}, {}, {0, 1}), gamma_abelian({1, 7, 3}).triple,
                        gamma_abelian({2, 3, 2}).triple}) {
    const auto bg = build_graph(t);
    const auto c = cayley_realization(bg);
    EXPECT_EQ(c.group.order(), 2 * t.n());
    EXPECT_NO_THROW(c.group.verify_axioms());
    Graph cay(c.group.order());
    for (Elem v = 0; v < c.group.order(); ++v)
      for (Elem s : c.connection_set) cay.add_edge(v, c.group.mul(s, v));
    EXPECT_TRUE(are_isomorphic(cay, bg.graph));
  }
}

TEST(Triple, JsonRoundTrip) {
  for (const auto& t : {example_c28().triple, g_p(3).triple, gamma_dihedral({21, 2, 3}).triple, petersen().triple}) {
    const auto back = triple_from_json(triple_to_json(t));
    EXPECT_EQ(back.R, t.R);
    EXPECT_EQ(back.L, t.L);
    EXPECT_EQ(back.S, t.S);
    EXPECT_TRUE(are_isomorphic(build_graph(back).graph, build_graph(t).graph));
  }
  EXPECT_THROW(triple_from_json(nlohmann::json{{"S", {0}}}), ValidationError);
}
