#pragma once

// Named graph families and sporadic examples as bi-Cayley triples, the
// tetracirculant construction and exhaustive triple enumeration.

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "bct/bicayley.hpp"
#include "bct/errors.hpp"
#include "bct/graph.hpp"
#include "bct/graph_auto.hpp"
#include "bct/group_core.hpp"

namespace bct {

/// A constructed triple plus the parameters that produced it.
struct FamilyMember {
  std::string family;
  nlohmann::json params;
  BiCayleyTriple triple;
};

namespace detail {

inline bool is_prime(std::uint64_t p) {
  if (p < 2) return false;
  for (std::uint64_t d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

inline std::uint64_t mod_norm(std::int64_t x, std::uint64_t m) {
  auto r = x % static_cast<std::int64_t>(m);
  return static_cast<std::uint64_t>(r < 0 ? r + static_cast<std::int64_t>(m) : r);
}

inline std::uint64_t multiplicative_order(std::uint64_t x, std::uint64_t n) {
  if (std::gcd(x, n) != 1) return 0;
  std::uint64_t k = 1, y = x % n;
  while (y != 1 % n) {
    y = y * x % n;
    ++k;
  }
  return k;
}

inline GroupPtr share(FiniteGroup g) { return std::make_shared<const FiniteGroup>(std::move(g)); }

}  // namespace detail

// ---------------------------------------------------------------------------
// Gamma_{m,n,lambda} over C_{nm} x C_m.

struct AbelianFamilyParams {
  std::size_t m = 1, n = 1, lambda = 0;
};

inline void validate(const AbelianFamilyParams& p) {
  if (p.m < 1 || p.n < 1) throw ValidationError("m and n must be positive");
  if (p.n * p.m * p.m < 3) throw ValidationError("n m^2 must be at least 3");
  if (p.n == 1) {
    if (p.lambda != 0) throw ValidationError("lambda must be 0 when n = 1");
    return;
  }
  if (p.lambda >= p.n) throw ValidationError("lambda must be a residue mod n");
  if (std::gcd(p.lambda, p.n) != 1) throw ValidationError("lambda must be a unit mod n");
  if ((p.lambda * p.lambda + p.n - p.lambda + 1) % p.n != 0)
    throw ValidationError("lambda^2 - lambda + 1 must vanish mod n");
}

/// All valid lambda for the given (m, n), ascending.
inline std::vector<std::size_t> abelian_family_lambdas(std::size_t n) {
  if (n == 1) return {0};
  std::vector<std::size_t> out;
  for (std::size_t l = 1; l < n; ++l)
    if (std::gcd(l, n) == 1 && (l * l + n - l + 1) % n == 0) out.push_back(l);
  return out;
}

/// (C_{nm} x C_m, {}, {}, {1, x, x^lambda y})
inline FamilyMember gamma_abelian(const AbelianFamilyParams& p) {
  validate(p);
  auto h = detail::share(make_abelian2(p.n * p.m, p.m));
  // x^i y^j has index i*m + j.
  const auto x = static_cast<Elem>(p.m);
  const auto xly = static_cast<Elem>((p.lambda % (p.n * p.m)) * p.m + 1 % p.m);
  auto t = validate_triple(h, {}, {}, {0, x, xly});
  return {"gamma-abelian", {{"m", p.m}, {"n", p.n}, {"lambda", p.lambda}}, std::move(t)};
}

// ---------------------------------------------------------------------------
// Gamma(n, lambda, 2k) over D_n.

struct DihedralFamilyParams {
  std::size_t n = 0, lambda = 0, k = 0;
};

inline std::vector<std::size_t> dihedral_c_sequence(const DihedralFamilyParams& p) {
  std::vector<std::size_t> c(p.k);
  std::size_t pw = 1, sum = 0;
  const std::size_t l2 = p.lambda * p.lambda % p.n;
  for (std::size_t i = 0; i < p.k; ++i) {
    sum = (sum + pw) % p.n;
    c[i] = sum;
    pw = pw * l2 % p.n;
  }
  return c;
}

inline void validate(const DihedralFamilyParams& p) {
  if (p.n < 5) throw ValidationError("n must be at least 5");
  if (p.k < 2) throw ValidationError("k must be at least 2");
  if (p.lambda >= p.n) throw ValidationError("lambda must be a residue mod n");
  if (detail::multiplicative_order(p.lambda, p.n) != 2 * p.k)
    throw ValidationError("lambda must have multiplicative order 2k mod n");
  if (dihedral_c_sequence(p).back() != 0) throw ValidationError("1 + lambda^2 + ... + lambda^(2(k-1)) must vanish mod n");
}

/// (D_n, {}, {}, {a^{c_i}} u {b a^{d_i}}), c_i = sum_{j<=i} lambda^{2j}, d_i = lambda c_i.
inline FamilyMember gamma_dihedral(const DihedralFamilyParams& p) {
  validate(p);
  auto h = detail::share(make_dihedral(p.n));
  std::vector<Elem> s;
  for (std::size_t c : dihedral_c_sequence(p)) {
    s.push_back(static_cast<Elem>(c));
    s.push_back(static_cast<Elem>(p.n + p.lambda * c % p.n));
  }
  auto t = validate_triple(h, {}, {}, std::move(s));
  if (t.S.size() != 2 * p.k) throw ValidationError("S(n, lambda, 2k) has repeated elements");
  return {"gamma-dihedral", {{"n", p.n}, {"lambda", p.lambda}, {"k", p.k}}, std::move(t)};
}

/// The automorphism a -> a^lambda, b -> b a of D_n; sigma_{alpha,b} cycles the
/// neighbourhood of 1_0 in Gamma(n, lambda, 2k).
inline GroupAutomorphism dihedral_family_alpha(const DihedralFamilyParams& p) {
  GroupAutomorphism a;
  a.image.resize(2 * p.n);
  for (std::size_t i = 0; i < p.n; ++i) {
    a.image[i] = static_cast<Elem>(p.lambda * i % p.n);
    a.image[p.n + i] = static_cast<Elem>(p.n + (1 + p.lambda * i) % p.n);
  }
  return a;
}

// ---------------------------------------------------------------------------
// Metacyclic p-group families over <a, b | a^{p^2} = b^p = 1, b^-1 a b = a^{1+p}>.

namespace detail {

inline Elem meta_word(std::size_t p, std::int64_t i, std::int64_t j) {
  const std::uint64_t na = p * p;
  return static_cast<Elem>(mod_norm(i, na) * p + mod_norm(j, p));
}

inline void require_odd_prime(std::size_t p) {
  if (p % 2 == 0 || !is_prime(p)) throw ValidationError("p must be an odd prime");
}

}  // namespace detail

/// S = {1, a^2, a^p b^2, a^{2-p} b^2}
inline FamilyMember g_p(std::size_t p) {
  detail::require_odd_prime(p);
  auto h = detail::share(make_metacyclic(p * p, p, 1 + p));
  const auto ip = static_cast<std::int64_t>(p);
  auto t = validate_triple(h, {}, {},
                           {0, detail::meta_word(p, 2, 0), detail::meta_word(p, ip, 2), detail::meta_word(p, 2 - ip, 2)});
  return {"g-p", {{"p", p}}, std::move(t)};
}

/// All lambda in [0, p^2) with lambda^2 = -1 mod p^2, ascending.
inline std::vector<std::size_t> sqrt_minus_one(std::size_t p) {
  const std::size_t q = p * p;
  std::vector<std::size_t> out;
  for (std::size_t l = 0; l < q; ++l)
    if ((l * l + 1) % q == 0) out.push_back(l);
  return out;
}

struct HpParameters {
  std::size_t lambda = 0, s = 0;
};

/// Least lambda with lambda^2 = -1 mod p^2 and s = (1 + lambda - lambda p) / 2 mod p^2.
inline HpParameters h_p_parameters(std::size_t p) {
  detail::require_odd_prime(p);
  if (p % 4 != 1) throw ValidationError("p must be congruent to 1 mod 4");
  const auto roots = sqrt_minus_one(p);
  if (roots.empty()) throw ValidationError("no square root of -1 mod p^2");
  const std::size_t q = p * p;
  const std::size_t l = roots.front();
  const std::size_t inv2 = (q + 1) / 2;
  const std::uint64_t num = detail::mod_norm(1 + static_cast<std::int64_t>(l) - static_cast<std::int64_t>(l * p), q);
  return {l, static_cast<std::size_t>(num * inv2 % q)};
}

/// T = {1, a, a^s b^2, a^{1-s} b^2}
inline FamilyMember h_p(std::size_t p) {
  const auto hp = h_p_parameters(p);
  auto h = detail::share(make_metacyclic(p * p, p, 1 + p));
  const auto s = static_cast<std::int64_t>(hp.s);
  auto t = validate_triple(h, {}, {},
                           {0, detail::meta_word(p, 1, 0), detail::meta_word(p, s, 2), detail::meta_word(p, 1 - s, 2)});
  return {"h-p", {{"p", p}, {"lambda", hp.lambda}, {"s", hp.s}}, std::move(t)};
}

// ---------------------------------------------------------------------------
// Sporadic examples.

/// (C_28, {a, a^-1}, {a^13, a^-13}, {1, a, a^6, a^19})
inline FamilyMember example_c28() {
  auto h = detail::share(make_cyclic(28));
  auto t = validate_triple(h, {1, 27}, {13, 15}, {0, 1, 6, 19});
  return {"c28-example", nlohmann::json::object(), std::move(t)};
}

/// (<a,b | a^9 = b^3 = 1, b^-1 a b = a^4>, {}, {}, {1, a, ab, a^4 b^2})
inline FamilyMember counterexample_54() {
  auto h = detail::share(make_metacyclic(9, 3, 4));
  // a^i b^j has index 3 i + j.
  auto t = validate_triple(h, {}, {}, {0, 3, 4, 14});
  return {"counterexample-54", nlohmann::json::object(), std::move(t)};
}

/// (C_5, {a, a^4}, {a^2, a^3}, {1})
inline FamilyMember petersen() {
  auto h = detail::share(make_cyclic(5));
  auto t = validate_triple(h, {1, 4}, {2, 3}, {0});
  return {"petersen", nlohmann::json::object(), std::move(t)};
}

/// Generalised Petersen graph P(n, k): outer cycle 0..n-1, spokes i ~ n+i,
/// inner edges n+i ~ n+(i+k).
inline Graph generalized_petersen(std::size_t n, std::size_t k) {
  if (n < 3 || k < 1 || 2 * k >= n) throw ValidationError("P(n, k) needs n >= 3 and 1 <= k < n/2");
  Graph g(2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    g.add_edge(static_cast<Point>(i), static_cast<Point>((i + 1) % n));
    g.add_edge(static_cast<Point>(i), static_cast<Point>(n + i));
    g.add_edge(static_cast<Point>(n + i), static_cast<Point>(n + (i + k) % n));
  }
  return g;
}

/// Vertices (x, part, i) in Z_n x Z_2 x Z_2 with id part*2n + i*n + x;
/// (x,0,i) ~ (y,1,j) iff y - x lies in S_ij.
inline ColoredGraph tetracirculant(std::size_t n, const std::vector<std::size_t>& s00,
                                   const std::vector<std::size_t>& s01, const std::vector<std::size_t>& s10,
                                   const std::vector<std::size_t>& s11) {
  if (n < 1) throw ValidationError("n must be positive");
  const std::vector<std::size_t>* sets[2][2] = {{&s00, &s01}, {&s10, &s11}};
  for (auto& row : sets)
    for (auto* s : row)
      if (s->empty()) throw ValidationError("tetracirculant part sets must be nonempty");
  Graph g(4 * n);
  auto id = [n](std::size_t x, std::size_t part, std::size_t i) { return static_cast<Point>(part * 2 * n + i * n + x); };
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j)
      for (std::size_t x = 0; x < n; ++x)
        for (std::size_t d : *sets[i][j]) g.add_edge(id(x, 0, i), id((x + d) % n, 1, j));
  return ColoredGraph(std::move(g));
}

/// Gamma(n, lambda, 6) rewritten as a tetracirculant: S00 = {c_i}, S01 = {d_i},
/// S10 = {-d_i}, S11 = {-c_i}.
inline ColoredGraph dihedral_family_as_tetracirculant(const DihedralFamilyParams& p) {
  validate(p);
  std::vector<std::size_t> c, d, mc, md;
  for (std::size_t ci : dihedral_c_sequence(p)) {
    const std::size_t di = p.lambda * ci % p.n;
    c.push_back(ci);
    d.push_back(di);
    mc.push_back((p.n - ci) % p.n);
    md.push_back((p.n - di) % p.n);
  }
  return tetracirculant(p.n, c, d, md, mc);
}

// ---------------------------------------------------------------------------
// Exhaustive triple enumeration.

struct EnumerationConstraints {
  std::size_t max_valency = 4;
  std::size_t min_valency = 1;
  bool bi_abelian_only = false;  // R = L = empty
  bool connected_only = true;
  bool dedup_isomorphic = true;  // drop triples whose graph was already emitted
};

namespace detail {

using Mask = std::uint64_t;

inline Mask apply_mask(const std::vector<Elem>& image, Mask m) {
  Mask out = 0;
  while (m) {
    const int b = std::countr_zero(m);
    out |= Mask{1} << image[static_cast<std::size_t>(b)];
    m &= m - 1;
  }
  return out;
}

inline ElementSet mask_to_set(Mask m) {
  ElementSet s;
  while (m) {
    s.push_back(static_cast<Elem>(std::countr_zero(m)));
    m &= m - 1;
  }
  return s;
}

struct MaskGroup {
  std::size_t n;
  std::vector<std::vector<Elem>> left, conj;  // left[g][x] = g x,  conj[g][x] = g^-1 x g
  std::vector<Elem> inv;

  explicit MaskGroup(const FiniteGroup& h) : n(h.order()), left(n, std::vector<Elem>(n)), conj(n, std::vector<Elem>(n)), inv(n) {
    for (Elem g = 0; g < n; ++g) {
      inv[g] = h.inv(g);
      for (Elem x = 0; x < n; ++x) {
        left[g][x] = h.mul(g, x);
        conj[g][x] = h.conjugate(x, g);
      }
    }
  }
};

// A transformation of triples preserving the graph up to isomorphism:
// optional swap (R,L,S) -> (L,R,S^-1), then an automorphism, then the
// translation (R,L,S) -> (R, g^-1 L g, g^-1 S) with g in S.
struct TripleMap {
  bool swap;
  std::size_t aut;
  Elem g;
};

}  // namespace detail

/// Streams every normalised triple (1 in S) over `h` satisfying the
/// constraints, one representative per class under the maps above (least in
/// (S, R, L) mask order), and with `dedup_isomorphic` only the first triple of
/// each graph isomorphism class. The callback returns false to stop early.
inline void enumerate_triples(const GroupPtr& h, const EnumerationConstraints& c,
                              const std::function<bool(const BiCayleyTriple&)>& emit) {
  using detail::Mask;
  const std::size_t n = h->order();
  if (n > 63) throw BoundExceeded("triple enumeration supports groups of order at most 63");
  const detail::MaskGroup mg(*h);
  const auto auts = enumerate_automorphisms(*h);
  auto inv_mask = [&](Mask m) { return detail::apply_mask(mg.inv, m); };

  // Inverse-closed identity-free subsets by size.
  std::vector<Mask> blocks;  // {x, x^-1}
  for (Elem x = 1; x < n; ++x)
    if (mg.inv[x] >= x) blocks.push_back((Mask{1} << x) | (Mask{1} << mg.inv[x]));
  const std::size_t max_rl = c.bi_abelian_only ? 0 : (c.max_valency >= 1 ? c.max_valency - 1 : 0);
  std::vector<std::vector<Mask>> sym_sets(max_rl + 1);
  std::function<void(std::size_t, Mask)> gen_sym = [&](std::size_t i, Mask m) {
    const auto sz = static_cast<std::size_t>(std::popcount(m));
    if (sz <= max_rl) sym_sets[sz].push_back(m);
    for (std::size_t j = i; j < blocks.size(); ++j) {
      if (sz + static_cast<std::size_t>(std::popcount(blocks[j])) > max_rl) continue;
      gen_sym(j + 1, m | blocks[j]);
    }
  };
  gen_sym(0, 0);
  for (auto& v : sym_sets) std::sort(v.begin(), v.end());

  std::set<CanonicalForm> seen;
  bool stop = false;
  for (std::size_t ssize = 1; ssize <= c.max_valency && !stop; ++ssize) {
    // S = {1} u (ssize-1 further elements) in increasing combination order.
    std::function<void(Elem, Mask, std::size_t)> gen_s = [&](Elem from, Mask s, std::size_t left) {
      if (stop) return;
      if (left > 0) {
        for (Elem x = from; x < n && !stop; ++x) gen_s(x + 1, s | (Mask{1} << x), left - 1);
        return;
      }
      // S must be least among its images; collect the maps fixing it.
      std::vector<detail::TripleMap> fixing;
      for (int sw = 0; sw < 2; ++sw) {
        const Mask base = sw ? inv_mask(s) : s;
        for (std::size_t a = 0; a < auts.size(); ++a) {
          const Mask img = detail::apply_mask(auts[a].image, base);
          for (Mask rest = img; rest; rest &= rest - 1) {
            const auto g = static_cast<Elem>(std::countr_zero(rest));
            const Mask t = detail::apply_mask(mg.left[mg.inv[g]], img);
            if (t < s) return;
            if (t == s) fixing.push_back({sw != 0, a, g});
          }
        }
      }
      for (std::size_t rl = 0; rl < sym_sets.size() && !stop; ++rl) {
        const std::size_t val = rl + ssize;
        if (val > c.max_valency || val < c.min_valency) continue;
        for (Mask r : sym_sets[rl]) {
          for (Mask l : sym_sets[rl]) {
            bool least = true;
            for (const auto& f : fixing) {
              Mask r2 = f.swap ? l : r, l2 = f.swap ? r : l;
              r2 = detail::apply_mask(auts[f.aut].image, r2);
              l2 = detail::apply_mask(mg.conj[f.g], detail::apply_mask(auts[f.aut].image, l2));
              if (r2 < r || (r2 == r && l2 < l)) {
                least = false;
                break;
              }
            }
            if (!least) continue;
            BiCayleyTriple t{h, detail::mask_to_set(r), detail::mask_to_set(l), detail::mask_to_set(s)};
            if (c.connected_only && !generates(*h, [&] {
                  ElementSet u = t.R;
                  u.insert(u.end(), t.L.begin(), t.L.end());
                  u.insert(u.end(), t.S.begin(), t.S.end());
                  return make_set(std::move(u));
                }()))
              continue;
            if (c.dedup_isomorphic && !seen.insert(canonical_form(build_graph(t).graph)).second) continue;
            if (!emit(t)) {
              stop = true;
              return;
            }
          }
        }
      }
    };
    gen_s(1, Mask{1}, ssize - 1);
  }
}

inline std::vector<BiCayleyTriple> enumerate_triples(const GroupPtr& h, const EnumerationConstraints& c) {
  std::vector<BiCayleyTriple> out;
  enumerate_triples(h, c, [&out](const BiCayleyTriple& t) {
    out.push_back(t);
    return true;
  });
  return out;
}

/// Abelian groups of every order up to `max_order`, one per isomorphism type.
inline std::vector<GroupPtr> abelian_groups_up_to(std::size_t max_order) {
  std::vector<GroupPtr> out;
  // Invariant factor decompositions d1 | d2 | ... with product <= max_order.
  std::function<void(std::vector<std::size_t>&, std::size_t)> rec = [&](std::vector<std::size_t>& f, std::size_t prod) {
    if (!f.empty()) {
      if (f.size() == 1) out.push_back(detail::share(make_cyclic(f[0])));
      else if (f.size() == 2) out.push_back(detail::share(make_abelian2(f[1], f[0])));
      else {
        std::vector<std::size_t> rev(f.rbegin(), f.rend());
        out.push_back(detail::share(make_abelian(rev)));
      }
    }
    const std::size_t lo = f.empty() ? 2 : f.back();
    for (std::size_t d = lo; prod * d <= max_order; ++d) {
      if (!f.empty() && d % f.back() != 0) continue;
      f.push_back(d);
      rec(f, prod * d);
      f.pop_back();
    }
  };
  out.push_back(detail::share(make_cyclic(1)));
  std::vector<std::size_t> f;
  rec(f, 1);
  std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a->order() < b->order(); });
  return out;
}

}  // namespace bct
