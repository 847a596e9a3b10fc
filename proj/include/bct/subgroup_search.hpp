#pragma once

// Subgroup searches inside a vertex-permutation group: regular subgroups
// (Cayley recognition), semiregular cyclic subgroups, metacirculant and weak
// metacirculant witnesses.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "bct/errors.hpp"
#include "bct/permgroup.hpp"
#include "bct/permutation.hpp"

namespace bct {

struct SearchOptions {
  std::uint64_t max_group_order = 10000;
};

enum class SearchStatus { found, none, inconclusive };

inline const char* to_string(SearchStatus s) {
  switch (s) {
    case SearchStatus::found: return "found";
    case SearchStatus::none: return "none";
    case SearchStatus::inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

struct RegularSubgroupResult {
  SearchStatus status = SearchStatus::inconclusive;
  std::vector<Permutation> generators;
  std::vector<Permutation> elements;  // elements[v] maps point 0 to v
};

namespace detail {

/// Closure of `gens` assuming the result should act semiregularly: elements
/// indexed by the image of point 0. Fails if a non-identity element has a
/// fixed point or two elements send 0 to the same point.
inline std::optional<std::vector<std::optional<Permutation>>> semiregular_closure(
    std::size_t degree, const std::vector<Permutation>& gens) {
  std::vector<std::optional<Permutation>> by_image(degree);
  by_image[0] = Permutation::identity(degree);
  std::vector<Point> todo{0};
  for (std::size_t i = 0; i < todo.size(); ++i) {
    const Permutation x = *by_image[todo[i]];
    for (const auto& g : gens) {
      Permutation y = x.then(g);
      const Point img = y[0];
      if (by_image[img]) {
        if (*by_image[img] != y) return std::nullopt;
        continue;
      }
      if (!y.is_identity() && y.fixed_points() > 0) return std::nullopt;
      by_image[img] = std::move(y);
      todo.push_back(img);
    }
  }
  return by_image;
}

}  // namespace detail

/// Searches for a subgroup of `g` acting regularly on all points. Complete for
/// |G| up to the bound; above it the status is inconclusive.
inline RegularSubgroupResult regular_subgroup_search(const PermGroup& g, const SearchOptions& opts = {}) {
  RegularSubgroupResult res;
  const std::size_t n = g.degree();
  if (n == 0) return res;
  if (!g.try_order() || *g.try_order() > opts.max_group_order) return res;
  if (!g.is_transitive() || g.order() % n != 0) {
    res.status = SearchStatus::none;
    return res;
  }
  const auto trans = g.transversal_from(0);
  const auto stab = g.point_stabiliser(0).elements(opts.max_group_order);
  std::set<std::vector<Point>> visited;  // subgroups already explored, as concatenated element images

  std::vector<Permutation> gens;
  auto rec = [&](auto& self, const std::vector<std::optional<Permutation>>& k) -> bool {
    Point u = 0;
    while (u < n && k[u]) ++u;
    if (u == n) {
      res.elements.clear();
      for (const auto& e : k) res.elements.push_back(*e);
      return true;
    }
    for (const auto& h : stab) {
      Permutation cand = h.then(*trans[u]);
      if (cand.fixed_points() > 0) continue;
      gens.push_back(cand);
      auto closure = detail::semiregular_closure(n, gens);
      if (closure) {
        std::vector<Point> key;
        for (const auto& e : *closure)
          if (e) key.insert(key.end(), e->image.begin(), e->image.end());
        if (visited.insert(key).second && self(self, *closure)) return true;
      }
      gens.pop_back();
    }
    return false;
  };
  std::vector<std::optional<Permutation>> start(n);
  start[0] = Permutation::identity(n);
  if (n == 1 || rec(rec, start)) {
    res.status = SearchStatus::found;
    res.generators = gens;
    if (n == 1) res.elements = {Permutation::identity(1)};
  } else {
    res.status = SearchStatus::none;
  }
  return res;
}

/// Lexicographically least generator of the cyclic group <p>.
inline Permutation cyclic_subgroup_key(const Permutation& p) {
  const std::uint64_t ord = p.order();
  Permutation best = p;
  Permutation x = p;
  for (std::uint64_t k = 2; k < ord; ++k) {
    x = x.then(p);
    if (std::gcd(k, ord) == 1 && x < best) best = x;
  }
  return best;
}

/// Elements of order n whose cycles all have length n, with exactly m cycles;
/// one generator (the least) per cyclic subgroup, sorted.
inline std::vector<Permutation> semiregular_element_search(const PermGroup& g, std::size_t order_n,
                                                           std::size_t orbit_count_m,
                                                           const SearchOptions& opts = {}) {
  if (!g.try_order() || *g.try_order() > opts.max_group_order) throw BoundExceeded("semiregular search bound exceeded");
  if (order_n * orbit_count_m != g.degree()) return {};
  std::set<Permutation> keys;
  for (const auto& e : g.elements(opts.max_group_order)) {
    if (order_n == 1) {
      if (e.is_identity()) keys.insert(e);
      continue;
    }
    if (e.is_identity()) continue;
    auto cyc = e.cycles(true);
    if (cyc.size() != orbit_count_m) continue;
    if (!std::all_of(cyc.begin(), cyc.end(), [&](const auto& c) { return c.size() == order_n; })) continue;
    keys.insert(cyclic_subgroup_key(e));
  }
  return {keys.begin(), keys.end()};
}

struct MetacirculantWitness {
  std::size_t m = 0, n = 0;
  Permutation sigma, tau;
};

namespace detail {

inline bool normalises_cyclic(const Permutation& tau, const Permutation& sigma) {
  // tau^-1 sigma tau must be a power of sigma; compare on point images.
  Permutation c = sigma.conjugate_by(tau);
  Permutation x = sigma;
  const std::uint64_t ord = sigma.order();
  for (std::uint64_t k = 1; k <= ord; ++k) {
    if (x == c) return true;
    x = x.then(sigma);
  }
  return false;
}

/// tau permutes the orbits of sigma as a single m-cycle.
inline bool cycles_orbits(const Permutation& tau, const std::vector<std::size_t>& orbit_of, std::size_t m,
                          const std::vector<Point>& orbit_rep) {
  std::size_t o = 0, steps = 0;
  do {
    o = orbit_of[tau[orbit_rep[o]]];
    ++steps;
  } while (o != 0 && steps <= m);
  return o == 0 && steps == m;
}

}  // namespace detail

/// An (m,n)-metacirculant witness inside `g`, if one exists.
inline std::optional<MetacirculantWitness> metacirculant_witness(const PermGroup& g, std::size_t m, std::size_t n,
                                                                 const SearchOptions& opts = {}) {
  if (!g.try_order() || *g.try_order() > opts.max_group_order) throw BoundExceeded("metacirculant search bound exceeded");
  if (m * n != g.degree()) return std::nullopt;
  const auto sigmas = semiregular_element_search(g, n, m, opts);
  if (sigmas.empty()) return std::nullopt;
  const auto elems = g.elements(opts.max_group_order);
  for (const auto& s : sigmas) {
    std::vector<std::size_t> orbit_of(g.degree());
    std::vector<Point> orbit_rep;
    for (const auto& c : s.cycles(true)) {
      for (Point v : c) orbit_of[v] = orbit_rep.size();
      orbit_rep.push_back(c.front());
    }
    for (const auto& t : elems) {
      if (!detail::cycles_orbits(t, orbit_of, m, orbit_rep)) continue;
      auto cyc = t.cycles(true);
      if (!std::any_of(cyc.begin(), cyc.end(), [m](const auto& c) { return c.size() == m; })) continue;
      if (!detail::normalises_cyclic(t, s)) continue;
      return MetacirculantWitness{m, n, s, t};
    }
  }
  return std::nullopt;
}

inline bool is_metacirculant(const PermGroup& g, std::size_t m, std::size_t n, const SearchOptions& opts = {}) {
  return metacirculant_witness(g, m, n, opts).has_value();
}

/// Per divisor pair (m, n) with m n = |V|, whether an (m,n)-metacirculant witness exists.
inline std::vector<std::pair<std::pair<std::size_t, std::size_t>, bool>> metacirculant_table(
    const PermGroup& g, const SearchOptions& opts = {}) {
  std::vector<std::pair<std::pair<std::size_t, std::size_t>, bool>> out;
  const std::size_t v = g.degree();
  for (std::size_t m = 1; m <= v; ++m)
    if (v % m == 0) out.push_back({{m, v / m}, is_metacirculant(g, m, v / m, opts)});
  return out;
}

struct WeakMetacirculantWitness {
  Permutation a, b;  // <a> normal in <a, b>, and <a, b> transitive
  std::uint64_t order = 0;
};

/// A transitive metacyclic subgroup <a, b> with b normalising <a>, if one
/// exists; candidates a range over cyclic subgroups (least generators).
inline std::optional<WeakMetacirculantWitness> weak_metacirculant_witness(const PermGroup& g,
                                                                          const SearchOptions& opts = {}) {
  if (!g.try_order() || *g.try_order() > opts.max_group_order) throw BoundExceeded("weak metacirculant search bound exceeded");
  const auto elems = g.elements(opts.max_group_order);
  std::set<Permutation> cyclic_keys;
  for (const auto& e : elems) cyclic_keys.insert(cyclic_subgroup_key(e));
  std::vector<Permutation> as(cyclic_keys.begin(), cyclic_keys.end());
  // Larger cyclic subgroups first: a transitive metacyclic group is found sooner.
  std::stable_sort(as.begin(), as.end(), [](const auto& x, const auto& y) { return x.order() > y.order(); });
  const std::size_t deg = g.degree();
  for (const auto& a : as) {
    const std::uint64_t oa = a.order();
    for (const auto& b : elems) {
      // <a, b> = <a><b> has order at most |a| |b|.
      if (oa * b.order() < deg) continue;
      if (!detail::normalises_cyclic(b, a)) continue;
      PermGroup m(deg, {a, b});
      if (m.is_transitive()) return WeakMetacirculantWitness{a, b, m.order()};
    }
  }
  return std::nullopt;
}

inline bool is_weak_metacirculant(const PermGroup& g, const SearchOptions& opts = {}) {
  return weak_metacirculant_witness(g, opts).has_value();
}

}  // namespace bct
