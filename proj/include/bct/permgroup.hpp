#pragma once

// Permutation groups given by generators, with a deterministic Schreier-Sims
// stabiliser chain for exact order, membership and stabilisers, plus orbit
// computations on vertices, edges and s-arcs of a graph.

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bct/errors.hpp"
#include "bct/graph.hpp"
#include "bct/permutation.hpp"

namespace bct {

namespace detail {

struct UnionFind {
  std::vector<std::size_t> parent;
  std::size_t components;

  explicit UnionFind(std::size_t n) : parent(n), components(n) { std::iota(parent.begin(), parent.end(), std::size_t{0}); }

  std::size_t find(std::size_t x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }

  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (a > b) std::swap(a, b);
    parent[b] = a;  // keep the least index as root
    --components;
    return true;
  }
};

inline std::vector<Permutation> canonical_generators(std::size_t degree, std::vector<Permutation> gens) {
  std::vector<Permutation> out;
  for (auto& g : gens) {
    if (g.degree() != degree) throw ValidationError("generator degree mismatch");
    if (!g.is_identity()) out.push_back(std::move(g));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace detail

/// A permutation group with a stabiliser chain.
///
/// The base starts with the requested prefix (points may be fixed by the whole
/// group) and is extended by the least point moved by a new strong generator.
class PermGroup {
 public:
  PermGroup() : PermGroup(0, {}) {}

  PermGroup(std::size_t degree, std::vector<Permutation> gens, const std::vector<Point>& base_prefix = {})
      : degree_(degree), generators_(detail::canonical_generators(degree, std::move(gens))) {
    for (Point b : base_prefix) {
      if (b >= degree_) throw ValidationError("base point out of range");
    }
    build(base_prefix);
  }

  static PermGroup trivial(std::size_t degree) { return PermGroup(degree, {}); }

  std::size_t degree() const noexcept { return degree_; }
  const std::vector<Permutation>& generators() const noexcept { return generators_; }

  std::vector<Point> base() const {
    std::vector<Point> b;
    for (const auto& l : levels_) b.push_back(l.base);
    return b;
  }

  std::vector<std::size_t> transversal_sizes() const {
    std::vector<std::size_t> s;
    for (const auto& l : levels_) s.push_back(l.orbit.size());
    return s;
  }

  /// Exact order, or nothing when it does not fit in 64 bits.
  std::optional<std::uint64_t> try_order() const {
    std::uint64_t o = 1;
    for (const auto& l : levels_)
      if (__builtin_mul_overflow(o, static_cast<std::uint64_t>(l.orbit.size()), &o)) return std::nullopt;
    return o;
  }

  std::uint64_t order() const {
    const auto o = try_order();
    if (!o) throw BoundExceeded("group order overflows 64 bits; use order_decimal()");
    return *o;
  }

  /// Exact order in decimal, for any size.
  std::string order_decimal() const {
    std::vector<std::uint32_t> digits{1};  // little-endian base 10^9
    for (const auto& l : levels_) {
      std::uint64_t carry = 0;
      for (auto& d : digits) {
        const std::uint64_t cur = static_cast<std::uint64_t>(d) * l.orbit.size() + carry;
        d = static_cast<std::uint32_t>(cur % 1000000000U);
        carry = cur / 1000000000U;
      }
      while (carry) digits.push_back(static_cast<std::uint32_t>(carry % 1000000000U)), carry /= 1000000000U;
    }
    std::string out = std::to_string(digits.back());
    for (auto it = digits.rbegin() + 1; it != digits.rend(); ++it) {
      const std::string part = std::to_string(*it);
      out += std::string(9 - part.size(), '0') + part;
    }
    return out;
  }

  bool contains(const Permutation& p) const {
    if (p.degree() != degree_) return false;
    auto [residue, level] = sift(p, 0);
    return level == levels_.size() && residue.is_identity();
  }

  /// Strong generators fixing the first k base points; they generate that
  /// pointwise stabiliser.
  std::vector<Permutation> stabiliser_generators(std::size_t k) const {
    if (k < levels_.size()) return levels_[k].gens;
    return {};
  }

  /// Pointwise stabiliser of an ordered point sequence.
  PermGroup pointwise_stabiliser(const std::vector<Point>& points) const {
    PermGroup rebased(degree_, generators_, points);
    return PermGroup(degree_, rebased.stabiliser_generators(points.size()));
  }

  PermGroup point_stabiliser(Point v) const { return pointwise_stabiliser({v}); }
  PermGroup arc_stabiliser(Point u, Point v) const { return pointwise_stabiliser({u, v}); }

  /// Setwise stabiliser of {u, v}: the arc stabiliser plus one element
  /// swapping u and v when such an element exists.
  PermGroup edge_stabiliser(Point u, Point v) const {
    PermGroup rebased(degree_, generators_, {u, v});
    auto gens = rebased.stabiliser_generators(2);
    if (auto swap = rebased.element_mapping_pair(u, v)) gens.push_back(*swap);
    return PermGroup(degree_, std::move(gens));
  }

  /// Some element with u -> x, or nothing.
  std::optional<Permutation> element_mapping(Point u, Point x) const {
    PermGroup rebased(degree_, generators_, {u});
    const auto& l = rebased.levels_[0];
    if (l.pos[x] < 0) return std::nullopt;
    return l.reps[static_cast<std::size_t>(l.pos[x])];
  }

  /// For every point x, some element mapping v to x (nothing outside the orbit).
  std::vector<std::optional<Permutation>> transversal_from(Point v) const {
    PermGroup rebased(degree_, generators_, {v});
    const auto& l = rebased.levels_[0];
    std::vector<std::optional<Permutation>> out(degree_);
    for (std::size_t i = 0; i < l.orbit.size(); ++i) out[l.orbit[i]] = l.reps[i];
    return out;
  }

  bool is_transitive() const { return degree_ <= 1 || orbits().size() == 1; }

  /// Orbits on points, each sorted, ordered by least element.
  std::vector<std::vector<Point>> orbits() const {
    detail::UnionFind uf(degree_);
    for (const auto& g : generators_)
      for (Point v = 0; v < degree_; ++v) uf.unite(v, g[v]);
    std::vector<std::vector<Point>> out;
    std::vector<std::ptrdiff_t> slot(degree_, -1);
    for (Point v = 0; v < degree_; ++v) {
      auto r = uf.find(v);
      if (slot[r] < 0) {
        slot[r] = static_cast<std::ptrdiff_t>(out.size());
        out.emplace_back();
      }
      out[static_cast<std::size_t>(slot[r])].push_back(v);
    }
    return out;
  }

  std::vector<Point> orbit(Point v) const {
    for (auto& o : orbits())
      if (std::binary_search(o.begin(), o.end(), v)) return o;
    return {v};
  }

  /// All elements, in chain order; throws if the order exceeds `bound`.
  std::vector<Permutation> elements(std::uint64_t bound = 100000) const {
    if (order() > bound) throw BoundExceeded("element enumeration bound exceeded (order " + std::to_string(order()) + ")");
    std::vector<Permutation> out;
    out.reserve(static_cast<std::size_t>(order()));
    auto rec = [&](auto& self, std::size_t level, const Permutation& suffix) -> void {
      if (level == 0) {
        out.push_back(suffix);
        return;
      }
      const auto& l = levels_[level - 1];
      for (const auto& u : l.reps) self(self, level - 1, suffix.then(u));
    };
    rec(rec, levels_.size(), Permutation::identity(degree_));
    return out;
  }

  bool is_subgroup_of(const PermGroup& g) const {
    return std::all_of(generators_.begin(), generators_.end(), [&g](const auto& p) { return g.contains(p); });
  }

  bool is_abelian() const {
    for (std::size_t i = 0; i < generators_.size(); ++i)
      for (std::size_t j = i + 1; j < generators_.size(); ++j)
        if (generators_[i].then(generators_[j]) != generators_[j].then(generators_[i])) return false;
    return true;
  }

  /// Normal closure-free conjugation test: every conjugate of a generator of
  /// `h` by a generator of this group lies in `h`.
  bool normalises(const PermGroup& h) const {
    for (const auto& g : generators_)
      for (const auto& x : h.generators())
        if (!h.contains(x.conjugate_by(g))) return false;
    return true;
  }

  /// Subgroup generated by the given elements together with nothing else.
  PermGroup subgroup(std::vector<Permutation> gens) const { return PermGroup(degree_, std::move(gens)); }

  /// Commutator subgroup [G, G], as the normal closure of generator commutators.
  PermGroup derived_subgroup() const {
    std::vector<Permutation> comms;
    for (const auto& a : generators_)
      for (const auto& b : generators_) {
        auto c = a.inverse().then(b.inverse()).then(a).then(b);
        if (!c.is_identity()) comms.push_back(std::move(c));
      }
    return normal_closure(std::move(comms));
  }

  /// Smallest normal subgroup containing `gens`.
  PermGroup normal_closure(std::vector<Permutation> gens) const {
    PermGroup n(degree_, gens);
    bool grew = true;
    while (grew) {
      grew = false;
      auto current = n.generators();
      for (const auto& x : current)
        for (const auto& g : generators_) {
          auto c = x.conjugate_by(g);
          if (!n.contains(c)) {
            auto next = n.generators();
            next.push_back(std::move(c));
            n = PermGroup(degree_, std::move(next));
            grew = true;
          }
        }
    }
    return n;
  }

 private:
  struct Level {
    Point base = 0;
    std::vector<Permutation> gens;
    std::vector<Point> orbit;
    std::vector<std::ptrdiff_t> pos;  // point -> index in orbit, or -1
    std::vector<Permutation> reps;    // reps[i] maps base to orbit[i]
    std::vector<Permutation> inv_reps;
  };

  std::optional<Permutation> element_mapping_pair(Point u, Point v) const {
    // Requires base to start with (u, v). Any element with u -> v is h * t with
    // h in G_u and t = rep(v); it maps v -> u iff v^h = u^(t^-1).
    const auto& l0 = levels_[0];
    if (l0.pos[v] < 0) return std::nullopt;
    const auto& t = l0.reps[static_cast<std::size_t>(l0.pos[v])];
    const Point w = l0.inv_reps[static_cast<std::size_t>(l0.pos[v])][u];
    if (levels_.size() < 2) return std::nullopt;
    const auto& l1 = levels_[1];
    if (l1.pos[w] < 0) return std::nullopt;
    return l1.reps[static_cast<std::size_t>(l1.pos[w])].then(t);
  }

  std::pair<Permutation, std::size_t> sift(Permutation g, std::size_t start) const {
    for (std::size_t i = start; i < levels_.size(); ++i) {
      const auto& l = levels_[i];
      Point beta = g[l.base];
      if (l.pos[beta] < 0) return {std::move(g), i};
      g = g.then(l.inv_reps[static_cast<std::size_t>(l.pos[beta])]);
    }
    return {std::move(g), levels_.size()};
  }

  static Point least_moved_point(const Permutation& p) {
    for (Point v = 0; v < p.degree(); ++v)
      if (p[v] != v) return v;
    return 0;
  }

  void recompute_orbit(Level& l) const {
    l.orbit.clear();
    l.reps.clear();
    l.inv_reps.clear();
    l.pos.assign(degree_, -1);
    l.orbit.push_back(l.base);
    l.pos[l.base] = 0;
    l.reps.push_back(Permutation::identity(degree_));
    l.inv_reps.push_back(Permutation::identity(degree_));
    for (std::size_t i = 0; i < l.orbit.size(); ++i) {
      for (const auto& s : l.gens) {
        Point w = s[l.orbit[i]];
        if (l.pos[w] >= 0) continue;
        l.pos[w] = static_cast<std::ptrdiff_t>(l.orbit.size());
        l.orbit.push_back(w);
        Permutation r = l.reps[i].then(s);
        l.inv_reps.push_back(r.inverse());
        l.reps.push_back(std::move(r));
      }
    }
  }

  void build(const std::vector<Point>& prefix) {
    levels_.clear();
    if (degree_ == 0) return;
    std::vector<Point> base = prefix;
    for (const auto& g : generators_) {
      bool fixes_all = std::all_of(base.begin(), base.end(), [&g](Point b) { return g[b] == b; });
      if (fixes_all) base.push_back(least_moved_point(g));
    }
    for (std::size_t i = 0; i < base.size(); ++i) {
      Level l;
      l.base = base[i];
      for (const auto& g : generators_) {
        bool fixes = true;
        for (std::size_t j = 0; j < i && fixes; ++j) fixes = g[base[j]] == base[j];
        if (fixes) l.gens.push_back(g);
      }
      recompute_orbit(l);
      levels_.push_back(std::move(l));
    }

    std::ptrdiff_t i = static_cast<std::ptrdiff_t>(levels_.size()) - 1;
    while (i >= 0) {
      bool added = false;
      auto& l = levels_[static_cast<std::size_t>(i)];
      for (std::size_t bi = 0; !added && bi < l.orbit.size(); ++bi) {
        for (std::size_t si = 0; !added && si < l.gens.size(); ++si) {
          const auto& s = l.gens[si];
          Point img = s[l.orbit[bi]];
          const auto& back = l.inv_reps[static_cast<std::size_t>(l.pos[img])];
          // Cheap identity test before materialising the Schreier generator.
          bool trivial = true;
          for (Point v = 0; v < degree_ && trivial; ++v) trivial = back[s[l.reps[bi][v]]] == v;
          if (trivial) continue;
          Permutation schreier = l.reps[bi].then(s).then(back);
          auto [h, j] = sift(std::move(schreier), static_cast<std::size_t>(i) + 1);
          if (j == levels_.size() && h.is_identity()) continue;
          if (j == levels_.size()) {
            Level nl;
            nl.base = least_moved_point(h);
            levels_.push_back(std::move(nl));
          }
          for (std::size_t t = static_cast<std::size_t>(i) + 1; t <= j; ++t) {
            levels_[t].gens.push_back(h);
            recompute_orbit(levels_[t]);
          }
          // Strong generators added below level i must also be recorded at the top.
          generators_.push_back(h);
          i = static_cast<std::ptrdiff_t>(j);
          added = true;
        }
      }
      if (!added) --i;
    }
    generators_ = detail::canonical_generators(degree_, std::move(generators_));
    // Trim trailing trivial levels that are not part of the requested prefix.
    while (levels_.size() > prefix.size() && levels_.back().orbit.size() == 1) levels_.pop_back();
  }

  std::size_t degree_;
  std::vector<Permutation> generators_;
  std::vector<Level> levels_;
};

// ---------------------------------------------------------------------------
// s-arcs of a graph (s <= 3): walks (v0..vs) with v_{j+2} != v_j, indexed densely.

class SArcIndex {
 public:
  SArcIndex(const Graph& g, unsigned s) : g_(&g), s_(s) {
    if (s > 3) throw ValidationError("s-arc enumeration supports s <= 3 only");
    // level 0: vertices
    std::vector<std::array<Point, 4>> prev;
    prev.reserve(g.order());
    for (Point v = 0; v < g.order(); ++v) prev.push_back({v, 0, 0, 0});
    arcs_ = prev;
    for (unsigned lvl = 1; lvl <= s; ++lvl) {
      std::vector<std::size_t> off(prev.size() + 1, 0);
      std::vector<std::array<Point, 4>> next;
      for (std::size_t p = 0; p < prev.size(); ++p) {
        off[p] = next.size();
        Point last = prev[p][lvl - 1];
        for (Point w : g.neighbours(last)) {
          if (lvl >= 2 && w == prev[p][lvl - 2]) continue;
          auto a = prev[p];
          a[lvl] = w;
          next.push_back(a);
        }
      }
      off[prev.size()] = next.size();
      offsets_.push_back(std::move(off));
      prev = std::move(next);
    }
    arcs_ = std::move(prev);
  }

  unsigned s() const noexcept { return s_; }
  std::size_t size() const noexcept { return arcs_.size(); }
  const std::array<Point, 4>& arc(std::size_t i) const { return arcs_[i]; }

  /// Dense index of the s-arc given by s+1 vertices (assumed valid).
  std::size_t index_of(const std::array<Point, 4>& a) const {
    std::size_t idx = a[0];
    for (unsigned lvl = 1; lvl <= s_; ++lvl) {
      const auto& nb = g_->neighbours(a[lvl - 1]);
      std::size_t rank = static_cast<std::size_t>(std::lower_bound(nb.begin(), nb.end(), a[lvl]) - nb.begin());
      if (lvl >= 2 && a[lvl - 2] < a[lvl]) --rank;
      idx = offsets_[lvl - 1][idx] + rank;
    }
    return idx;
  }

  std::size_t image_index(std::size_t i, const Permutation& p) const {
    auto a = arcs_[i];
    for (unsigned j = 0; j <= s_; ++j) a[j] = p[a[j]];
    return index_of(a);
  }

 private:
  const Graph* g_;
  unsigned s_;
  std::vector<std::vector<std::size_t>> offsets_;
  std::vector<std::array<Point, 4>> arcs_;
};

enum class OrbitDomain { vertices, edges, arcs, two_arcs, three_arcs };

struct OrbitSummary {
  std::size_t count = 0;
  std::vector<std::vector<Point>> representatives;  // least member of each orbit
  std::vector<std::size_t> sizes;
};

/// Orbits of `g` on vertices, edges or s-arcs of `graph`. Edges are reported
/// as (u, v) with u < v; s-arcs as vertex sequences.
inline OrbitSummary orbits_on(const PermGroup& group, const Graph& graph, OrbitDomain domain) {
  if (group.degree() != graph.order()) throw ValidationError("group degree does not match graph order");
  unsigned s = 0;
  switch (domain) {
    case OrbitDomain::vertices: s = 0; break;
    case OrbitDomain::edges:
    case OrbitDomain::arcs: s = 1; break;
    case OrbitDomain::two_arcs: s = 2; break;
    case OrbitDomain::three_arcs: s = 3; break;
  }
  SArcIndex index(graph, s);
  detail::UnionFind uf(index.size());
  for (const auto& p : group.generators())
    for (std::size_t i = 0; i < index.size(); ++i) uf.unite(i, index.image_index(i, p));
  if (domain == OrbitDomain::edges) {
    for (std::size_t i = 0; i < index.size(); ++i) {
      const auto& a = index.arc(i);
      uf.unite(i, index.index_of({a[1], a[0], 0, 0}));
    }
  }
  OrbitSummary out;
  std::vector<std::ptrdiff_t> slot(index.size(), -1);
  for (std::size_t i = 0; i < index.size(); ++i) {
    auto r = uf.find(i);
    if (slot[r] < 0) {
      slot[r] = static_cast<std::ptrdiff_t>(out.sizes.size());
      const auto& a = index.arc(i);
      out.representatives.emplace_back(a.begin(), a.begin() + s + 1);
      out.sizes.push_back(0);
    }
    ++out.sizes[static_cast<std::size_t>(slot[r])];
  }
  if (domain == OrbitDomain::edges)
    for (auto& sz : out.sizes) sz /= 2;
  out.count = out.sizes.size();
  return out;
}

/// True when the subgroup generated by `h_gens` is normal in `g`.
inline bool is_normal_in(const std::vector<Permutation>& h_gens, const PermGroup& g) {
  PermGroup h(g.degree(), h_gens);
  if (!h.is_subgroup_of(g)) return false;
  return g.normalises(h);
}

}  // namespace bct
