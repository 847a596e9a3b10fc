#pragma once

// Exact finite groups given by multiplication tables, the structured families
// used for bi-Cayley hosts (cyclic, two-generator abelian, dihedral, split
// metacyclic) and enumeration of their automorphism groups.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "bct/errors.hpp"

namespace bct {

/// Index of an element inside the enumeration of its owning group; 0 is the identity.
using Elem = std::uint32_t;

/// Sorted, duplicate-free set of group elements.
using ElementSet = std::vector<Elem>;

inline ElementSet make_set(std::vector<Elem> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

enum class StructureKind { cyclic, abelian2, dihedral, metacyclic, table };

inline const char* to_string(StructureKind k) {
  switch (k) {
    case StructureKind::cyclic: return "cyclic";
    case StructureKind::abelian2: return "abelian2";
    case StructureKind::dihedral: return "dihedral";
    case StructureKind::metacyclic: return "metacyclic";
    case StructureKind::table: return "table";
  }
  return "table";
}

struct GroupStructure {
  StructureKind kind = StructureKind::table;
  // cyclic: {n}; abelian2: {d1, d2}; dihedral: {n}; metacyclic: {na, nb, r}; table: {}.
  std::vector<std::uint64_t> params;
};

namespace detail {

inline std::uint64_t mod_pow(std::uint64_t base, std::uint64_t exp, std::uint64_t mod) {
  if (mod == 1) return 0;
  std::uint64_t result = 1 % mod;
  base %= mod;
  while (exp > 0) {
    if (exp & 1U) result = result * base % mod;
    base = base * base % mod;
    exp >>= 1U;
  }
  return result;
}

inline std::optional<std::uint64_t> mod_inverse(std::uint64_t a, std::uint64_t mod) {
  std::int64_t t = 0, new_t = 1;
  std::int64_t r = static_cast<std::int64_t>(mod), new_r = static_cast<std::int64_t>(a % mod);
  while (new_r != 0) {
    std::int64_t q = r / new_r;
    std::tie(t, new_t) = std::make_pair(new_t, t - q * new_t);
    std::tie(r, new_r) = std::make_pair(new_r, r - q * new_r);
  }
  if (r != 1) return std::nullopt;
  if (t < 0) t += static_cast<std::int64_t>(mod);
  return static_cast<std::uint64_t>(t);
}

inline std::string power_word(const std::string& symbol, std::uint64_t e) {
  if (e == 0) return "";
  if (e == 1) return symbol;
  return symbol + "^" + std::to_string(e);
}

inline std::string join_words(std::initializer_list<std::string> parts) {
  std::string out;
  for (const auto& p : parts) {
    if (p.empty()) continue;
    if (!out.empty()) out += ' ';
    out += p;
  }
  return out.empty() ? "1" : out;
}

}  // namespace detail

/// A finite group stored as a full multiplication table.
///
/// Immutable after construction. Element 0 is the identity. Structured groups
/// keep their tag so callers can translate between words and indices.
class FiniteGroup {
 public:
  FiniteGroup(GroupStructure structure, std::size_t order, std::vector<Elem> mul_table,
              std::vector<Elem> generators, std::vector<std::string> names = {})
      : structure_(std::move(structure)),
        order_(order),
        mul_(std::move(mul_table)),
        generators_(std::move(generators)),
        names_(std::move(names)) {
    if (order_ == 0) throw ValidationError("group order must be positive");
    if (mul_.size() != order_ * order_) throw ValidationError("multiplication table has wrong size");
    for (Elem v : mul_) {
      if (v >= order_) throw ValidationError("multiplication table entry out of range");
    }
    inv_.assign(order_, 0);
    for (Elem x = 0; x < order_; ++x) {
      bool found = false;
      for (Elem y = 0; y < order_; ++y) {
        if (mul(x, y) == 0) {
          inv_[x] = y;
          found = true;
          break;
        }
      }
      if (!found) throw ValidationError("element without inverse in multiplication table");
    }
    for (Elem g : generators_) {
      if (g >= order_) throw ValidationError("generator index out of range");
    }
  }

  /// Builds a group from an explicit table. Verifies the group axioms and
  /// picks a deterministic generating set (least element outside the span).
  static FiniteGroup from_table(const std::vector<std::vector<Elem>>& table) {
    const std::size_t n = table.size();
    if (n == 0) throw ValidationError("empty multiplication table");
    std::vector<Elem> flat;
    flat.reserve(n * n);
    for (const auto& row : table) {
      if (row.size() != n) throw ValidationError("multiplication table is not square");
      flat.insert(flat.end(), row.begin(), row.end());
    }
    FiniteGroup g(GroupStructure{StructureKind::table, {}}, n, std::move(flat), {});
    g.verify_axioms();
    g.generators_ = greedy_generators(g);
    return g;
  }

  std::size_t order() const noexcept { return order_; }
  const GroupStructure& structure() const noexcept { return structure_; }
  const std::vector<Elem>& generators() const noexcept { return generators_; }

  Elem mul(Elem x, Elem y) const noexcept { return mul_[static_cast<std::size_t>(x) * order_ + y]; }
  Elem inv(Elem x) const noexcept { return inv_[x]; }

  Elem pow(Elem x, std::int64_t e) const {
    if (e < 0) {
      x = inv(x);
      e = -e;
    }
    Elem result = 0;
    Elem base = x;
    auto k = static_cast<std::uint64_t>(e);
    while (k > 0) {
      if (k & 1U) result = mul(result, base);
      base = mul(base, base);
      k >>= 1U;
    }
    return result;
  }

  Elem conjugate(Elem x, Elem g) const noexcept { return mul(mul(inv(g), x), g); }

  std::size_t element_order(Elem g) const {
    std::size_t k = 1;
    Elem x = g;
    while (x != 0) {
      x = mul(x, g);
      ++k;
    }
    return k;
  }

  bool is_abelian() const {
    for (Elem x = 0; x < order_; ++x)
      for (Elem y = x + 1; y < order_; ++y)
        if (mul(x, y) != mul(y, x)) return false;
    return true;
  }

  std::string name(Elem x) const {
    if (x < names_.size()) return names_[x];
    return x == 0 ? std::string("1") : "e" + std::to_string(x);
  }

  /// Certifies identity, inverses and associativity. Full scan up to order 512,
  /// a deterministic stride sample of triples above that.
  void verify_axioms() const {
    for (Elem x = 0; x < order_; ++x) {
      if (mul(0, x) != x || mul(x, 0) != x) throw ValidationError("element 0 is not the identity");
      if (mul(x, inv(x)) != 0 || mul(inv(x), x) != 0) throw ValidationError("inverse table is not two-sided");
    }
    std::vector<bool> seen(order_);
    for (Elem x = 0; x < order_; ++x) {
      std::fill(seen.begin(), seen.end(), false);
      for (Elem y = 0; y < order_; ++y) {
        Elem z = mul(x, y);
        if (seen[z]) throw ValidationError("multiplication table row is not a permutation");
        seen[z] = true;
      }
    }
    const std::size_t stride = order_ <= 512 ? 1 : order_ / 61 + 1;
    for (std::size_t x = 0; x < order_; x += stride)
      for (std::size_t y = 0; y < order_; y += stride)
        for (std::size_t z = 0; z < order_; z += stride) {
          auto a = static_cast<Elem>(x), b = static_cast<Elem>(y), c = static_cast<Elem>(z);
          if (mul(mul(a, b), c) != mul(a, mul(b, c))) throw ValidationError("multiplication is not associative");
        }
  }

  /// Elements of the subgroup generated by `gens`, in breadth-first discovery order.
  std::vector<Elem> span(const std::vector<Elem>& gens) const {
    std::vector<Elem> out{0};
    std::vector<bool> seen(order_, false);
    seen[0] = true;
    for (std::size_t i = 0; i < out.size(); ++i) {
      for (Elem g : gens) {
        Elem y = mul(out[i], g);
        if (!seen[y]) {
          seen[y] = true;
          out.push_back(y);
        }
      }
    }
    return out;
  }

  std::vector<std::vector<Elem>> table_rows() const {
    std::vector<std::vector<Elem>> rows(order_, std::vector<Elem>(order_));
    for (Elem x = 0; x < order_; ++x)
      for (Elem y = 0; y < order_; ++y) rows[x][y] = mul(x, y);
    return rows;
  }

 private:
  static std::vector<Elem> greedy_generators(const FiniteGroup& g) {
    std::vector<Elem> gens;
    std::vector<bool> in_span(g.order(), false);
    in_span[0] = true;
    for (Elem x = 1; x < g.order(); ++x) {
      if (in_span[x]) continue;
      gens.push_back(x);
      for (Elem y : g.span(gens)) in_span[y] = true;
    }
    return gens;
  }

  GroupStructure structure_;
  std::size_t order_;
  std::vector<Elem> mul_;
  std::vector<Elem> inv_;
  std::vector<Elem> generators_;
  std::vector<std::string> names_;
};

using GroupPtr = std::shared_ptr<const FiniteGroup>;

// ---------------------------------------------------------------------------
// Constructors for the structured families.

/// C_n with a = element 1; element i is a^i.
inline FiniteGroup make_cyclic(std::size_t n) {
  if (n < 1) throw ValidationError("cyclic group needs n >= 1");
  std::vector<Elem> mul(n * n);
  std::vector<std::string> names(n);
  for (std::size_t i = 0; i < n; ++i) {
    names[i] = detail::join_words({detail::power_word("a", i)});
    for (std::size_t j = 0; j < n; ++j) mul[i * n + j] = static_cast<Elem>((i + j) % n);
  }
  std::vector<Elem> gens;
  if (n >= 2) gens.push_back(1);
  return FiniteGroup(GroupStructure{StructureKind::cyclic, {n}}, n, std::move(mul), std::move(gens), std::move(names));
}

/// C_{d1} x C_{d2} = <x> x <y>; element x^i y^j has index i*d2 + j.
inline FiniteGroup make_abelian2(std::size_t d1, std::size_t d2) {
  if (d1 < 1 || d2 < 1) throw ValidationError("abelian2 needs d1, d2 >= 1");
  const std::size_t n = d1 * d2;
  std::vector<Elem> mul(n * n);
  std::vector<std::string> names(n);
  for (std::size_t i = 0; i < d1; ++i)
    for (std::size_t j = 0; j < d2; ++j) {
      std::size_t e = i * d2 + j;
      names[e] = detail::join_words({detail::power_word("x", i), detail::power_word("y", j)});
      for (std::size_t k = 0; k < d1; ++k)
        for (std::size_t l = 0; l < d2; ++l)
          mul[e * n + k * d2 + l] = static_cast<Elem>(((i + k) % d1) * d2 + (j + l) % d2);
    }
  std::vector<Elem> gens;
  if (d1 >= 2) gens.push_back(static_cast<Elem>(d2));
  if (d2 >= 2) gens.push_back(1);
  return FiniteGroup(GroupStructure{StructureKind::abelian2, {d1, d2}}, n, std::move(mul), std::move(gens),
                     std::move(names));
}

/// D_n = <a, b | a^n = b^2 = (ab)^2 = 1>; index i is a^i, index n+i is b a^i.
inline FiniteGroup make_dihedral(std::size_t n) {
  if (n < 3) throw ValidationError("dihedral group needs n >= 3");
  const std::size_t order = 2 * n;
  std::vector<Elem> mul(order * order);
  std::vector<std::string> names(order);
  auto idx = [n](std::size_t refl, std::size_t e) { return static_cast<Elem>(refl * n + e % n); };
  for (std::size_t r1 = 0; r1 < 2; ++r1)
    for (std::size_t i = 0; i < n; ++i) {
      std::size_t x = r1 * n + i;
      names[x] = detail::join_words({r1 ? std::string("b") : std::string(), detail::power_word("a", i)});
      for (std::size_t r2 = 0; r2 < 2; ++r2)
        for (std::size_t k = 0; k < n; ++k) {
          std::size_t y = r2 * n + k;
          Elem z;
          if (!r1 && !r2) z = idx(0, i + k);           // a^i a^k
          else if (!r1 && r2) z = idx(1, k + n - i);   // a^i b a^k = b a^{k-i}
          else if (r1 && !r2) z = idx(1, i + k);       // b a^i a^k
          else z = idx(0, k + n - i);                  // b a^i b a^k = a^{k-i}
          mul[x * order + y] = z;
        }
    }
  std::vector<Elem> gens{1, static_cast<Elem>(n)};
  return FiniteGroup(GroupStructure{StructureKind::dihedral, {n}}, order, std::move(mul), std::move(gens),
                     std::move(names));
}

/// <a, b | a^na = b^nb = 1, b^-1 a b = a^r>, order na*nb; a^i b^j has index i*nb + j.
/// Multiplication: (a^i b^j)(a^k b^l) = a^{i + k r^{-j}} b^{j+l}.
inline FiniteGroup make_metacyclic(std::size_t na, std::size_t nb, std::size_t r) {
  if (na < 1 || nb < 1) throw ValidationError("metacyclic group needs na, nb >= 1");
  if (detail::mod_pow(r % na, nb, na) != 1 % na)
    throw ValidationError("metacyclic relation inconsistent: r^nb != 1 mod na");
  const auto r_inv = detail::mod_inverse(r % na, na);
  if (!r_inv && na > 1) throw ValidationError("metacyclic parameter r must be a unit mod na");
  const std::size_t order = na * nb;
  std::vector<std::uint64_t> rinv_pow(nb, 1 % na);
  for (std::size_t j = 1; j < nb; ++j) rinv_pow[j] = rinv_pow[j - 1] * (na > 1 ? *r_inv : 0) % na;
  std::vector<Elem> mul(order * order);
  std::vector<std::string> names(order);
  for (std::size_t i = 0; i < na; ++i)
    for (std::size_t j = 0; j < nb; ++j) {
      std::size_t x = i * nb + j;
      names[x] = detail::join_words({detail::power_word("a", i), detail::power_word("b", j)});
      for (std::size_t k = 0; k < na; ++k)
        for (std::size_t l = 0; l < nb; ++l) {
          std::size_t ai = (i + k * rinv_pow[j]) % na;
          std::size_t bj = (j + l) % nb;
          mul[x * order + k * nb + l] = static_cast<Elem>(ai * nb + bj);
        }
    }
  std::vector<Elem> gens;
  if (na >= 2) gens.push_back(static_cast<Elem>(nb));
  if (nb >= 2) gens.push_back(1);
  return FiniteGroup(GroupStructure{StructureKind::metacyclic, {na, nb, r % na}}, order, std::move(mul),
                     std::move(gens), std::move(names));
}

/// Direct product of cyclic groups as a table group (covers abelian groups
/// that need more than two generators, e.g. C2 x C2 x C2).
inline FiniteGroup make_abelian(const std::vector<std::size_t>& factors) {
  std::size_t n = 1;
  for (auto f : factors) {
    if (f < 1) throw ValidationError("cyclic factor must be >= 1");
    n *= f;
  }
  auto digits = [&](std::size_t x) {
    std::vector<std::size_t> d(factors.size());
    for (std::size_t i = factors.size(); i-- > 0;) {
      d[i] = x % factors[i];
      x /= factors[i];
    }
    return d;
  };
  std::vector<std::vector<Elem>> rows(n, std::vector<Elem>(n));
  for (std::size_t x = 0; x < n; ++x) {
    auto dx = digits(x);
    for (std::size_t y = 0; y < n; ++y) {
      auto dy = digits(y);
      std::size_t z = 0;
      for (std::size_t i = 0; i < factors.size(); ++i) z = z * factors[i] + (dx[i] + dy[i]) % factors[i];
      rows[x][y] = static_cast<Elem>(z);
    }
  }
  return FiniteGroup::from_table(rows);
}

// ---------------------------------------------------------------------------
// Set helpers.

inline ElementSet inverse_set(const FiniteGroup& g, const ElementSet& s) {
  std::vector<Elem> out;
  out.reserve(s.size());
  for (Elem x : s) out.push_back(g.inv(x));
  return make_set(std::move(out));
}

/// {g s : s in S}
inline ElementSet left_translate(const FiniteGroup& grp, Elem g, const ElementSet& s) {
  std::vector<Elem> out;
  out.reserve(s.size());
  for (Elem x : s) out.push_back(grp.mul(g, x));
  return make_set(std::move(out));
}

/// {s g : s in S}
inline ElementSet right_translate(const FiniteGroup& grp, const ElementSet& s, Elem g) {
  std::vector<Elem> out;
  out.reserve(s.size());
  for (Elem x : s) out.push_back(grp.mul(x, g));
  return make_set(std::move(out));
}

/// {g^-1 s g : s in S}
inline ElementSet conjugate_set(const FiniteGroup& grp, const ElementSet& s, Elem g) {
  std::vector<Elem> out;
  out.reserve(s.size());
  for (Elem x : s) out.push_back(grp.conjugate(x, g));
  return make_set(std::move(out));
}

/// Elements of the subgroup generated by `s`.
inline bool generates(const FiniteGroup& g, const ElementSet& s) { return g.span(s).size() == g.order(); }

// ---------------------------------------------------------------------------
// Automorphisms.

/// A product-preserving bijection of group elements.
struct GroupAutomorphism {
  std::vector<Elem> image;

  Elem operator()(Elem x) const { return image[x]; }
  std::size_t size() const { return image.size(); }

  static GroupAutomorphism identity(std::size_t order) {
    GroupAutomorphism a;
    a.image.resize(order);
    std::iota(a.image.begin(), a.image.end(), Elem{0});
    return a;
  }

  bool is_identity() const {
    for (std::size_t i = 0; i < image.size(); ++i)
      if (image[i] != i) return false;
    return true;
  }

  /// Apply this, then `next`.
  GroupAutomorphism then(const GroupAutomorphism& next) const {
    GroupAutomorphism out;
    out.image.resize(image.size());
    for (std::size_t i = 0; i < image.size(); ++i) out.image[i] = next.image[image[i]];
    return out;
  }

  GroupAutomorphism inverse() const {
    GroupAutomorphism out;
    out.image.resize(image.size());
    for (std::size_t i = 0; i < image.size(); ++i) out.image[image[i]] = static_cast<Elem>(i);
    return out;
  }

  ElementSet apply(const ElementSet& s) const {
    std::vector<Elem> out;
    out.reserve(s.size());
    for (Elem x : s) out.push_back(image[x]);
    return make_set(std::move(out));
  }

  friend bool operator==(const GroupAutomorphism&, const GroupAutomorphism&) = default;
  friend auto operator<=>(const GroupAutomorphism& a, const GroupAutomorphism& b) { return a.image <=> b.image; }
};

/// Table scan: image(0) = 0, bijective, image(xy) = image(x) image(y).
inline bool is_automorphism(const FiniteGroup& g, const std::vector<Elem>& image) {
  if (image.size() != g.order() || image[0] != 0) return false;
  std::vector<bool> seen(g.order(), false);
  for (Elem v : image) {
    if (v >= g.order() || seen[v]) return false;
    seen[v] = true;
  }
  for (Elem x = 0; x < g.order(); ++x)
    for (Elem y = 0; y < g.order(); ++y)
      if (image[g.mul(x, y)] != g.mul(image[x], image[y])) return false;
  return true;
}

struct AutomorphismOptions {
  std::size_t structured_bound = 2000;
  std::size_t table_bound = 256;
};

namespace detail {

/// Breadth-first spanning tree of the Cayley graph over `gens`:
/// every non-identity element e = parent[e] * gens[via[e]].
struct SpanningTree {
  std::vector<Elem> order;  // discovery order, starts with identity
  std::vector<Elem> parent;
  std::vector<std::uint32_t> via;
};

inline SpanningTree spanning_tree(const FiniteGroup& g, const std::vector<Elem>& gens) {
  SpanningTree t;
  t.parent.assign(g.order(), 0);
  t.via.assign(g.order(), 0);
  std::vector<bool> seen(g.order(), false);
  t.order.push_back(0);
  seen[0] = true;
  for (std::size_t i = 0; i < t.order.size(); ++i) {
    Elem e = t.order[i];
    for (std::uint32_t j = 0; j < gens.size(); ++j) {
      Elem f = g.mul(e, gens[j]);
      if (!seen[f]) {
        seen[f] = true;
        t.parent[f] = e;
        t.via[f] = j;
        t.order.push_back(f);
      }
    }
  }
  return t;
}

/// Extends generator images along the tree and checks every edge relation
/// e*g_j; returns the full image table or nothing if the assignment is not
/// a homomorphism on the spanned subgroup.
inline std::optional<std::vector<Elem>> extend_images(const FiniteGroup& g, const std::vector<Elem>& gens,
                                                      const SpanningTree& tree, const std::vector<Elem>& images) {
  std::vector<Elem> phi(g.order(), 0);
  std::vector<bool> defined(g.order(), false);
  defined[0] = true;
  for (std::size_t i = 1; i < tree.order.size(); ++i) {
    Elem e = tree.order[i];
    phi[e] = g.mul(phi[tree.parent[e]], images[tree.via[e]]);
    defined[e] = true;
  }
  for (Elem e : tree.order)
    for (std::size_t j = 0; j < gens.size(); ++j)
      if (phi[g.mul(e, gens[j])] != g.mul(phi[e], images[j])) return std::nullopt;
  return phi;
}

inline std::vector<GroupAutomorphism> finish_list(std::vector<GroupAutomorphism> list) {
  std::sort(list.begin(), list.end());
  list.erase(std::unique(list.begin(), list.end()), list.end());
  return list;
}

inline bool bijective_on(const FiniteGroup& g, const std::vector<Elem>& phi) {
  std::vector<bool> seen(g.order(), false);
  for (Elem v : phi) {
    if (seen[v]) return false;
    seen[v] = true;
  }
  return true;
}

}  // namespace detail

/// Generic backtracker over generator images. Prunes on element order and on
/// relation violations inside the subgroup spanned by the generators fixed so
/// far; every survivor is closed to a full image table and bijectivity-checked.
inline std::vector<GroupAutomorphism> enumerate_automorphisms_generic(const FiniteGroup& g) {
  const auto& gens = g.generators();
  if (gens.empty()) return {GroupAutomorphism::identity(g.order())};
  const std::size_t k = gens.size();
  std::vector<std::size_t> orders(g.order());
  for (Elem x = 0; x < g.order(); ++x) orders[x] = g.element_order(x);

  std::vector<std::vector<Elem>> prefix_gens(k + 1);
  std::vector<detail::SpanningTree> trees(k + 1);
  for (std::size_t i = 1; i <= k; ++i) {
    prefix_gens[i].assign(gens.begin(), gens.begin() + static_cast<std::ptrdiff_t>(i));
    trees[i] = detail::spanning_tree(g, prefix_gens[i]);
  }

  std::vector<GroupAutomorphism> out;
  std::vector<Elem> images;
  auto recurse = [&](auto& self, std::size_t depth) -> void {
    if (depth == k) {
      auto phi = detail::extend_images(g, gens, trees[k], images);
      if (phi && detail::bijective_on(g, *phi)) out.push_back(GroupAutomorphism{std::move(*phi)});
      return;
    }
    for (Elem c = 0; c < g.order(); ++c) {
      if (orders[c] != orders[gens[depth]]) continue;
      images.push_back(c);
      auto partial = detail::extend_images(g, prefix_gens[depth + 1], trees[depth + 1], images);
      if (partial) self(self, depth + 1);
      images.pop_back();
    }
  };
  recurse(recurse, 0);
  return detail::finish_list(std::move(out));
}

namespace detail {

inline std::vector<GroupAutomorphism> cyclic_automorphisms(const FiniteGroup& g) {
  const std::size_t n = g.order();
  std::vector<GroupAutomorphism> out;
  for (std::size_t u = 0; u < n; ++u) {
    if (std::gcd(u, n) != 1 && n > 1) continue;
    GroupAutomorphism a;
    a.image.resize(n);
    for (std::size_t i = 0; i < n; ++i) a.image[i] = static_cast<Elem>(i * u % n);
    out.push_back(std::move(a));
    if (n == 1) break;
  }
  if (out.empty()) out.push_back(GroupAutomorphism::identity(n));
  return out;
}

inline std::vector<GroupAutomorphism> dihedral_automorphisms(const FiniteGroup& g) {
  // a -> a^u, b -> b a^v with u a unit: a^i -> a^{ui}, b a^i -> b a^{v + ui}.
  const std::size_t n = g.structure().params[0];
  std::vector<GroupAutomorphism> out;
  for (std::size_t u = 1; u < n; ++u) {
    if (std::gcd(u, n) != 1) continue;
    for (std::size_t v = 0; v < n; ++v) {
      GroupAutomorphism a;
      a.image.resize(2 * n);
      for (std::size_t i = 0; i < n; ++i) {
        a.image[i] = static_cast<Elem>(u * i % n);
        a.image[n + i] = static_cast<Elem>(n + (v + u * i) % n);
      }
      out.push_back(std::move(a));
    }
  }
  return out;
}

/// Two-generator presentations: choose images of the two canonical
/// generators that satisfy the defining relations, then keep bijections.
template <class RelationCheck>
std::vector<GroupAutomorphism> two_generator_automorphisms(const FiniteGroup& g, std::size_t ord0, std::size_t ord1,
                                                           RelationCheck&& relations_hold) {
  const auto& gens = g.generators();
  auto tree = spanning_tree(g, gens);
  std::vector<std::size_t> orders(g.order());
  for (Elem x = 0; x < g.order(); ++x) orders[x] = g.element_order(x);
  std::vector<Elem> cand0, cand1;
  for (Elem x = 0; x < g.order(); ++x) {
    if (ord0 % orders[x] == 0) cand0.push_back(x);
    if (ord1 % orders[x] == 0) cand1.push_back(x);
  }
  std::vector<GroupAutomorphism> out;
  std::vector<Elem> phi(g.order());
  std::vector<std::uint32_t> stamp(g.order(), 0);
  std::uint32_t round = 0;
  for (Elem x : cand0)
    for (Elem y : cand1) {
      if (!relations_hold(x, y)) continue;
      Elem imgs[2] = {x, y};
      phi[0] = 0;
      for (std::size_t i = 1; i < tree.order.size(); ++i) {
        Elem e = tree.order[i];
        phi[e] = g.mul(phi[tree.parent[e]], imgs[tree.via[e]]);
      }
      ++round;
      bool bij = true;
      for (Elem e = 0; e < g.order(); ++e) {
        if (stamp[phi[e]] == round) {
          bij = false;
          break;
        }
        stamp[phi[e]] = round;
      }
      if (bij) out.push_back(GroupAutomorphism{phi});
    }
  return out;
}

}  // namespace detail

/// Every automorphism of `g` exactly once, sorted lexicographically by image
/// table. Structured tags use closed-form parametrisations; table groups use
/// the generic backtracker.
inline std::vector<GroupAutomorphism> enumerate_automorphisms(const FiniteGroup& g,
                                                              const AutomorphismOptions& opts = {}) {
  const auto& st = g.structure();
  const bool structured = st.kind != StructureKind::table;
  if (g.order() > (structured ? opts.structured_bound : opts.table_bound))
    throw BoundExceeded("automorphism enumeration bound exceeded for group of order " + std::to_string(g.order()));
  std::vector<GroupAutomorphism> out;
  switch (st.kind) {
    case StructureKind::cyclic:
      out = detail::cyclic_automorphisms(g);
      break;
    case StructureKind::dihedral:
      out = detail::dihedral_automorphisms(g);
      break;
    case StructureKind::abelian2: {
      if (g.generators().size() < 2) {
        out = detail::cyclic_automorphisms(g);
        break;
      }
      out = detail::two_generator_automorphisms(g, st.params[0], st.params[1], [](Elem, Elem) { return true; });
      break;
    }
    case StructureKind::metacyclic: {
      if (g.generators().size() < 2) {
        out = detail::cyclic_automorphisms(g);
        break;
      }
      const std::uint64_t r = st.params[2];
      out = detail::two_generator_automorphisms(g, st.params[0], st.params[1], [&g, r](Elem x, Elem y) {
        return g.conjugate(x, y) == g.pow(x, static_cast<std::int64_t>(r));
      });
      break;
    }
    case StructureKind::table:
      return enumerate_automorphisms_generic(g);
  }
  return detail::finish_list(std::move(out));
}

enum class SetRelation { fixes_setwise, maps_to_inverse_set, maps_to_left_translate };

/// (automorphism, witness) pairs for which S^alpha relates to S as requested.
/// For maps_to_left_translate the witness g satisfies S^alpha = g^-1 S; when
/// `translate` is given only that g is tried. Other relations report witness 0.
inline std::vector<std::pair<GroupAutomorphism, Elem>> automorphisms_with(
    const FiniteGroup& g, const std::vector<GroupAutomorphism>& auts, const ElementSet& s, SetRelation relation,
    std::optional<Elem> translate = std::nullopt) {
  std::vector<std::pair<GroupAutomorphism, Elem>> out;
  const ElementSet s_inv = inverse_set(g, s);
  for (const auto& a : auts) {
    const ElementSet img = a.apply(s);
    switch (relation) {
      case SetRelation::fixes_setwise:
        if (img == s) out.emplace_back(a, 0);
        break;
      case SetRelation::maps_to_inverse_set:
        if (img == s_inv) out.emplace_back(a, 0);
        break;
      case SetRelation::maps_to_left_translate: {
        std::vector<Elem> candidates;
        if (translate) {
          candidates.push_back(*translate);
        } else if (s.empty()) {
          candidates.resize(g.order());
          std::iota(candidates.begin(), candidates.end(), Elem{0});
        } else {
          // g t^alpha lies in S for any fixed t in S, so g is in S (t^alpha)^-1.
          const Elem t_img_inv = g.inv(a(s.front()));
          for (Elem x : s) candidates.push_back(g.mul(x, t_img_inv));
          candidates = make_set(std::move(candidates));
        }
        for (Elem c : candidates)
          if (left_translate(g, g.inv(c), s) == img) out.emplace_back(a, c);
        break;
      }
    }
  }
  return out;
}

inline std::vector<std::pair<GroupAutomorphism, Elem>> automorphisms_with(
    const FiniteGroup& g, const ElementSet& s, SetRelation relation, std::optional<Elem> translate = std::nullopt) {
  return automorphisms_with(g, enumerate_automorphisms(g), s, relation, translate);
}

// ---------------------------------------------------------------------------
// JSON descriptor: {structure, params, generators}; table groups carry `mul`.

inline nlohmann::json group_to_json(const FiniteGroup& g) {
  nlohmann::json j;
  const auto& st = g.structure();
  j["structure"] = to_string(st.kind);
  nlohmann::json params = nlohmann::json::object();
  switch (st.kind) {
    case StructureKind::cyclic: params["n"] = st.params[0]; break;
    case StructureKind::abelian2:
      params["d1"] = st.params[0];
      params["d2"] = st.params[1];
      break;
    case StructureKind::dihedral: params["n"] = st.params[0]; break;
    case StructureKind::metacyclic:
      params["na"] = st.params[0];
      params["nb"] = st.params[1];
      params["r"] = st.params[2];
      break;
    case StructureKind::table:
      params["order"] = g.order();
      j["mul"] = g.table_rows();
      break;
  }
  j["params"] = params;
  j["generators"] = g.generators();
  return j;
}

inline FiniteGroup group_from_json(const nlohmann::json& j) {
  try {
    const std::string kind = j.at("structure").get<std::string>();
    const auto& p = j.at("params");
    auto get = [&p](const char* key) { return p.at(key).get<std::size_t>(); };
    if (kind == "cyclic") return make_cyclic(get("n"));
    if (kind == "abelian2") return make_abelian2(get("d1"), get("d2"));
    if (kind == "dihedral") return make_dihedral(get("n"));
    if (kind == "metacyclic") return make_metacyclic(get("na"), get("nb"), get("r"));
    if (kind == "table") {
      auto rows = j.at("mul").get<std::vector<std::vector<Elem>>>();
      return FiniteGroup::from_table(rows);
    }
    throw ValidationError("unknown group structure '" + kind + "'");
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("malformed group descriptor: ") + e.what());
  }
}

}  // namespace bct
