#pragma once

// Permutations of {0, ..., n-1} acting on the right: v^(pq) = (v^p)^q.

#include <cstddef>
#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "bct/errors.hpp"

namespace bct {

using Point = std::uint32_t;

struct Permutation {
  std::vector<Point> image;

  Permutation() = default;
  explicit Permutation(std::vector<Point> img) : image(std::move(img)) {}

  static Permutation identity(std::size_t n) {
    Permutation p;
    p.image.resize(n);
    std::iota(p.image.begin(), p.image.end(), Point{0});
    return p;
  }

  /// Throws unless `img` is a bijection of {0..n-1}.
  static Permutation checked(std::vector<Point> img) {
    std::vector<bool> seen(img.size(), false);
    for (Point v : img) {
      if (v >= img.size() || seen[v]) throw ValidationError("image sequence is not a permutation");
      seen[v] = true;
    }
    return Permutation(std::move(img));
  }

  std::size_t degree() const noexcept { return image.size(); }
  Point operator[](Point v) const noexcept { return image[v]; }
  Point operator()(Point v) const noexcept { return image[v]; }

  bool is_identity() const noexcept {
    for (std::size_t i = 0; i < image.size(); ++i)
      if (image[i] != i) return false;
    return true;
  }

  /// Apply this first, then q.
  Permutation then(const Permutation& q) const {
    Permutation r;
    r.image.resize(image.size());
    for (std::size_t i = 0; i < image.size(); ++i) r.image[i] = q.image[image[i]];
    return r;
  }

  Permutation operator*(const Permutation& q) const { return then(q); }

  Permutation inverse() const {
    Permutation r;
    r.image.resize(image.size());
    for (std::size_t i = 0; i < image.size(); ++i) r.image[image[i]] = static_cast<Point>(i);
    return r;
  }

  Permutation pow(std::int64_t e) const {
    Permutation base = e < 0 ? inverse() : *this;
    auto k = static_cast<std::uint64_t>(e < 0 ? -e : e);
    Permutation result = identity(image.size());
    while (k > 0) {
      if (k & 1U) result = result.then(base);
      base = base.then(base);
      k >>= 1U;
    }
    return result;
  }

  /// g^-1 p g
  Permutation conjugate_by(const Permutation& g) const { return g.inverse().then(*this).then(g); }

  std::vector<std::vector<Point>> cycles(bool include_fixed = false) const {
    std::vector<std::vector<Point>> out;
    std::vector<bool> seen(image.size(), false);
    for (Point v = 0; v < image.size(); ++v) {
      if (seen[v]) continue;
      std::vector<Point> c;
      for (Point w = v; !seen[w]; w = image[w]) {
        seen[w] = true;
        c.push_back(w);
      }
      if (c.size() > 1 || include_fixed) out.push_back(std::move(c));
    }
    return out;
  }

  std::uint64_t order() const {
    std::uint64_t l = 1;
    for (const auto& c : cycles()) l = std::lcm(l, static_cast<std::uint64_t>(c.size()));
    return l;
  }

  std::size_t fixed_points() const {
    std::size_t k = 0;
    for (std::size_t i = 0; i < image.size(); ++i) k += image[i] == i;
    return k;
  }

  /// One-line cycle notation, e.g. "(0 1 2)(3 4)"; identity prints "()".
  std::string to_cycle_string() const {
    std::string s;
    for (const auto& c : cycles()) {
      s += '(';
      for (std::size_t i = 0; i < c.size(); ++i) {
        if (i) s += ' ';
        s += std::to_string(c[i]);
      }
      s += ')';
    }
    return s.empty() ? "()" : s;
  }

  friend bool operator==(const Permutation&, const Permutation&) = default;
  friend auto operator<=>(const Permutation& a, const Permutation& b) { return a.image <=> b.image; }
};

using VertexPermutation = Permutation;

}  // namespace bct
