#pragma once

// Automorphism groups and canonical labelling of small coloured graphs by
// individualisation-refinement with equitable ordered partitions.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "bct/errors.hpp"
#include "bct/graph.hpp"
#include "bct/permgroup.hpp"
#include "bct/permutation.hpp"

namespace bct {

struct AutOptions {
  std::size_t max_order = 2000;  // vertex bound
};

namespace detail {

inline std::uint64_t mix(std::uint64_t h, std::uint64_t v) {
  h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6U) + (h >> 2U);
  return h * 0xff51afd7ed558ccdULL;
}

/// Ordered partition of the vertex set. A cell is identified by its start
/// position in `lab`.
struct Partition {
  std::vector<Point> lab;             // position -> vertex
  std::vector<std::uint32_t> pos;     // vertex -> position
  std::vector<std::uint32_t> cell;    // vertex -> start of its cell
  std::vector<std::uint32_t> end;     // cell start -> one past its last position
  std::size_t cells = 0;

  std::size_t size() const { return lab.size(); }
  bool discrete() const { return cells == lab.size(); }

  std::uint32_t cell_size(std::uint32_t start) const { return end[start] - start; }

  /// First smallest non-singleton cell, or nothing if discrete.
  std::optional<std::uint32_t> target_cell() const {
    std::optional<std::uint32_t> best;
    std::uint32_t best_size = 0;
    for (std::uint32_t s = 0; s < lab.size(); s = end[s]) {
      std::uint32_t sz = end[s] - s;
      if (sz > 1 && (!best || sz < best_size)) {
        best = s;
        best_size = sz;
      }
    }
    return best;
  }

  std::vector<Point> cell_members(std::uint32_t start) const {
    std::vector<Point> out(lab.begin() + start, lab.begin() + end[start]);
    std::sort(out.begin(), out.end());
    return out;
  }
};

class Refiner {
 public:
  explicit Refiner(const Graph& g) : g_(g), cnt_(g.order(), 0), in_queue_(g.order(), 0), marked_(g.order(), 0) {}

  Partition initial(const ColoredGraph& cg) const {
    const std::size_t n = cg.graph.order();
    Partition p;
    p.lab.resize(n);
    std::iota(p.lab.begin(), p.lab.end(), Point{0});
    std::stable_sort(p.lab.begin(), p.lab.end(), [&cg](Point a, Point b) { return cg.color(a) < cg.color(b); });
    p.pos.resize(n);
    p.cell.resize(n);
    p.end.assign(n, 0);
    std::uint32_t start = 0;
    for (std::uint32_t i = 0; i < n; ++i) {
      p.pos[p.lab[i]] = i;
      if (i > 0 && cg.color(p.lab[i]) != cg.color(p.lab[i - 1])) {
        p.end[start] = i;
        ++p.cells;
        start = i;
      }
      p.cell[p.lab[i]] = start;
    }
    if (n > 0) {
      p.end[start] = static_cast<std::uint32_t>(n);
      ++p.cells;
    }
    return p;
  }

  /// Makes `v` a singleton cell at the front of its cell; returns that cell.
  static std::uint32_t individualise(Partition& p, Point v) {
    const std::uint32_t c = p.cell[v];
    const std::uint32_t e = p.end[c];
    const std::uint32_t pv = p.pos[v];
    std::swap(p.lab[c], p.lab[pv]);
    p.pos[p.lab[pv]] = pv;
    p.pos[v] = c;
    if (e - c > 1) {
      p.end[c] = c + 1;
      p.end[c + 1] = e;
      for (std::uint32_t i = c + 1; i < e; ++i) p.cell[p.lab[i]] = c + 1;
      ++p.cells;
    }
    return c;
  }

  /// Refines to the coarsest equitable refinement, splitting by neighbour
  /// counts into each splitter cell. Returns an isomorphism-invariant trace.
  std::uint64_t refine(Partition& p, std::vector<std::uint32_t> splitters) {
    std::uint64_t trace = 0x3c6ef372fe94f82bULL;
    std::vector<std::uint32_t> queue;
    std::size_t head = 0;
    for (auto s : splitters) {
      if (!in_queue_[s]) {
        in_queue_[s] = 1;
        queue.push_back(s);
      }
    }
    std::vector<Point> touched;
    std::vector<std::uint32_t> touched_cells;
    std::vector<std::pair<std::uint32_t, Point>> buf;
    while (head < queue.size()) {
      const std::uint32_t w = queue[head++];
      in_queue_[w] = 0;
      touched.clear();
      for (std::uint32_t i = w; i < p.end[w]; ++i) {
        for (Point u : g_.neighbours(p.lab[i])) {
          if (cnt_[u]++ == 0) touched.push_back(u);
        }
      }
      touched_cells.clear();
      for (Point u : touched) {
        std::uint32_t c = p.cell[u];
        if (!marked_[c]) {
          marked_[c] = 1;
          touched_cells.push_back(c);
        }
      }
      std::sort(touched_cells.begin(), touched_cells.end());
      trace = mix(trace, w);
      for (std::uint32_t c : touched_cells) {
        marked_[c] = 0;
        const std::uint32_t e = p.end[c];
        if (e - c == 1) {
          trace = mix(trace, (static_cast<std::uint64_t>(c) << 32U) | cnt_[p.lab[c]]);
          continue;
        }
        buf.clear();
        for (std::uint32_t i = c; i < e; ++i) buf.emplace_back(cnt_[p.lab[i]], p.lab[i]);
        std::sort(buf.begin(), buf.end());
        if (buf.front().first == buf.back().first) {
          trace = mix(trace, (static_cast<std::uint64_t>(c) << 32U) | buf.front().first);
          continue;
        }
        for (std::uint32_t i = c; i < e; ++i) {
          p.lab[i] = buf[i - c].second;
          p.pos[p.lab[i]] = i;
        }
        // Split into fragments of equal count.
        std::vector<std::uint32_t> frag_starts;
        std::uint32_t largest = c, largest_size = 0;
        for (std::uint32_t i = c; i < e;) {
          std::uint32_t j = i;
          while (j < e && buf[j - c].first == buf[i - c].first) ++j;
          frag_starts.push_back(i);
          p.end[i] = j;
          for (std::uint32_t t = i; t < j; ++t) p.cell[p.lab[t]] = i;
          trace = mix(trace, (static_cast<std::uint64_t>(i) << 32U) | buf[i - c].first);
          trace = mix(trace, j - i);
          if (j - i > largest_size) {
            largest_size = j - i;
            largest = i;
          }
          i = j;
        }
        p.cells += frag_starts.size() - 1;
        const bool was_queued = in_queue_[c] != 0;
        for (auto f : frag_starts) {
          if (in_queue_[f]) continue;
          if (!was_queued && f == largest) continue;
          in_queue_[f] = 1;
          queue.push_back(f);
        }
      }
      for (Point u : touched) cnt_[u] = 0;
    }
    trace = mix(trace, p.cells);
    return trace;
  }

 private:
  const Graph& g_;
  std::vector<std::uint32_t> cnt_;
  std::vector<char> in_queue_;
  std::vector<char> marked_;
};

inline std::vector<std::uint32_t> all_cells(const Partition& p) {
  std::vector<std::uint32_t> out;
  for (std::uint32_t s = 0; s < p.size(); s = p.end[s]) out.push_back(s);
  return out;
}

inline bool preserves_colors(const ColoredGraph& cg, const Permutation& p) {
  for (Point v = 0; v < p.degree(); ++v)
    if (cg.color(v) != cg.color(p[v])) return false;
  return true;
}

class AutSearch {
 public:
  explicit AutSearch(const ColoredGraph& cg) : cg_(cg), g_(cg.graph), refiner_(cg.graph) {}

  PermGroup run() {
    const std::size_t n = g_.order();
    Partition p = refiner_.initial(cg_);
    refiner_.refine(p, all_cells(p));
    while (!p.discrete()) {
      parts_.push_back(p);
      const std::uint32_t t = *p.target_cell();
      const Point v = p.cell_members(t).front();
      base_.push_back(v);
      const std::uint32_t c = Refiner::individualise(p, v);
      traces_.push_back(refiner_.refine(p, {c}));
    }
    first_leaf_ = p.lab;

    detail::UnionFind orbits(n);
    for (std::size_t i = base_.size(); i-- > 0;) {
      const Partition& level = parts_[i];
      const auto cell = level.cell_members(level.cell[base_[i]]);
      std::vector<Point> failed;
      for (Point w : cell) {
        if (w == base_[i] || orbits.find(w) == orbits.find(base_[i])) continue;
        bool known_bad = std::any_of(failed.begin(), failed.end(),
                                     [&](Point f) { return orbits.find(f) == orbits.find(w); });
        if (known_bad) continue;
        Partition q = level;
        const std::uint32_t c = Refiner::individualise(q, w);
        std::optional<Permutation> found;
        if (refiner_.refine(q, {c}) == traces_[i]) found = descend(q, i + 1);
        if (found) {
          for (Point v = 0; v < n; ++v) orbits.unite(v, (*found)[v]);
          gens_.push_back(std::move(*found));
        } else {
          failed.push_back(w);
        }
      }
    }
    return PermGroup(n, gens_, base_);
  }

  const std::vector<Point>& base() const { return base_; }

 private:
  std::optional<Permutation> descend(const Partition& p, std::size_t depth) {
    if (p.discrete()) {
      if (depth != base_.size()) return std::nullopt;
      Permutation gamma = Permutation::identity(g_.order());
      for (std::size_t i = 0; i < p.size(); ++i) gamma.image[first_leaf_[i]] = p.lab[i];
      if (g_.is_automorphism(gamma) && preserves_colors(cg_, gamma)) return gamma;
      return std::nullopt;
    }
    if (depth >= base_.size()) return std::nullopt;
    const std::uint32_t t = *p.target_cell();
    for (Point u : p.cell_members(t)) {
      Partition q = p;
      const std::uint32_t c = Refiner::individualise(q, u);
      if (refiner_.refine(q, {c}) != traces_[depth]) continue;
      if (auto r = descend(q, depth + 1)) return r;
    }
    return std::nullopt;
  }

  const ColoredGraph& cg_;
  const Graph& g_;
  Refiner refiner_;
  std::vector<Partition> parts_;
  std::vector<Point> base_;
  std::vector<std::uint64_t> traces_;
  std::vector<Point> first_leaf_;
  std::vector<Permutation> gens_;
};

}  // namespace detail

/// Exact automorphism group of a coloured graph; generators are deterministic
/// and the chain base is the first path of the search tree.
inline PermGroup automorphism_group(const ColoredGraph& cg, const AutOptions& opts = {}) {
  if (cg.graph.order() > opts.max_order)
    throw BoundExceeded("graph order " + std::to_string(cg.graph.order()) + " exceeds automorphism bound " +
                        std::to_string(opts.max_order));
  if (cg.graph.order() == 0) return PermGroup::trivial(0);
  detail::AutSearch search(cg);
  return search.run();
}

inline PermGroup automorphism_group(const Graph& g, const AutOptions& opts = {}) {
  return automorphism_group(ColoredGraph(g), opts);
}

/// Isomorphism-invariant certificate: the graph relabelled by a canonical
/// ordering, together with the colour of each canonical position.
struct CanonicalForm {
  std::size_t order = 0;
  std::vector<std::uint32_t> colors;
  std::vector<Edge> edges;
  std::vector<Point> labeling;  // vertex -> canonical position; not part of equality

  friend bool operator==(const CanonicalForm& a, const CanonicalForm& b) {
    return a.order == b.order && a.colors == b.colors && a.edges == b.edges;
  }
  friend bool operator<(const CanonicalForm& a, const CanonicalForm& b) {
    return std::tie(a.order, a.colors, a.edges) < std::tie(b.order, b.colors, b.edges);
  }
};

namespace detail {

class CanonSearch {
 public:
  CanonSearch(const ColoredGraph& cg, const PermGroup& aut) : cg_(cg), g_(cg.graph), aut_(aut), refiner_(cg.graph) {}

  CanonicalForm run() {
    Partition p = refiner_.initial(cg_);
    std::vector<std::uint64_t> traces{refiner_.refine(p, all_cells(p))};
    std::vector<Point> seq;
    visit(p, traces, seq, false);
    return std::move(*best_);
  }

 private:
  CanonicalForm certificate(const Partition& p) const {
    CanonicalForm f;
    f.order = g_.order();
    f.labeling.resize(g_.order());
    for (std::size_t i = 0; i < p.size(); ++i) f.labeling[p.lab[i]] = static_cast<Point>(i);
    f.colors.resize(g_.order());
    for (std::size_t i = 0; i < p.size(); ++i) f.colors[i] = cg_.color(p.lab[i]);
    f.edges.reserve(g_.edge_count());
    for (auto [u, v] : g_.edges()) {
      Point a = f.labeling[u], b = f.labeling[v];
      f.edges.emplace_back(std::min(a, b), std::max(a, b));
    }
    std::sort(f.edges.begin(), f.edges.end());
    return f;
  }

  // `ahead` means this path's traces already beat the best leaf's traces.
  void visit(const Partition& p, std::vector<std::uint64_t>& traces, std::vector<Point>& seq, bool ahead) {
    if (p.discrete()) {
      CanonicalForm f = certificate(p);
      if (!best_ || ahead || f < *best_) {
        best_ = std::move(f);
        best_traces_ = traces;
        ++version_;
      }
      return;
    }
    const std::uint32_t t = *p.target_cell();
    auto members = p.cell_members(t);
    std::vector<Point> orbit_rep(g_.order());
    std::iota(orbit_rep.begin(), orbit_rep.end(), Point{0});
    if (members.size() > 1 && !aut_.generators().empty()) {
      PermGroup stab = aut_.pointwise_stabiliser(seq);
      for (const auto& o : stab.orbits())
        for (Point v : o) orbit_rep[v] = o.front();
    }
    std::vector<Point> tried;
    for (Point u : members) {
      if (std::find(tried.begin(), tried.end(), orbit_rep[u]) != tried.end()) continue;
      tried.push_back(orbit_rep[u]);
      Partition q = p;
      const std::uint32_t c = Refiner::individualise(q, u);
      const std::uint64_t tr = refiner_.refine(q, {c});
      const std::size_t depth = traces.size();
      bool child_ahead = ahead;
      if (best_ && !ahead) {
        if (depth >= best_traces_.size()) continue;
        if (tr < best_traces_[depth]) continue;
        if (tr > best_traces_[depth]) child_ahead = true;
      }
      traces.push_back(tr);
      seq.push_back(u);
      const std::size_t before = version_;
      visit(q, traces, seq, child_ahead);
      seq.pop_back();
      traces.pop_back();
      // The best leaf now lies below this node, so siblings compare against it.
      if (version_ != before) ahead = false;
    }
  }

  const ColoredGraph& cg_;
  const Graph& g_;
  const PermGroup& aut_;
  Refiner refiner_;
  std::optional<CanonicalForm> best_;
  std::vector<std::uint64_t> best_traces_;
  std::size_t version_ = 0;
};

}  // namespace detail

inline CanonicalForm canonical_form(const ColoredGraph& cg, const PermGroup& aut) {
  if (cg.graph.order() == 0) return CanonicalForm{};
  detail::CanonSearch search(cg, aut);
  return search.run();
}

inline CanonicalForm canonical_form(const ColoredGraph& cg, const AutOptions& opts = {}) {
  return canonical_form(cg, automorphism_group(cg, opts));
}

inline CanonicalForm canonical_form(const Graph& g, const AutOptions& opts = {}) {
  return canonical_form(ColoredGraph(g), opts);
}

inline bool are_isomorphic(const Graph& a, const Graph& b, const AutOptions& opts = {}) {
  if (a.order() != b.order() || a.edge_count() != b.edge_count()) return false;
  return canonical_form(a, opts) == canonical_form(b, opts);
}

}  // namespace bct
