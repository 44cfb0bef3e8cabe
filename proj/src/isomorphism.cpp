#include "hyperforge/isomorphism.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "hyperforge/error.hpp"

namespace hyperforge {

namespace {

using Colour = std::uint32_t;

// Disjoint union of two geometries; nodes of the second are shifted by n1.
class PairSearch {
 public:
  PairSearch(const IncidenceGeometry& g1, const IncidenceGeometry& g2, const SearchLimits& limits)
      : g1_(g1), g2_(g2), n1_(g1.size()), limits_(limits) {
    const std::size_t n = g1.size() + g2.size();
    offsets_.assign(n + 1, 0);
    for (std::size_t v = 0; v < n; ++v) offsets_[v + 1] = offsets_[v] + neighbours(v).size();
  }

  std::vector<Colour> initial_colours() const {
    std::vector<Colour> c(n1_ + g2_.size());
    for (std::size_t v = 0; v < c.size(); ++v) c[v] = type(v);
    return c;
  }

  // Refines in place; returns the number of colours.
  std::size_t refine(std::vector<Colour>& colours) {
    const std::size_t n = colours.size();
    std::size_t count = distinct(colours);
    std::vector<Colour> sig(offsets_.back());
    std::vector<std::uint32_t> order(n);
    while (true) {
      for (std::size_t v = 0; v < n; ++v) {
        auto nb = neighbours(v);
        Colour* out = sig.data() + offsets_[v];
        for (std::size_t i = 0; i < nb.size(); ++i) out[i] = colours[shift(v, nb[i])];
        std::sort(out, out + nb.size());
      }
      std::iota(order.begin(), order.end(), 0u);
      auto less = [&](std::uint32_t a, std::uint32_t b) {
        if (colours[a] != colours[b]) return colours[a] < colours[b];
        return std::lexicographical_compare(sig.begin() + static_cast<std::ptrdiff_t>(offsets_[a]),
                                            sig.begin() + static_cast<std::ptrdiff_t>(offsets_[a + 1]),
                                            sig.begin() + static_cast<std::ptrdiff_t>(offsets_[b]),
                                            sig.begin() + static_cast<std::ptrdiff_t>(offsets_[b + 1]));
      };
      std::sort(order.begin(), order.end(), less);
      std::vector<Colour> next(n);
      Colour c = 0;
      for (std::size_t i = 0; i < n; ++i) {
        if (i > 0 && less(order[i - 1], order[i])) ++c;
        next[order[i]] = c;
      }
      const std::size_t next_count = n == 0 ? 0 : c + 1;
      colours.swap(next);
      if (next_count == count) return count;
      count = next_count;
    }
  }

  std::optional<std::vector<ElementId>> search(std::vector<Colour> colours) {
    if (++nodes_ > limits_.max_nodes) {
      throw Error(ErrorCode::kSizeLimitExceeded,
                  "isomorphism search exceeded " + std::to_string(limits_.max_nodes) + " nodes");
    }
    const std::size_t k = refine(colours);
    std::vector<std::size_t> c1(k, 0), c2(k, 0);
    for (std::size_t v = 0; v < colours.size(); ++v) ++(v < n1_ ? c1 : c2)[colours[v]];
    if (c1 != c2) return std::nullopt;
    std::optional<Colour> cell = target_cell(c1);
    if (!cell) return discrete_map(colours);
    std::size_t a = 0;
    while (colours[a] != *cell) ++a;
    for (std::size_t b = n1_; b < colours.size(); ++b) {
      if (colours[b] != *cell) continue;
      auto next = colours;
      next[a] = next[b] = static_cast<Colour>(k);
      if (auto found = search(std::move(next))) return found;
    }
    return std::nullopt;
  }

  static std::optional<Colour> target_cell(const std::vector<std::size_t>& sizes) {
    std::optional<Colour> best;
    for (Colour c = 0; c < sizes.size(); ++c) {
      if (sizes[c] > 1 && (!best || sizes[c] < sizes[*best])) best = c;
    }
    return best;
  }

  std::optional<std::vector<ElementId>> discrete_map(const std::vector<Colour>& colours) const {
    std::vector<ElementId> by_colour(colours.size(), 0);
    for (std::size_t v = n1_; v < colours.size(); ++v) by_colour[colours[v]] = static_cast<ElementId>(v - n1_);
    std::vector<ElementId> map(n1_);
    for (std::size_t v = 0; v < n1_; ++v) map[v] = by_colour[colours[v]];
    for (ElementId x = 0; x < n1_; ++x) {
      if (g1_.type_of(x) != g2_.type_of(map[x])) return std::nullopt;
      if (g1_.neighbors(x).size() != g2_.neighbors(map[x]).size()) return std::nullopt;
      for (ElementId y : g1_.neighbors(x)) {
        if (!g2_.incident(map[x], map[y])) return std::nullopt;
      }
    }
    return map;
  }

  std::size_t n1() const { return n1_; }

 private:
  std::span<const ElementId> neighbours(std::size_t v) const {
    return v < n1_ ? g1_.neighbors(static_cast<ElementId>(v))
                   : g2_.neighbors(static_cast<ElementId>(v - n1_));
  }
  std::size_t shift(std::size_t v, ElementId w) const { return v < n1_ ? w : w + n1_; }
  Colour type(std::size_t v) const {
    return v < n1_ ? g1_.type_of(static_cast<ElementId>(v))
                   : g2_.type_of(static_cast<ElementId>(v - n1_));
  }
  static std::size_t distinct(const std::vector<Colour>& c) {
    std::vector<Colour> s = c;
    std::sort(s.begin(), s.end());
    return static_cast<std::size_t>(std::unique(s.begin(), s.end()) - s.begin());
  }

  const IncidenceGeometry& g1_;
  const IncidenceGeometry& g2_;
  std::size_t n1_;
  SearchLimits limits_;
  std::vector<std::size_t> offsets_;
  std::size_t nodes_ = 0;
};

bool cheap_invariants_match(const IncidenceGeometry& a, const IncidenceGeometry& b) {
  return a.rank() == b.rank() && a.size() == b.size() && a.type_counts() == b.type_counts() &&
         a.incidence_count() == b.incidence_count();
}

}  // namespace

std::optional<std::vector<ElementId>> find_isomorphism(const IncidenceGeometry& g1,
                                                       const IncidenceGeometry& g2,
                                                       const SearchLimits& limits) {
  if (!cheap_invariants_match(g1, g2)) return std::nullopt;
  if (g1.size() == 0) return std::vector<ElementId>{};
  PairSearch s(g1, g2, limits);
  return s.search(s.initial_colours());
}

bool isomorphic(const IncidenceGeometry& g1, const IncidenceGeometry& g2,
                const SearchLimits& limits) {
  return find_isomorphism(g1, g2, limits).has_value();
}

std::optional<std::vector<TypeId>> isomorphic_up_to_types(const IncidenceGeometry& g1,
                                                          const IncidenceGeometry& g2,
                                                          const SearchLimits& limits) {
  if (g1.rank() != g2.rank()) return std::nullopt;
  std::vector<TypeId> perm(g1.rank());
  std::iota(perm.begin(), perm.end(), TypeId{0});
  do {
    IncidenceGeometry relabelled = permute_types(g1, perm);
    if (relabelled.type_counts() != g2.type_counts()) continue;
    if (isomorphic(relabelled, g2, limits)) return perm;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return std::nullopt;
}

PermGroup automorphism_group(const IncidenceGeometry& g, const SearchLimits& limits) {
  const std::size_t m = g.size();
  if (m == 0) return PermGroup(0, {}, false, 1);
  PairSearch s(g, g, limits);

  struct Level {
    std::vector<Colour> colours;  // refined, before individualising
    std::size_t colour_count;
    ElementId base;
  };
  std::vector<Level> path;
  std::vector<Colour> colours = s.initial_colours();
  while (true) {
    const std::size_t k = s.refine(colours);
    std::vector<std::size_t> sizes(k, 0);
    for (std::size_t v = 0; v < m; ++v) ++sizes[colours[v]];
    auto cell = PairSearch::target_cell(sizes);
    if (!cell) break;
    ElementId a = 0;
    while (colours[a] != *cell) ++a;
    path.push_back(Level{colours, k, a});
    colours[a] = colours[a + m] = static_cast<Colour>(k);
  }

  std::vector<Permutation> gens;
  std::uint64_t order = 1;
  for (std::size_t l = path.size(); l-- > 0;) {
    const Level& lv = path[l];
    auto current_orbit = [&]() {
      PermGroup tmp(m, gens);
      auto o = orbit(tmp, lv.base);
      return std::vector<bool>([&] {
        std::vector<bool> in(m, false);
        for (Point p : o) in[p] = true;
        return in;
      }());
    };
    std::vector<bool> in_orbit = current_orbit();
    const Colour cell = lv.colours[lv.base];
    for (ElementId b = 0; b < m; ++b) {
      if (lv.colours[b + m] != cell || in_orbit[b]) continue;
      auto next = lv.colours;
      next[lv.base] = next[b + m] = static_cast<Colour>(lv.colour_count);
      if (auto found = s.search(std::move(next))) {
        gens.emplace_back(std::move(*found));
        in_orbit = current_orbit();
      }
    }
    order *= static_cast<std::uint64_t>(std::count(in_orbit.begin(), in_orbit.end(), true));
  }
  return PermGroup(m, std::move(gens), false, order);
}

}  // namespace hyperforge
