#include "hyperforge/action.hpp"

#include <algorithm>
#include <numeric>

#include "hyperforge/error.hpp"

namespace hyperforge {

void validate_action(const IncidenceGeometry& g, const PermGroup& action) {
  if (action.degree() != g.size()) throw Error(ErrorCode::kNotAnAction, "degree differs from element count");
  for (const auto& gen : action.generators()) {
    for (ElementId x = 0; x < g.size(); ++x) {
      if (g.type_of(gen[x]) != g.type_of(x)) throw Error(ErrorCode::kNotAnAction, "generator changes a type");
      for (ElementId y : g.neighbors(x)) {
        if (!g.incident(gen[x], gen[y])) throw Error(ErrorCode::kNotAnAction, "generator breaks an incidence");
      }
    }
  }
}

std::size_t chamber_orbit_count(const IncidenceGeometry& g, const PermGroup& action,
                                const ScanLimits& limits) {
  validate_action(g, action);
  const std::vector<Flag> chambers = enumerate_chambers(g, limits);
  std::vector<std::size_t> parent(chambers.size());
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  std::size_t components = chambers.size();
  Flag image(g.rank());
  for (std::size_t c = 0; c < chambers.size(); ++c) {
    for (const auto& gen : action.generators()) {
      for (std::size_t t = 0; t < g.rank(); ++t) image[t] = gen[chambers[c][t]];
      auto it = std::lower_bound(chambers.begin(), chambers.end(), image);
      std::size_t a = find(c), b = find(static_cast<std::size_t>(it - chambers.begin()));
      if (a != b) {
        parent[std::max(a, b)] = std::min(a, b);
        --components;
      }
    }
  }
  return components;
}

bool is_flag_transitive(const IncidenceGeometry& g, const std::optional<PermGroup>& action,
                        const ScanLimits& limits, const SearchLimits& search) {
  if (!is_geometry(g, limits)) throw Error(ErrorCode::kNotAGeometry, "flag-transitivity of a non-geometry");
  if (action) return chamber_orbit_count(g, *action, limits) == 1;
  return chamber_orbit_count(g, automorphism_group(g, search), limits) == 1;
}

}  // namespace hyperforge
