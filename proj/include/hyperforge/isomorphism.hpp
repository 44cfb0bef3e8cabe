#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "hyperforge/geometry.hpp"
#include "hyperforge/permutation.hpp"

namespace hyperforge {

struct SearchLimits {
  std::size_t max_nodes = 200'000;  // search-tree nodes before giving up
};

/// Type-preserving isomorphism g1 -> g2 (image of each g1 element), if any.
/// Colour refinement on (type, neighbour colours) with individualisation;
/// ties resolved by smallest id.
std::optional<std::vector<ElementId>> find_isomorphism(const IncidenceGeometry& g1,
                                                       const IncidenceGeometry& g2,
                                                       const SearchLimits& limits = {});
bool isomorphic(const IncidenceGeometry& g1, const IncidenceGeometry& g2,
                const SearchLimits& limits = {});

/// Isomorphism after relabelling g1's types through some permutation of types.
/// Returns the type permutation used (g1 type t -> g2 type perm[t]).
std::optional<std::vector<TypeId>> isomorphic_up_to_types(const IncidenceGeometry& g1,
                                                          const IncidenceGeometry& g2,
                                                          const SearchLimits& limits = {});

/// Type-preserving automorphism group acting on element ids, with its order
/// recorded from the stabiliser chain found by the search.
PermGroup automorphism_group(const IncidenceGeometry& g, const SearchLimits& limits = {});

}  // namespace hyperforge
