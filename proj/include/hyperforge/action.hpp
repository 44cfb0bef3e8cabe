#pragma once

#include <cstddef>
#include <optional>

#include "hyperforge/geometry.hpp"
#include "hyperforge/isomorphism.hpp"
#include "hyperforge/permutation.hpp"

namespace hyperforge {

/// Throws NotAnAction unless every generator is a type-preserving automorphism.
void validate_action(const IncidenceGeometry& g, const PermGroup& action);

/// Number of orbits of the action on chambers.
std::size_t chamber_orbit_count(const IncidenceGeometry& g, const PermGroup& action,
                                const ScanLimits& limits = {});

/// Chamber-transitivity of `action`, or of the full automorphism group when absent.
bool is_flag_transitive(const IncidenceGeometry& g, const std::optional<PermGroup>& action = std::nullopt,
                        const ScanLimits& limits = {}, const SearchLimits& search = {});

}  // namespace hyperforge
