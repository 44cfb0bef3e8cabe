#pragma once

#include <cstddef>

#include "hyperforge/geometry.hpp"
#include "hyperforge/permutation.hpp"
#include "hyperforge/presentation.hpp"

namespace hyperforge {

/// m_ij = order of g_i g_j as a permutation.
CoxeterMatrix coxeter_matrix(const PermGroup& g);

/// <g_I> ∩ <g_J> = <g_{I∩J}> for all generator subsets I, J.
bool intersection_property(const PermGroup& g, const GroupLimits& limits = {});

/// Coset geometry on the maximal parabolic subgroups G_i = <g_j : j != i>.
/// Type-i elements are right cosets G_i x, numbered by their smallest group
/// element in the regular action; `action` is right multiplication.
struct CosetGeometry {
  IncidenceGeometry geometry;
  PermGroup action;
  std::uint64_t order = 0;
  /// Element of each type containing the identity.
  Flag base_chamber;
};
CosetGeometry coset_geometry(const PermGroup& g, const GroupLimits& limits = {});

/// Replaces generator leaf.first by g_i g_j g_i with (i, j) = leaf.
PermGroup halving_group(const PermGroup& g, Leaf leaf);

/// Every relator uses generator `gen` an even number of times.
bool relator_parity_bipartite(const GroupPresentation& p, Generator gen);

/// G_i ∩ g_i G_i g_i = G_{ij}.
bool check_b1_algebraic(const PermGroup& g, Leaf leaf, const GroupLimits& limits = {});

/// true certifies the second leaf condition of the coset geometry:
/// the first condition holds and, for each other type k,
/// G_k ∩ G_i g_i G_i ⊆ G_i g_i G_{ik}. false is inconclusive.
bool check_b2_algebraic_sufficient(const PermGroup& g, Leaf leaf, const GroupLimits& limits = {});

/// Isomorphism of groups sending generator i to generator i.
bool generator_isomorphic(const PermGroup& a, const PermGroup& b, const GroupLimits& limits = {});

}  // namespace hyperforge
