#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hyperforge/geometry.hpp"
#include "hyperforge/permutation.hpp"

namespace hyperforge {

/// Simple undirected graph on vertices 0..n-1 with sorted adjacency.
struct SimpleGraph {
  std::vector<std::vector<std::uint32_t>> adjacency;

  std::size_t vertex_count() const { return adjacency.size(); }
  bool adjacent(std::uint32_t a, std::uint32_t b) const;
  static SimpleGraph from_edges(std::size_t n, const std::vector<std::pair<std::uint32_t, std::uint32_t>>& edges);
};

/// Classes of the "joined by an even walk" relation on a connected graph:
/// two colour classes when bipartite, a single class otherwise.
/// Class 0 always holds vertex 0.
struct ParityPartition {
  std::vector<std::uint8_t> class_of;
  std::size_t class_count = 1;

  bool bipartite() const { return class_count == 2; }
  std::vector<std::uint32_t> members(std::uint8_t c) const;
  /// The other class when bipartite, the same class otherwise.
  std::uint8_t opposite(std::uint8_t c) const { return class_count == 2 ? static_cast<std::uint8_t>(1 - c) : c; }
};

/// Throws Disconnected on disconnected input.
ParityPartition parity_classes(const SimpleGraph& graph);

/// Rank-2 geometry with points P x {0} and lines (complement of P, or P itself) x {1};
/// (p,0) is incident to (q,1) iff p ~ q. Throws NotAClass when P is not a parity class.
IncidenceGeometry partitioned_neighborhood(const SimpleGraph& graph, const std::vector<std::uint32_t>& klass);

/// {i,j}-truncation read as a graph: vertices are the i-elements (in id order),
/// edges the j-elements. Throws PreconditionFailed(B1) when a j-element is not
/// incident to exactly two i-elements.
struct LeafGraph {
  SimpleGraph graph;
  std::vector<ElementId> vertices;                            // graph vertex -> element
  std::vector<std::pair<std::uint32_t, std::uint32_t>> ends;  // per edge element, in id order
  std::vector<ElementId> edges;                               // edge index -> element
};
LeafGraph leaf_graph(const IncidenceGeometry& g, Leaf leaf);

bool check_b1(const IncidenceGeometry& g, Leaf leaf);
bool check_b2(const IncidenceGeometry& g, Leaf leaf);
/// Bipartiteness of the {i,j}-truncation; requires the first leaf condition.
bool truncation_bipartite(const IncidenceGeometry& g, Leaf leaf);

/// Where each element of a constructed geometry came from.
struct Provenance {
  std::string construction;  // "P" or "BP"
  Leaf leaf;
  /// Per element id: (base element, tag). Leaf copies carry tag 0/1 for the
  /// point/line copy (P) or the side (BP); other elements carry their class id.
  std::vector<std::pair<ElementId, std::uint32_t>> origin;
};

struct ConstructedGeometry {
  IncidenceGeometry geometry;
  Provenance provenance;
};

struct ConstructionOptions {
  /// Skip the leaf, bipartiteness and residual-connectedness preconditions.
  bool force = false;
  /// Skip only the residual-connectedness scan (callers that already know it).
  bool assume_residually_connected = false;
  /// BP only: vertex (element id) whose side becomes the point type;
  /// defaults to the side holding the smallest vertex.
  std::optional<ElementId> first_side_vertex;
  ScanLimits limits;
};

ConstructedGeometry p_construction(const IncidenceGeometry& g, Leaf leaf, const ConstructionOptions& opts = {});
ConstructedGeometry bp_construction(const IncidenceGeometry& g, Leaf leaf, const ConstructionOptions& opts = {});
/// BP when the truncation is bipartite, P otherwise.
ConstructedGeometry halving_geometry(const IncidenceGeometry& g, Leaf leaf, const ConstructionOptions& opts = {});

/// Type-swapping correlation of a P-construction: (p,0)<->(p,1), (x,P)->(x,P').
/// Throws NotPConstructed for other geometries.
std::vector<ElementId> duality_correlation(const ConstructedGeometry& built);

/// Action of a group of automorphisms of the base on the constructed geometry.
/// For BP the side-preserving subgroup is used (Schreier generators).
PermGroup induced_action(const IncidenceGeometry& base, const ConstructedGeometry& built, const PermGroup& action);

/// Predicts whether the P-construction at `applied` keeps the leaf conditions at
/// `next` (both types outside `applied`). Vacuously true below rank 4.
bool b1b2_propagation(const IncidenceGeometry& g, Leaf applied, Leaf next);

}  // namespace hyperforge
