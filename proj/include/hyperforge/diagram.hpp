#pragma once

#include <compare>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <vector>

#include "hyperforge/geometry.hpp"

namespace hyperforge {

inline constexpr std::uint32_t kInfinite = std::numeric_limits<std::uint32_t>::max();

/// (gonality, point diameter, line diameter) of a rank-2 geometry.
struct Rank2Parameters {
  std::uint32_t gonality = kInfinite;
  std::uint32_t point_diameter = kInfinite;
  std::uint32_t line_diameter = kInfinite;

  bool digon() const { return gonality == 2 && point_diameter == 2 && line_diameter == 2; }
  /// Common value when the three parameters agree (generalised polygon).
  std::optional<std::uint32_t> polygon() const;
  friend bool operator==(const Rank2Parameters&, const Rank2Parameters&) = default;
  friend auto operator<=>(const Rank2Parameters&, const Rank2Parameters&) = default;
};

/// Parameters of a rank-2 geometry: type 0 plays points, type 1 lines.
Rank2Parameters rank2_parameters(const IncidenceGeometry& g);
/// Half the girth of a graph's incidence structure; kInfinite for forests.
std::uint32_t girth(std::size_t vertex_count, const std::vector<std::vector<std::uint32_t>>& adj);

struct DiagramEdge {
  TypeId i = 0;
  TypeId j = 0;
  /// Every residue of cotype {i,j} with its parameters, counted.
  std::map<Rank2Parameters, std::size_t> labels;

  bool uniform() const { return labels.size() == 1; }
  /// Label when uniform; throws PropertyViolation otherwise.
  const Rank2Parameters& label() const;
  bool digon() const { return uniform() && label().digon(); }
};

struct BuekenhoutDiagram {
  std::size_t rank = 0;
  std::vector<DiagramEdge> edges;  // all pairs i<j in lexicographic order

  const DiagramEdge& edge(TypeId i, TypeId j) const;
  bool uniform() const;
};

BuekenhoutDiagram buekenhout_diagram(const IncidenceGeometry& g, const ScanLimits& limits = {});

}  // namespace hyperforge
