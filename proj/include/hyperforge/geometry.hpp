#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace hyperforge {

using ElementId = std::uint32_t;
using TypeId = std::uint32_t;
using Incidence = std::pair<ElementId, ElementId>;
/// Set of pairwise incident elements, kept sorted by type.
using Flag = std::vector<ElementId>;

/// Ordered pair of types (i, j); i plays the point role, j the line role.
struct Leaf {
  TypeId first = 0;
  TypeId second = 1;
  friend bool operator==(const Leaf&, const Leaf&) = default;
};

/// Finite incidence system with dense element ids and types 0..rank-1.
/// Adjacency is stored symmetric and sorted (CSR layout).
class IncidenceGeometry {
 public:
  IncidenceGeometry() = default;

  std::size_t rank() const { return rank_; }
  std::size_t size() const { return types_.size(); }
  TypeId type_of(ElementId x) const { return types_[x]; }
  const std::vector<TypeId>& types() const { return types_; }

  std::span<const ElementId> neighbors(ElementId x) const {
    return {adjacency_.data() + offsets_[x], adjacency_.data() + offsets_[x + 1]};
  }
  bool incident(ElementId a, ElementId b) const;

  std::span<const ElementId> elements_of_type(TypeId t) const { return by_type_[t]; }
  std::vector<std::size_t> type_counts() const;
  std::size_t incidence_count() const { return adjacency_.size() / 2; }
  /// Each unordered incidence once, as (smaller, larger), sorted.
  std::vector<Incidence> incidence_pairs() const;

  friend bool operator==(const IncidenceGeometry& a, const IncidenceGeometry& b) {
    return a.rank_ == b.rank_ && a.types_ == b.types_ && a.offsets_ == b.offsets_ &&
           a.adjacency_ == b.adjacency_;
  }

  /// Validating assembly; duplicates and both orientations are tolerated.
  /// With allow_empty_types, a type may carry no element (residues of non-geometries).
  static IncidenceGeometry assemble(std::size_t rank, std::vector<TypeId> types,
                                    std::vector<Incidence> incidences,
                                    bool allow_empty_types);

 private:
  std::size_t rank_ = 0;
  std::vector<TypeId> types_;
  std::vector<std::size_t> offsets_{0};
  std::vector<ElementId> adjacency_;
  std::vector<std::vector<ElementId>> by_type_;
};

/// Validated constructor. Throws SelfIncidence, SameTypeIncidence, UnknownElement, EmptyType.
IncidenceGeometry build_geometry(std::size_t rank, std::vector<TypeId> types,
                                 std::vector<Incidence> incidences);

/// Geometry carved out of a parent, with the maps back to the parent.
struct SubGeometry {
  IncidenceGeometry geometry;
  std::vector<ElementId> elements;  // local id -> parent id
  std::vector<TypeId> types;        // local type -> parent type
};

bool is_flag(const IncidenceGeometry& g, std::span<const ElementId> elements);
/// Sorted type set of a flag.
std::vector<TypeId> flag_type(const IncidenceGeometry& g, std::span<const ElementId> flag);

SubGeometry residue(const IncidenceGeometry& g, std::span<const ElementId> flag);
SubGeometry truncation(const IncidenceGeometry& g, std::span<const TypeId> types);
/// Elements of type t incident to x.
std::vector<ElementId> shadow(const IncidenceGeometry& g, ElementId x, TypeId t);

struct ScanLimits {
  std::size_t max_flags = 50'000'000;
};

/// All chambers, each listed by increasing type; lexicographically sorted.
std::vector<Flag> enumerate_chambers(const IncidenceGeometry& g,
                                     const ScanLimits& limits = {});

/// Results of one pass over every flag.
struct FlagScan {
  bool geometry = true;
  bool residually_connected = true;
  bool thin = true;
  std::size_t flags = 0;
};
FlagScan scan_flags(const IncidenceGeometry& g, const ScanLimits& limits = {});

bool is_geometry(const IncidenceGeometry& g, const ScanLimits& limits = {});
bool is_connected(const IncidenceGeometry& g);
/// Throws NotAGeometry when some maximal flag is not a chamber.
bool is_residually_connected(const IncidenceGeometry& g, const ScanLimits& limits = {});
bool is_thin(const IncidenceGeometry& g, const ScanLimits& limits = {});
/// Thinness recomputed from i-adjacency of chambers.
bool is_thin_by_chambers(const IncidenceGeometry& g, const ScanLimits& limits = {});

/// new id of element x is perm[x].
IncidenceGeometry relabel_elements(const IncidenceGeometry& g, std::span<const ElementId> perm);
/// new type of an element of type t is type_perm[t].
IncidenceGeometry permute_types(const IncidenceGeometry& g, std::span<const TypeId> type_perm);
/// Types reversed: t -> rank-1-t.
IncidenceGeometry dual(const IncidenceGeometry& g);

}  // namespace hyperforge
