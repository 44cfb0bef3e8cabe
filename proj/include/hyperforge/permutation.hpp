#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace hyperforge {

using Point = std::uint32_t;

/// Permutation of {0..degree-1}, acting on the right: x^(ab) = (x^a)^b.
class Permutation {
 public:
  Permutation() = default;
  explicit Permutation(std::vector<Point> images);
  static Permutation identity(std::size_t degree);

  std::size_t degree() const { return images_.size(); }
  Point operator[](Point x) const { return images_[x]; }
  std::span<const Point> images() const { return images_; }

  /// this first, then other.
  Permutation then(const Permutation& other) const;
  Permutation inverse() const;
  bool is_identity() const;
  std::uint64_t order() const;

  friend bool operator==(const Permutation&, const Permutation&) = default;
  friend auto operator<=>(const Permutation&, const Permutation&) = default;

 private:
  std::vector<Point> images_;
};

/// Group given by generators. A semiregular group acts freely, so every orbit
/// is a copy of the group; groups read off a regular action keep that flag.
class PermGroup {
 public:
  PermGroup() = default;
  PermGroup(std::size_t degree, std::vector<Permutation> gens, bool semiregular = false,
            std::optional<std::uint64_t> known_order = std::nullopt);

  std::size_t degree() const { return degree_; }
  std::size_t generator_count() const { return gens_.size(); }
  const std::vector<Permutation>& generators() const { return gens_; }
  const Permutation& generator(std::size_t i) const { return gens_[i]; }
  bool semiregular() const { return semiregular_; }
  std::optional<std::uint64_t> known_order() const { return known_order_; }

 private:
  std::size_t degree_ = 0;
  std::vector<Permutation> gens_;
  bool semiregular_ = false;
  std::optional<std::uint64_t> known_order_;
};

struct GroupLimits {
  std::size_t max_order = 5'000'000;
  /// Ceiling on degree * (points stored per transversal) for general groups.
  std::size_t max_work = 100'000'000;
};

/// Orbit in BFS order under the listed generators (all when `gens` is empty and `all` is true).
std::vector<Point> orbit(const PermGroup& g, Point start);
std::vector<Point> orbit(const PermGroup& g, Point start, std::span<const std::size_t> gens);

/// Group order: orbit length for semiregular groups, a stabiliser chain otherwise.
std::uint64_t group_order(const PermGroup& g, const GroupLimits& limits = {});
PermGroup subgroup(const PermGroup& g, std::span<const std::size_t> gens);
std::uint64_t subgroup_order(const PermGroup& g, std::span<const std::size_t> gens,
                             const GroupLimits& limits = {});

/// Regular action of the group, point 0 standing for the identity and
/// generators acting by right multiplication. Generator order is kept.
PermGroup regular_representation(const PermGroup& g, const GroupLimits& limits = {});

/// Order via a deterministic Schreier-Sims stabiliser chain.
std::uint64_t schreier_sims_order(const PermGroup& g, const GroupLimits& limits = {});

}  // namespace hyperforge
