#include "hyperforge/geometry.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <string>

#include "hyperforge/error.hpp"

namespace hyperforge {

namespace {

std::vector<ElementId> intersect_sorted(std::span<const ElementId> a,
                                        std::span<const ElementId> b) {
  std::vector<ElementId> out;
  out.reserve(std::min(a.size(), b.size()));
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

std::vector<ElementId> all_elements(const IncidenceGeometry& g) {
  std::vector<ElementId> v(g.size());
  std::iota(v.begin(), v.end(), ElementId{0});
  return v;
}

// Induced subgeometry on a sorted element set, types compressed to those present in `keep_types`.
SubGeometry induced(const IncidenceGeometry& g, std::vector<ElementId> elements,
                    std::vector<TypeId> keep_types) {
  std::vector<TypeId> type_local(g.rank(), static_cast<TypeId>(-1));
  for (std::size_t i = 0; i < keep_types.size(); ++i) type_local[keep_types[i]] = static_cast<TypeId>(i);

  std::vector<ElementId> local(g.size(), static_cast<ElementId>(-1));
  for (std::size_t i = 0; i < elements.size(); ++i) local[elements[i]] = static_cast<ElementId>(i);

  std::vector<TypeId> types(elements.size());
  std::vector<Incidence> pairs;
  for (std::size_t i = 0; i < elements.size(); ++i) {
    ElementId x = elements[i];
    types[i] = type_local[g.type_of(x)];
    for (ElementId y : g.neighbors(x)) {
      if (y > x && local[y] != static_cast<ElementId>(-1)) {
        pairs.emplace_back(static_cast<ElementId>(i), local[y]);
      }
    }
  }
  SubGeometry sub;
  sub.geometry = IncidenceGeometry::assemble(keep_types.size(), std::move(types),
                                             std::move(pairs), true);
  sub.elements = std::move(elements);
  sub.types = std::move(keep_types);
  return sub;
}

}  // namespace

bool IncidenceGeometry::incident(ElementId a, ElementId b) const {
  auto n = neighbors(a);
  return std::binary_search(n.begin(), n.end(), b);
}

std::vector<std::size_t> IncidenceGeometry::type_counts() const {
  std::vector<std::size_t> counts(rank_);
  for (std::size_t t = 0; t < rank_; ++t) counts[t] = by_type_[t].size();
  return counts;
}

std::vector<Incidence> IncidenceGeometry::incidence_pairs() const {
  std::vector<Incidence> out;
  out.reserve(incidence_count());
  for (ElementId x = 0; x < size(); ++x) {
    for (ElementId y : neighbors(x)) {
      if (x < y) out.emplace_back(x, y);
    }
  }
  return out;
}

IncidenceGeometry IncidenceGeometry::assemble(std::size_t rank, std::vector<TypeId> types,
                                              std::vector<Incidence> incidences,
                                              bool allow_empty_types) {
  IncidenceGeometry g;
  g.rank_ = rank;
  const std::size_t n = types.size();
  for (std::size_t x = 0; x < n; ++x) {
    if (types[x] >= rank) {
      throw Error(ErrorCode::kInvalidInput,
                  "element " + std::to_string(x) + " has type " + std::to_string(types[x]) +
                      " outside 0.." + std::to_string(rank == 0 ? 0 : rank - 1));
    }
  }
  for (auto& [a, b] : incidences) {
    if (a >= n || b >= n) {
      throw Error(ErrorCode::kUnknownElement,
                  "incidence (" + std::to_string(a) + "," + std::to_string(b) + ")");
    }
    if (a == b) throw Error(ErrorCode::kSelfIncidence, "element " + std::to_string(a));
    if (types[a] == types[b]) {
      throw Error(ErrorCode::kSameTypeIncidence,
                  "elements " + std::to_string(a) + " and " + std::to_string(b));
    }
    if (a > b) std::swap(a, b);
  }
  std::sort(incidences.begin(), incidences.end());
  incidences.erase(std::unique(incidences.begin(), incidences.end()), incidences.end());

  std::vector<std::size_t> degree(n, 0);
  for (const auto& [a, b] : incidences) {
    ++degree[a];
    ++degree[b];
  }
  g.offsets_.assign(n + 1, 0);
  for (std::size_t x = 0; x < n; ++x) g.offsets_[x + 1] = g.offsets_[x] + degree[x];
  g.adjacency_.resize(g.offsets_[n]);
  std::vector<std::size_t> fill(g.offsets_.begin(), g.offsets_.end() - 1);
  for (const auto& [a, b] : incidences) {
    g.adjacency_[fill[a]++] = b;
    g.adjacency_[fill[b]++] = a;
  }
  for (std::size_t x = 0; x < n; ++x) {
    std::sort(g.adjacency_.begin() + static_cast<std::ptrdiff_t>(g.offsets_[x]),
              g.adjacency_.begin() + static_cast<std::ptrdiff_t>(g.offsets_[x + 1]));
  }
  g.by_type_.assign(rank, {});
  for (ElementId x = 0; x < n; ++x) g.by_type_[types[x]].push_back(x);
  if (!allow_empty_types) {
    for (std::size_t t = 0; t < rank; ++t) {
      if (g.by_type_[t].empty()) throw Error(ErrorCode::kEmptyType, "type " + std::to_string(t));
    }
  }
  g.types_ = std::move(types);
  return g;
}

IncidenceGeometry build_geometry(std::size_t rank, std::vector<TypeId> types,
                                 std::vector<Incidence> incidences) {
  return IncidenceGeometry::assemble(rank, std::move(types), std::move(incidences), false);
}

bool is_flag(const IncidenceGeometry& g, std::span<const ElementId> elements) {
  for (std::size_t i = 0; i < elements.size(); ++i) {
    if (elements[i] >= g.size()) return false;
    for (std::size_t j = i + 1; j < elements.size(); ++j) {
      if (elements[i] == elements[j] || !g.incident(elements[i], elements[j])) return false;
    }
  }
  return true;
}

std::vector<TypeId> flag_type(const IncidenceGeometry& g, std::span<const ElementId> flag) {
  std::vector<TypeId> t;
  for (ElementId x : flag) t.push_back(g.type_of(x));
  std::sort(t.begin(), t.end());
  return t;
}

SubGeometry residue(const IncidenceGeometry& g, std::span<const ElementId> flag) {
  if (!is_flag(g, flag)) throw Error(ErrorCode::kNotAFlag, "residue of a non-flag");
  std::vector<ElementId> cand = all_elements(g);
  for (ElementId x : flag) cand = intersect_sorted(cand, g.neighbors(x));
  std::vector<bool> used(g.rank(), false);
  for (ElementId x : flag) used[g.type_of(x)] = true;
  std::vector<TypeId> keep;
  for (TypeId t = 0; t < g.rank(); ++t) {
    if (!used[t]) keep.push_back(t);
  }
  return induced(g, std::move(cand), std::move(keep));
}

SubGeometry truncation(const IncidenceGeometry& g, std::span<const TypeId> types) {
  std::vector<TypeId> keep(types.begin(), types.end());
  std::sort(keep.begin(), keep.end());
  keep.erase(std::unique(keep.begin(), keep.end()), keep.end());
  for (TypeId t : keep) {
    if (t >= g.rank()) throw Error(ErrorCode::kInvalidInput, "truncation type out of range");
  }
  std::vector<ElementId> elements;
  for (ElementId x = 0; x < g.size(); ++x) {
    if (std::binary_search(keep.begin(), keep.end(), g.type_of(x))) elements.push_back(x);
  }
  return induced(g, std::move(elements), std::move(keep));
}

std::vector<ElementId> shadow(const IncidenceGeometry& g, ElementId x, TypeId t) {
  if (x >= g.size()) throw Error(ErrorCode::kUnknownElement, "unknown element " + std::to_string(x));
  if (g.type_of(x) == t) return {x};
  std::vector<ElementId> out;
  for (ElementId y : g.neighbors(x)) {
    if (g.type_of(y) == t) out.push_back(y);
  }
  return out;
}

namespace {

class FlagWalker {
 public:
  FlagWalker(const IncidenceGeometry& g, const ScanLimits& limits)
      : g_(g), limits_(limits), mark_(g.size(), 0) {}

  FlagScan run() {
    flag_.clear();
    walk(0, all_elements(g_));
    return result_;
  }

 private:
  void walk(TypeId t, const std::vector<ElementId>& cand) {
    if (t == g_.rank()) {
      visit(cand);
      return;
    }
    walk(t + 1, cand);
    for (ElementId x : cand) {
      if (g_.type_of(x) != t) continue;
      flag_.push_back(x);
      walk(t + 1, intersect_sorted(cand, g_.neighbors(x)));
      flag_.pop_back();
    }
  }

  void visit(const std::vector<ElementId>& res) {
    if (++result_.flags > limits_.max_flags) {
      throw Error(ErrorCode::kSizeLimitExceeded,
                  "flag scan exceeded " + std::to_string(limits_.max_flags) + " flags");
    }
    const std::size_t corank = g_.rank() - flag_.size();
    if (corank == 0) return;
    if (res.empty()) {
      result_.geometry = false;
      return;
    }
    if (corank == 1 && res.size() != 2) result_.thin = false;
    if (corank >= 2 && !connected(res)) result_.residually_connected = false;
  }

  bool connected(const std::vector<ElementId>& elems) {
    ++stamp_;
    for (ElementId x : elems) mark_[x] = stamp_;
    ++stamp_;
    std::vector<ElementId> stack{elems.front()};
    mark_[elems.front()] = stamp_;
    std::size_t seen = 1;
    while (!stack.empty()) {
      ElementId x = stack.back();
      stack.pop_back();
      for (ElementId y : g_.neighbors(x)) {
        if (mark_[y] == stamp_ - 1) {
          mark_[y] = stamp_;
          ++seen;
          stack.push_back(y);
        }
      }
    }
    return seen == elems.size();
  }

  const IncidenceGeometry& g_;
  ScanLimits limits_;
  std::vector<std::uint64_t> mark_;
  std::uint64_t stamp_ = 0;
  Flag flag_;
  FlagScan result_;
};

}  // namespace

FlagScan scan_flags(const IncidenceGeometry& g, const ScanLimits& limits) {
  return FlagWalker(g, limits).run();
}

bool is_geometry(const IncidenceGeometry& g, const ScanLimits& limits) {
  return scan_flags(g, limits).geometry;
}

bool is_connected(const IncidenceGeometry& g) {
  if (g.size() == 0) return true;
  std::vector<bool> seen(g.size(), false);
  std::vector<ElementId> stack{0};
  seen[0] = true;
  std::size_t count = 1;
  while (!stack.empty()) {
    ElementId x = stack.back();
    stack.pop_back();
    for (ElementId y : g.neighbors(x)) {
      if (!seen[y]) {
        seen[y] = true;
        ++count;
        stack.push_back(y);
      }
    }
  }
  return count == g.size();
}

bool is_residually_connected(const IncidenceGeometry& g, const ScanLimits& limits) {
  FlagScan s = scan_flags(g, limits);
  if (!s.geometry) throw Error(ErrorCode::kNotAGeometry, "some maximal flag is not a chamber");
  return s.residually_connected;
}

bool is_thin(const IncidenceGeometry& g, const ScanLimits& limits) {
  FlagScan s = scan_flags(g, limits);
  if (!s.geometry) throw Error(ErrorCode::kNotAGeometry, "some maximal flag is not a chamber");
  return s.thin;
}

std::vector<Flag> enumerate_chambers(const IncidenceGeometry& g, const ScanLimits& limits) {
  std::vector<Flag> out;
  Flag current;
  auto rec = [&](auto&& self, TypeId t, const std::vector<ElementId>& cand) -> void {
    if (t == g.rank()) {
      if (out.size() >= limits.max_flags) {
        throw Error(ErrorCode::kSizeLimitExceeded, "too many chambers");
      }
      out.push_back(current);
      return;
    }
    for (ElementId x : cand) {
      if (g.type_of(x) != t) continue;
      current.push_back(x);
      self(self, t + 1, intersect_sorted(cand, g.neighbors(x)));
      current.pop_back();
    }
  };
  rec(rec, 0, all_elements(g));
  return out;
}

bool is_thin_by_chambers(const IncidenceGeometry& g, const ScanLimits& limits) {
  if (!is_geometry(g, limits)) throw Error(ErrorCode::kNotAGeometry, "thinness of a non-geometry");
  auto chambers = enumerate_chambers(g, limits);
  for (TypeId i = 0; i < g.rank(); ++i) {
    std::map<Flag, std::size_t> panel_sizes;
    for (const Flag& c : chambers) {
      Flag key = c;
      key.erase(key.begin() + i);
      ++panel_sizes[key];
    }
    for (const auto& [key, count] : panel_sizes) {
      if (count != 2) return false;
    }
  }
  return true;
}

IncidenceGeometry relabel_elements(const IncidenceGeometry& g, std::span<const ElementId> perm) {
  if (perm.size() != g.size()) throw Error(ErrorCode::kInvalidInput, "relabel size mismatch");
  std::vector<TypeId> types(g.size());
  for (ElementId x = 0; x < g.size(); ++x) types[perm[x]] = g.type_of(x);
  std::vector<Incidence> pairs;
  for (auto [a, b] : g.incidence_pairs()) pairs.emplace_back(perm[a], perm[b]);
  return IncidenceGeometry::assemble(g.rank(), std::move(types), std::move(pairs), true);
}

IncidenceGeometry permute_types(const IncidenceGeometry& g, std::span<const TypeId> type_perm) {
  if (type_perm.size() != g.rank()) throw Error(ErrorCode::kInvalidInput, "type map size mismatch");
  std::vector<TypeId> types(g.size());
  for (ElementId x = 0; x < g.size(); ++x) types[x] = type_perm[g.type_of(x)];
  return IncidenceGeometry::assemble(g.rank(), std::move(types), g.incidence_pairs(), true);
}

IncidenceGeometry dual(const IncidenceGeometry& g) {
  std::vector<TypeId> rev(g.rank());
  for (TypeId t = 0; t < g.rank(); ++t) rev[t] = static_cast<TypeId>(g.rank() - 1 - t);
  return permute_types(g, rev);
}

}  // namespace hyperforge
