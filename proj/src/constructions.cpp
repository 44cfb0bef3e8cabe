#include "hyperforge/constructions.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <string>

#include "hyperforge/error.hpp"

namespace hyperforge {

namespace {

constexpr std::uint32_t kAbsent = 0xffffffffu;

void check_leaf(const IncidenceGeometry& g, Leaf leaf) {
  if (leaf.first >= g.rank() || leaf.second >= g.rank() || leaf.first == leaf.second) {
    throw Error(ErrorCode::kInvalidInput, "leaf types outside the rank");
  }
}

bool is_leaf_type(Leaf leaf, TypeId t) { return t == leaf.first || t == leaf.second; }

// Parity classes of the leaf graph restricted to the shadow of a non-leaf element.
struct LocalClasses {
  std::vector<std::uint32_t> vertices;  // sorted graph vertices
  std::vector<std::uint8_t> tag;
  std::size_t class_count = 1;

  std::uint32_t tag_of(std::uint32_t v) const {
    auto it = std::lower_bound(vertices.begin(), vertices.end(), v);
    if (it == vertices.end() || *it != v) return kAbsent;
    return tag[static_cast<std::size_t>(it - vertices.begin())];
  }
  std::vector<std::uint32_t> members(std::uint32_t c) const {
    std::vector<std::uint32_t> out;
    for (std::size_t k = 0; k < vertices.size(); ++k) {
      if (tag[k] == c) out.push_back(vertices[k]);
    }
    return out;
  }
};

class LeafIndex {
 public:
  LeafIndex(const IncidenceGeometry& g, Leaf leaf) : g_(g), leaf_(leaf), lg_(leaf_graph(g, leaf)) {
    vertex_of_.assign(g.size(), kAbsent);
    edge_of_.assign(g.size(), kAbsent);
    for (std::uint32_t v = 0; v < lg_.vertices.size(); ++v) vertex_of_[lg_.vertices[v]] = v;
    for (std::uint32_t e = 0; e < lg_.edges.size(); ++e) edge_of_[lg_.edges[e]] = e;
  }

  const LeafGraph& graph() const { return lg_; }
  std::uint32_t vertex_of(ElementId x) const { return vertex_of_[x]; }

  LocalClasses classes_at(ElementId x) const {
    LocalClasses lc;
    for (ElementId y : g_.neighbors(x)) {
      if (g_.type_of(y) == leaf_.first) lc.vertices.push_back(vertex_of_[y]);
    }
    std::sort(lc.vertices.begin(), lc.vertices.end());
    std::vector<std::pair<std::uint32_t, std::uint32_t>> local_edges;
    auto local = [&](std::uint32_t v) {
      auto it = std::lower_bound(lc.vertices.begin(), lc.vertices.end(), v);
      if (it == lc.vertices.end() || *it != v) return kAbsent;
      return static_cast<std::uint32_t>(it - lc.vertices.begin());
    };
    for (ElementId y : g_.neighbors(x)) {
      if (g_.type_of(y) != leaf_.second) continue;
      auto [a, b] = lg_.ends[edge_of_[y]];
      std::uint32_t la = local(a), lb = local(b);
      if (la != kAbsent && lb != kAbsent) local_edges.emplace_back(la, lb);
    }
    if (lc.vertices.empty()) {
      throw Error(ErrorCode::kDisconnected, "element " + std::to_string(x) + " has an empty leaf residue");
    }
    ParityPartition pp = parity_classes(SimpleGraph::from_edges(lc.vertices.size(), local_edges));
    lc.tag = pp.class_of;
    lc.class_count = pp.class_count;
    return lc;
  }

 private:
  const IncidenceGeometry& g_;
  Leaf leaf_;
  LeafGraph lg_;
  std::vector<std::uint32_t> vertex_of_;
  std::vector<std::uint32_t> edge_of_;
};

void require_common(const IncidenceGeometry& g, Leaf leaf, const ConstructionOptions& opts) {
  check_leaf(g, leaf);
  if (opts.force) return;
  if (!check_b1(g, leaf)) throw PreconditionError(Precondition::kB1, "first leaf condition fails");
  if (!check_b2(g, leaf)) throw PreconditionError(Precondition::kB2, "second leaf condition fails");
  if (!opts.assume_residually_connected) {
    FlagScan scan = scan_flags(g, opts.limits);
    if (!scan.geometry) throw Error(ErrorCode::kNotAGeometry, "construction input is not a geometry");
    if (!scan.residually_connected) {
      throw PreconditionError(Precondition::kNotResiduallyConnected, "input is not residually connected");
    }
  }
}

}  // namespace

bool SimpleGraph::adjacent(std::uint32_t a, std::uint32_t b) const {
  return std::binary_search(adjacency[a].begin(), adjacency[a].end(), b);
}

SimpleGraph SimpleGraph::from_edges(std::size_t n,
                                    const std::vector<std::pair<std::uint32_t, std::uint32_t>>& edges) {
  SimpleGraph g;
  g.adjacency.assign(n, {});
  for (auto [a, b] : edges) {
    if (a >= n || b >= n) throw Error(ErrorCode::kInvalidInput, "edge endpoint out of range");
    g.adjacency[a].push_back(b);
    g.adjacency[b].push_back(a);
  }
  for (auto& row : g.adjacency) {
    std::sort(row.begin(), row.end());
    row.erase(std::unique(row.begin(), row.end()), row.end());
  }
  return g;
}

std::vector<std::uint32_t> ParityPartition::members(std::uint8_t c) const {
  std::vector<std::uint32_t> out;
  for (std::uint32_t v = 0; v < class_of.size(); ++v) {
    if (class_of[v] == c) out.push_back(v);
  }
  return out;
}

ParityPartition parity_classes(const SimpleGraph& graph) {
  const std::size_t n = graph.vertex_count();
  ParityPartition pp;
  if (n == 0) throw Error(ErrorCode::kDisconnected, "empty graph");
  std::vector<int> colour(n, -1);
  std::vector<std::uint32_t> queue{0};
  colour[0] = 0;
  bool odd_cycle = false;
  for (std::size_t h = 0; h < queue.size(); ++h) {
    std::uint32_t u = queue[h];
    for (std::uint32_t v : graph.adjacency[u]) {
      if (colour[v] < 0) {
        colour[v] = 1 - colour[u];
        queue.push_back(v);
      } else if (colour[v] == colour[u]) {
        odd_cycle = true;
      }
    }
  }
  if (queue.size() != n) throw Error(ErrorCode::kDisconnected, "graph is not connected");
  pp.class_of.assign(n, 0);
  if (!odd_cycle) {
    pp.class_count = 2;
    for (std::size_t v = 0; v < n; ++v) pp.class_of[v] = static_cast<std::uint8_t>(colour[v]);
  }
  return pp;
}

IncidenceGeometry partitioned_neighborhood(const SimpleGraph& graph, const std::vector<std::uint32_t>& klass) {
  ParityPartition pp = parity_classes(graph);
  std::vector<std::uint32_t> sorted = klass;
  std::sort(sorted.begin(), sorted.end());
  std::optional<std::uint8_t> which;
  for (std::uint8_t c = 0; c < pp.class_count; ++c) {
    if (pp.members(c) == sorted) which = c;
  }
  if (!which) throw Error(ErrorCode::kNotAClass, "vertex set is not a parity class");
  const auto points = pp.members(*which);
  const auto lines = pp.members(pp.opposite(*which));
  std::vector<TypeId> types(points.size() + lines.size(), 0);
  std::fill(types.begin() + static_cast<std::ptrdiff_t>(points.size()), types.end(), 1);
  std::vector<Incidence> pairs;
  for (std::uint32_t a = 0; a < points.size(); ++a) {
    for (std::uint32_t b = 0; b < lines.size(); ++b) {
      if (graph.adjacent(points[a], lines[b])) {
        pairs.emplace_back(a, static_cast<ElementId>(points.size() + b));
      }
    }
  }
  return IncidenceGeometry::assemble(2, std::move(types), std::move(pairs), true);
}

LeafGraph leaf_graph(const IncidenceGeometry& g, Leaf leaf) {
  check_leaf(g, leaf);
  LeafGraph lg;
  auto verts = g.elements_of_type(leaf.first);
  lg.vertices.assign(verts.begin(), verts.end());
  std::vector<std::uint32_t> index(g.size(), kAbsent);
  for (std::uint32_t v = 0; v < lg.vertices.size(); ++v) index[lg.vertices[v]] = v;
  for (ElementId e : g.elements_of_type(leaf.second)) {
    std::vector<std::uint32_t> ends;
    for (ElementId y : g.neighbors(e)) {
      if (g.type_of(y) == leaf.first) ends.push_back(index[y]);
    }
    if (ends.size() != 2) {
      throw PreconditionError(Precondition::kB1, "element " + std::to_string(e) + " has " +
                                                     std::to_string(ends.size()) + " point neighbours");
    }
    lg.edges.push_back(e);
    lg.ends.emplace_back(ends[0], ends[1]);
  }
  lg.graph = SimpleGraph::from_edges(lg.vertices.size(), lg.ends);
  return lg;
}

bool check_b1(const IncidenceGeometry& g, Leaf leaf) {
  check_leaf(g, leaf);
  std::set<std::pair<ElementId, ElementId>> seen;
  for (ElementId e : g.elements_of_type(leaf.second)) {
    auto s = shadow(g, e, leaf.first);
    if (s.size() != 2) return false;
    if (!seen.emplace(s[0], s[1]).second) return false;
  }
  return true;
}

bool check_b2(const IncidenceGeometry& g, Leaf leaf) {
  check_leaf(g, leaf);
  std::vector<ElementId> others;
  for (ElementId x = 0; x < g.size(); ++x) {
    if (!is_leaf_type(leaf, g.type_of(x))) others.push_back(x);
  }
  for (ElementId e : g.elements_of_type(leaf.second)) {
    const auto points = shadow(g, e, leaf.first);
    // Elements of other types incident to every point of e.
    std::vector<ElementId> common = others;
    for (ElementId p : points) {
      std::vector<ElementId> next;
      auto nb = g.neighbors(p);
      std::set_intersection(common.begin(), common.end(), nb.begin(), nb.end(), std::back_inserter(next));
      common.swap(next);
    }
    std::vector<ElementId> incident;
    for (ElementId x : g.neighbors(e)) {
      if (!is_leaf_type(leaf, g.type_of(x))) incident.push_back(x);
    }
    if (common != incident) return false;
  }
  return true;
}

bool truncation_bipartite(const IncidenceGeometry& g, Leaf leaf) {
  return parity_classes(leaf_graph(g, leaf).graph).bipartite();
}

ConstructedGeometry p_construction(const IncidenceGeometry& g, Leaf leaf, const ConstructionOptions& opts) {
  require_common(g, leaf, opts);
  LeafIndex index(g, leaf);
  const LeafGraph& lg = index.graph();
  if (!opts.force && parity_classes(lg.graph).bipartite()) {
    throw PreconditionError(Precondition::kBipartite, "truncation is bipartite; use the BP construction");
  }
  const std::uint32_t nv = static_cast<std::uint32_t>(lg.vertices.size());

  ConstructedGeometry out;
  out.provenance.construction = "P";
  out.provenance.leaf = leaf;
  std::vector<TypeId> types;
  auto& origin = out.provenance.origin;
  for (std::uint32_t v = 0; v < nv; ++v) {
    types.push_back(leaf.first);
    origin.emplace_back(lg.vertices[v], 0);
  }
  for (std::uint32_t v = 0; v < nv; ++v) {
    types.push_back(leaf.second);
    origin.emplace_back(lg.vertices[v], 1);
  }
  std::vector<ElementId> first_id(g.size(), kAbsent);
  std::vector<LocalClasses> classes(g.size());
  for (ElementId x = 0; x < g.size(); ++x) {
    if (is_leaf_type(leaf, g.type_of(x))) continue;
    classes[x] = index.classes_at(x);
    first_id[x] = static_cast<ElementId>(types.size());
    for (std::uint32_t c = 0; c < classes[x].class_count; ++c) {
      types.push_back(g.type_of(x));
      origin.emplace_back(x, c);
    }
  }

  std::vector<Incidence> pairs;
  for (const auto& [a, b] : lg.ends) {
    pairs.emplace_back(a, nv + b);
    pairs.emplace_back(b, nv + a);
  }
  for (ElementId x = 0; x < g.size(); ++x) {
    if (first_id[x] == kAbsent) continue;
    const LocalClasses& cx = classes[x];
    for (std::size_t k = 0; k < cx.vertices.size(); ++k) {
      const std::uint32_t v = cx.vertices[k];
      const std::uint32_t t = cx.tag[k];
      const std::uint32_t opposite = cx.class_count == 2 ? 1 - t : t;
      pairs.emplace_back(v, first_id[x] + t);
      pairs.emplace_back(nv + v, first_id[x] + opposite);
    }
    for (ElementId y : g.neighbors(x)) {
      if (y < x || first_id[y] == kAbsent) continue;
      const LocalClasses& cy = classes[y];
      for (std::uint32_t a = 0; a < cx.class_count; ++a) {
        for (std::uint32_t b = 0; b < cy.class_count; ++b) {
          bool meet = false;
          for (std::size_t k = 0; k < cx.vertices.size() && !meet; ++k) {
            meet = cx.tag[k] == a && cy.tag_of(cx.vertices[k]) == b;
          }
          if (meet) pairs.emplace_back(first_id[x] + a, first_id[y] + b);
        }
      }
    }
  }
  out.geometry = IncidenceGeometry::assemble(g.rank(), std::move(types), std::move(pairs), true);
  return out;
}

ConstructedGeometry bp_construction(const IncidenceGeometry& g, Leaf leaf, const ConstructionOptions& opts) {
  require_common(g, leaf, opts);
  LeafIndex index(g, leaf);
  const LeafGraph& lg = index.graph();
  ParityPartition pp = parity_classes(lg.graph);
  if (!pp.bipartite()) {
    throw PreconditionError(Precondition::kNotBipartite, "truncation is not bipartite; use the P construction");
  }
  std::uint8_t first_side = 0;
  if (opts.first_side_vertex) {
    std::uint32_t v = index.vertex_of(*opts.first_side_vertex);
    if (v == kAbsent) throw Error(ErrorCode::kInvalidInput, "side vertex is not a point of the leaf");
    first_side = pp.class_of[v];
  }

  ConstructedGeometry out;
  out.provenance.construction = "BP";
  out.provenance.leaf = leaf;
  std::vector<TypeId> types;
  auto& origin = out.provenance.origin;
  std::vector<ElementId> id_of_vertex(lg.vertices.size());
  for (std::uint8_t side : {first_side, static_cast<std::uint8_t>(1 - first_side)}) {
    for (std::uint32_t v = 0; v < lg.vertices.size(); ++v) {
      if (pp.class_of[v] != side) continue;
      id_of_vertex[v] = static_cast<ElementId>(types.size());
      types.push_back(side == first_side ? leaf.first : leaf.second);
      origin.emplace_back(lg.vertices[v], side == first_side ? 0 : 1);
    }
  }
  std::vector<ElementId> id_of(g.size(), kAbsent);
  for (std::uint32_t v = 0; v < lg.vertices.size(); ++v) id_of[lg.vertices[v]] = id_of_vertex[v];
  for (ElementId x = 0; x < g.size(); ++x) {
    if (is_leaf_type(leaf, g.type_of(x))) continue;
    id_of[x] = static_cast<ElementId>(types.size());
    types.push_back(g.type_of(x));
    origin.emplace_back(x, 0);
  }
  std::vector<Incidence> pairs;
  for (const auto& [a, b] : lg.ends) pairs.emplace_back(id_of_vertex[a], id_of_vertex[b]);
  for (ElementId x = 0; x < g.size(); ++x) {
    if (g.type_of(x) == leaf.second) continue;
    for (ElementId y : g.neighbors(x)) {
      if (y < x || g.type_of(y) == leaf.second) continue;
      pairs.emplace_back(id_of[x], id_of[y]);
    }
  }
  out.geometry = IncidenceGeometry::assemble(g.rank(), std::move(types), std::move(pairs), true);
  return out;
}

ConstructedGeometry halving_geometry(const IncidenceGeometry& g, Leaf leaf, const ConstructionOptions& opts) {
  check_leaf(g, leaf);
  if (parity_classes(leaf_graph(g, leaf).graph).bipartite()) return bp_construction(g, leaf, opts);
  return p_construction(g, leaf, opts);
}

namespace {

struct OriginKey {
  ElementId base;
  std::uint32_t tag;
  TypeId type;
  auto operator<=>(const OriginKey&) const = default;
};

std::map<OriginKey, ElementId> origin_index(const ConstructedGeometry& built) {
  std::map<OriginKey, ElementId> idx;
  for (ElementId x = 0; x < built.provenance.origin.size(); ++x) {
    auto [base, tag] = built.provenance.origin[x];
    idx[{base, tag, built.geometry.type_of(x)}] = x;
  }
  return idx;
}

}  // namespace

std::vector<ElementId> duality_correlation(const ConstructedGeometry& built) {
  if (built.provenance.construction != "P") {
    throw Error(ErrorCode::kNotPConstructed, "correlation exists only for P-constructed geometries");
  }
  const Leaf leaf = built.provenance.leaf;
  const auto idx = origin_index(built);
  std::vector<ElementId> map(built.geometry.size());
  for (ElementId x = 0; x < map.size(); ++x) {
    auto [base, tag] = built.provenance.origin[x];
    const TypeId t = built.geometry.type_of(x);
    if (t == leaf.first) {
      map[x] = idx.at({base, 1, leaf.second});
    } else if (t == leaf.second) {
      map[x] = idx.at({base, 0, leaf.first});
    } else {
      auto it = idx.find({base, 1 - tag, t});
      map[x] = it == idx.end() ? x : it->second;
    }
  }
  return map;
}

PermGroup induced_action(const IncidenceGeometry& base, const ConstructedGeometry& built, const PermGroup& action) {
  if (action.degree() != base.size()) throw Error(ErrorCode::kNotAnAction, "action degree differs from base size");
  const Leaf leaf = built.provenance.leaf;
  const auto idx = origin_index(built);
  const auto& origin = built.provenance.origin;
  const std::size_t m = built.geometry.size();

  if (built.provenance.construction == "P") {
    LeafIndex index(base, leaf);
    std::vector<LocalClasses> classes(base.size());
    for (ElementId x = 0; x < base.size(); ++x) {
      if (!is_leaf_type(leaf, base.type_of(x))) classes[x] = index.classes_at(x);
    }
    std::vector<Permutation> gens;
    for (const auto& s : action.generators()) {
      std::vector<Point> img(m);
      for (ElementId x = 0; x < m; ++x) {
        auto [b, tag] = origin[x];
        const TypeId t = built.geometry.type_of(x);
        if (is_leaf_type(leaf, t)) {
          img[x] = idx.at({s[b], tag, t});
          continue;
        }
        const LocalClasses& from = classes[b];
        std::uint32_t rep = 0;
        while (from.tag[rep] != tag) ++rep;
        const ElementId moved_vertex = s[index.graph().vertices[from.vertices[rep]]];
        const std::uint32_t new_tag = classes[s[b]].tag_of(index.vertex_of(moved_vertex));
        if (new_tag == kAbsent) throw Error(ErrorCode::kNotAnAction, "generator does not preserve shadows");
        img[x] = idx.at({s[b], new_tag, t});
      }
      gens.emplace_back(std::move(img));
    }
    return PermGroup(m, std::move(gens));
  }

  // BP: keep elements preserving the two sides; Schreier generators over the transversal {1, t}.
  std::vector<std::uint8_t> side(base.size(), 2);
  for (ElementId x = 0; x < m; ++x) {
    if (is_leaf_type(leaf, built.geometry.type_of(x))) side[origin[x].first] = static_cast<std::uint8_t>(origin[x].second);
  }
  auto swaps = [&](const Permutation& s) {
    for (ElementId x = 0; x < base.size(); ++x) {
      if (side[x] < 2) return side[s[x]] != side[x];
    }
    return false;
  };
  std::vector<Permutation> keep;
  std::optional<Permutation> t;
  for (const auto& s : action.generators()) {
    if (!swaps(s)) {
      keep.push_back(s);
    } else if (!t) {
      t = s;
    }
  }
  std::vector<Permutation> schreier = keep;
  if (t) {
    const Permutation tinv = t->inverse();
    for (const auto& s : action.generators()) {
      if (swaps(s)) {
        schreier.push_back(s.then(tinv));
        schreier.push_back(t->then(s));
      } else {
        schreier.push_back(t->then(s).then(tinv));
      }
    }
  }
  std::vector<ElementId> id_of(base.size(), kAbsent);
  for (ElementId x = 0; x < m; ++x) id_of[origin[x].first] = x;
  std::vector<Permutation> gens;
  for (const auto& s : schreier) {
    if (s.is_identity()) continue;
    std::vector<Point> img(m);
    for (ElementId x = 0; x < m; ++x) img[x] = id_of[s[origin[x].first]];
    gens.emplace_back(std::move(img));
  }
  return PermGroup(m, std::move(gens));
}

bool b1b2_propagation(const IncidenceGeometry& g, Leaf applied, Leaf next) {
  check_leaf(g, applied);
  if (g.rank() < 4) return true;
  check_leaf(g, next);
  if (is_leaf_type(applied, next.first) || is_leaf_type(applied, next.second)) {
    throw Error(ErrorCode::kInvalidInput, "next leaf must avoid the applied leaf types");
  }
  for (Leaf l : {applied, next}) {
    if (!check_b1(g, l)) throw PreconditionError(Precondition::kB1, "leaf conditions required at both pairs");
    if (!check_b2(g, l)) throw PreconditionError(Precondition::kB2, "leaf conditions required at both pairs");
  }
  LeafIndex index(g, applied);
  std::vector<int> bip(g.size(), -1);
  auto bipartite_at = [&](ElementId x) {
    if (bip[x] < 0) bip[x] = index.classes_at(x).class_count == 2 ? 1 : 0;
    return bip[x] == 1;
  };
  for (ElementId x : g.elements_of_type(next.first)) {
    for (ElementId y : g.neighbors(x)) {
      if (g.type_of(y) != next.second) continue;
      if (!bipartite_at(x) && bipartite_at(y)) return false;
    }
  }
  return true;
}

}  // namespace hyperforge
