#include "hyperforge/diagram.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "hyperforge/error.hpp"

namespace hyperforge {

std::optional<std::uint32_t> Rank2Parameters::polygon() const {
  if (gonality == point_diameter && gonality == line_diameter) return gonality;
  return std::nullopt;
}

namespace {

std::vector<std::uint32_t> bfs_distances(const std::vector<std::vector<std::uint32_t>>& adj,
                                         std::uint32_t source) {
  std::vector<std::uint32_t> dist(adj.size(), kInfinite);
  std::vector<std::uint32_t> queue{source};
  dist[source] = 0;
  for (std::size_t h = 0; h < queue.size(); ++h) {
    std::uint32_t u = queue[h];
    for (std::uint32_t v : adj[u]) {
      if (dist[v] == kInfinite) {
        dist[v] = dist[u] + 1;
        queue.push_back(v);
      }
    }
  }
  return dist;
}

}  // namespace

std::uint32_t girth(std::size_t vertex_count, const std::vector<std::vector<std::uint32_t>>& adj) {
  std::uint32_t best = kInfinite;
  for (std::uint32_t s = 0; s < vertex_count; ++s) {
    std::vector<std::uint32_t> dist(vertex_count, kInfinite), parent(vertex_count, kInfinite);
    std::vector<std::uint32_t> queue{s};
    dist[s] = 0;
    for (std::size_t h = 0; h < queue.size(); ++h) {
      std::uint32_t u = queue[h];
      for (std::uint32_t v : adj[u]) {
        if (dist[v] == kInfinite) {
          dist[v] = dist[u] + 1;
          parent[v] = u;
          queue.push_back(v);
        } else if (parent[u] != v) {
          best = std::min(best, dist[u] + dist[v] + 1);
        }
      }
    }
  }
  return best;
}

namespace {

Rank2Parameters parameters_of(const std::vector<std::vector<std::uint32_t>>& adj,
                              const std::vector<bool>& is_point) {
  Rank2Parameters p;
  const std::uint32_t cycle = girth(adj.size(), adj);
  p.gonality = cycle == kInfinite ? kInfinite : cycle / 2;
  p.point_diameter = 0;
  p.line_diameter = 0;
  for (std::uint32_t x = 0; x < adj.size(); ++x) {
    auto d = bfs_distances(adj, x);
    std::uint32_t ecc = *std::max_element(d.begin(), d.end());
    auto& slot = is_point[x] ? p.point_diameter : p.line_diameter;
    slot = std::max(slot, ecc);
  }
  return p;
}

}  // namespace

Rank2Parameters rank2_parameters(const IncidenceGeometry& g) {
  if (g.rank() != 2) throw Error(ErrorCode::kInvalidInput, "rank-2 parameters need rank 2");
  const std::size_t n = g.size();
  std::vector<std::vector<std::uint32_t>> adj(n);
  std::vector<bool> is_point(n);
  for (ElementId x = 0; x < n; ++x) {
    adj[x].assign(g.neighbors(x).begin(), g.neighbors(x).end());
    is_point[x] = g.type_of(x) == 0;
  }
  return parameters_of(adj, is_point);
}

const Rank2Parameters& DiagramEdge::label() const {
  if (!uniform()) {
    throw Error(ErrorCode::kPropertyViolation,
                "residues of cotype {" + std::to_string(i) + "," + std::to_string(j) +
                    "} carry " + std::to_string(labels.size()) + " distinct labels");
  }
  return labels.begin()->first;
}

const DiagramEdge& BuekenhoutDiagram::edge(TypeId i, TypeId j) const {
  if (i > j) std::swap(i, j);
  for (const auto& e : edges) {
    if (e.i == i && e.j == j) return e;
  }
  throw Error(ErrorCode::kInvalidInput, "no diagram edge for the given types");
}

bool BuekenhoutDiagram::uniform() const {
  return std::all_of(edges.begin(), edges.end(), [](const DiagramEdge& e) { return e.uniform(); });
}

BuekenhoutDiagram buekenhout_diagram(const IncidenceGeometry& g, const ScanLimits& limits) {
  if (!is_geometry(g, limits)) throw Error(ErrorCode::kNotAGeometry, "diagram of a non-geometry");
  BuekenhoutDiagram d;
  d.rank = g.rank();
  std::vector<ElementId> everything(g.size());
  std::iota(everything.begin(), everything.end(), ElementId{0});
  for (TypeId i = 0; i < g.rank(); ++i) {
    for (TypeId j = i + 1; j < g.rank(); ++j) {
      DiagramEdge e;
      e.i = i;
      e.j = j;
      std::vector<TypeId> others;
      for (TypeId t = 0; t < g.rank(); ++t) {
        if (t != i && t != j) others.push_back(t);
      }
      auto rec = [&](auto&& self, std::size_t depth, const std::vector<ElementId>& cand) -> void {
        if (depth == others.size()) {
          // cand is exactly the residue of the current flag
          std::vector<std::vector<std::uint32_t>> adj(cand.size());
          std::vector<bool> is_point(cand.size());
          for (std::uint32_t a = 0; a < cand.size(); ++a) {
            is_point[a] = g.type_of(cand[a]) == i;
            for (ElementId y : g.neighbors(cand[a])) {
              auto it = std::lower_bound(cand.begin(), cand.end(), y);
              if (it != cand.end() && *it == y) adj[a].push_back(static_cast<std::uint32_t>(it - cand.begin()));
            }
          }
          ++e.labels[parameters_of(adj, is_point)];
          return;
        }
        for (ElementId x : cand) {
          if (g.type_of(x) != others[depth]) continue;
          std::vector<ElementId> next;
          auto nb = g.neighbors(x);
          std::set_intersection(cand.begin(), cand.end(), nb.begin(), nb.end(), std::back_inserter(next));
          self(self, depth + 1, next);
        }
      };
      rec(rec, 0, everything);
      d.edges.push_back(std::move(e));
    }
  }
  return d;
}

}  // namespace hyperforge
