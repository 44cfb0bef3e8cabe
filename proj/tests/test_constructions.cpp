#include <doctest.h>

#include <algorithm>
#include <array>
#include <set>

#include "hyperforge/action.hpp"
#include "hyperforge/cgroup.hpp"
#include "hyperforge/constructions.hpp"
#include "hyperforge/coset_enumeration.hpp"
#include "hyperforge/diagram.hpp"
#include "hyperforge/error.hpp"
#include "hyperforge/isomorphism.hpp"
#include "hyperforge/toroid.hpp"
#include "oracles.hpp"

using namespace hyperforge;

namespace {

SimpleGraph graph(std::size_t n, std::vector<std::pair<std::uint32_t, std::uint32_t>> edges) {
  return SimpleGraph::from_edges(n, edges);
}

SimpleGraph cycle(std::uint32_t n) {
  std::vector<std::pair<std::uint32_t, std::uint32_t>> e;
  for (std::uint32_t i = 0; i < n; ++i) e.emplace_back(i, (i + 1) % n);
  return graph(n, e);
}

// Even-walk reachability by BFS on (vertex, parity) states.
std::vector<std::vector<bool>> even_reachable(const SimpleGraph& g) {
  const std::size_t n = g.vertex_count();
  std::vector<std::vector<bool>> out(n, std::vector<bool>(n, false));
  for (std::uint32_t s = 0; s < n; ++s) {
    std::vector<std::array<bool, 2>> seen(n, {false, false});
    std::vector<std::pair<std::uint32_t, int>> todo{{s, 0}};
    seen[s][0] = true;
    while (!todo.empty()) {
      auto [v, par] = todo.back();
      todo.pop_back();
      for (auto w : g.adjacency[v]) {
        if (!seen[w][1 - par]) {
          seen[w][1 - par] = true;
          todo.push_back({w, 1 - par});
        }
      }
    }
    for (std::uint32_t t = 0; t < n; ++t) out[s][t] = seen[t][0];
  }
  return out;
}

Precondition precondition_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const PreconditionError& e) {
    return e.precondition();
  }
  FAIL("expected a precondition failure");
  return Precondition::kB1;
}

IncidenceGeometry toroid_geometry(unsigned n, unsigned k, unsigned s) {
  ToroidBuildOptions opts;
  opts.verify = false;
  return build_cubic_toroid({n, k, s}, opts).coset.geometry;
}

}  // namespace

TEST_SUITE("constructions") {
  TEST_CASE("parity classes") {
    auto k3 = parity_classes(cycle(3));
    CHECK(k3.class_count == 1);
    CHECK_FALSE(k3.bipartite());
    auto k2 = parity_classes(graph(2, {{0, 1}}));
    CHECK(k2.bipartite());
    CHECK(k2.members(0) == std::vector<std::uint32_t>{0});
    CHECK(k2.members(1) == std::vector<std::uint32_t>{1});
    auto c5 = parity_classes(cycle(5));
    CHECK(c5.class_count == 1);
    auto reach = even_reachable(cycle(5));
    for (auto row : reach) CHECK(std::all_of(row.begin(), row.end(), [](bool b) { return b; }));
    CHECK_THROWS_AS(parity_classes(graph(3, {{0, 1}})), Error);
  }

  TEST_CASE("parity classes match even-walk reachability and flip along edges") {
    std::mt19937 rng(11);
    for (int trial = 0; trial < 200; ++trial) {
      const int n = 2 + static_cast<int>(rng() % 7);
      auto og = oracle::random_connected_graph(n, 0.35, rng);
      std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
      for (int a = 0; a < n; ++a) {
        for (int b : og[a]) {
          if (a < b) edges.emplace_back(a, b);
        }
      }
      auto g = graph(n, edges);
      auto part = parity_classes(g);
      auto reach = even_reachable(g);
      CHECK(part.class_of[0] == 0);
      for (int a = 0; a < n; ++a) {
        for (int b = 0; b < n; ++b) CHECK((part.class_of[a] == part.class_of[b]) == reach[a][b]);
      }
      if (part.bipartite()) {
        for (const auto& [a, b] : edges) CHECK(part.class_of[a] != part.class_of[b]);
      }
    }
  }

  TEST_CASE("partitioned neighbourhood geometries") {
    auto k2 = partitioned_neighborhood(graph(2, {{0, 1}}), {0});
    CHECK(k2.type_counts() == std::vector<std::size_t>{1, 1});
    CHECK(k2.incidence_count() == 1);
    auto k3 = partitioned_neighborhood(cycle(3), {0, 1, 2});
    CHECK(k3.type_counts() == std::vector<std::size_t>{3, 3});
    CHECK(isomorphic(k3, oracle::polygon(3)));
    CHECK(rank2_parameters(k3).gonality == 3);
    CHECK(oracle::incidence_gonality(k3) == 3);
    auto c4 = partitioned_neighborhood(cycle(4), {0, 2});
    CHECK(c4.type_counts() == std::vector<std::size_t>{2, 2});
    CHECK(rank2_parameters(c4).digon());
    CHECK(oracle::incidence_gonality(c4) == 2);
    try {
      partitioned_neighborhood(cycle(4), {0, 1});
      FAIL("expected NotAClass");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::kNotAClass);
    }
  }

  TEST_CASE("leaf conditions on explicit geometries") {
    auto hemi = oracle::hemicube();
    CHECK(check_b1(hemi, {0, 1}));
    CHECK_FALSE(check_b2(hemi, {0, 1}));
    CHECK_FALSE(check_b1(hemi, {2, 1}));
    auto ditope = oracle::tetrahedral_ditope();
    CHECK(check_b1(ditope, {0, 1}));
    CHECK(check_b2(ditope, {0, 1}));
    auto degenerate = oracle::torus(3, 1, 2);
    CHECK_FALSE(check_b1(degenerate, {0, 1}));
    CHECK(check_b1(oracle::torus(3, 1, 3), {0, 1}));
    CHECK(check_b2(oracle::torus(3, 1, 3), {0, 1}));
    CHECK(check_b1(oracle::cube(), {0, 1}));
    CHECK(check_b2(oracle::cube(), {0, 1}));
  }

  TEST_CASE("truncation bipartiteness matches a brute 2-colouring") {
    for (auto [k, s] : std::vector<std::pair<unsigned, int>>{{1, 3}, {1, 4}, {2, 3}, {3, 3}, {3, 2}}) {
      auto t = oracle::torus(3, k, s);
      CHECK(truncation_bipartite(t, {0, 1}) == oracle::brute_bipartite_truncation(t, 0, 1));
    }
    CHECK_FALSE(truncation_bipartite(oracle::hemicube(), {0, 1}));
    CHECK(truncation_bipartite(oracle::cube(), {0, 1}));
  }

  TEST_CASE("P construction on the 3x3x3 torus") {
    auto t = oracle::torus(3, 1, 3);
    auto built = p_construction(t, {0, 1});
    CHECK(built.provenance.construction == "P");
    CHECK(built.geometry.type_counts() == std::vector<std::size_t>{27, 27, 162, 54});
    auto brute = oracle::brute_properties(built.geometry);
    CHECK(brute.geometry);
    CHECK(brute.thin);
    CHECK(brute.residually_connected);
    CHECK(scan_flags(built.geometry).thin);
  }

  TEST_CASE("P construction preconditions") {
    CHECK(precondition_of([] { p_construction(oracle::hemicube(), {0, 1}); }) == Precondition::kB2);
    CHECK(precondition_of([] { p_construction(oracle::torus(3, 1, 4), {0, 1}); }) == Precondition::kBipartite);
    CHECK(precondition_of([] { p_construction(oracle::torus(3, 1, 2), {0, 1}); }) == Precondition::kB1);
  }

  TEST_CASE("BP construction") {
    auto t = oracle::torus(3, 1, 4);
    auto built = bp_construction(t, {0, 1});
    CHECK(built.provenance.construction == "BP");
    CHECK(built.geometry.type_counts() == std::vector<std::size_t>{32, 32, 192, 64});
    auto scan = scan_flags(built.geometry);
    CHECK(scan.geometry);
    CHECK(scan.thin);
    CHECK(scan.residually_connected);
    auto square = bp_construction(oracle::polygon(4), {0, 1});
    CHECK(square.geometry.type_counts() == std::vector<std::size_t>{2, 2});
    CHECK(rank2_parameters(square.geometry).digon());
    CHECK(precondition_of([] { bp_construction(oracle::torus(3, 1, 3), {0, 1}); }) == Precondition::kNotBipartite);
  }

  TEST_CASE("BP side choice") {
    auto t = oracle::torus(3, 1, 4);
    auto a = bp_construction(t, {0, 1});
    ConstructionOptions opts;
    // A vertex adjacent to vertex 0 lies on the other side.
    const ElementId edge = shadow(t, 0, 1)[0];
    const auto ends = shadow(t, edge, 0);
    opts.first_side_vertex = ends[0] == 0 ? ends[1] : ends[0];
    auto b = bp_construction(t, {0, 1}, opts);
    CHECK_FALSE(a.geometry == b.geometry);
    CHECK(isomorphic(a.geometry, b.geometry));
  }

  TEST_CASE("halving geometry dispatch") {
    CHECK(halving_geometry(oracle::torus(3, 1, 3), {0, 1}).provenance.construction == "P");
    CHECK(halving_geometry(oracle::torus(3, 1, 4), {0, 1}).provenance.construction == "BP");
    ConstructionOptions force;
    force.force = true;
    auto hemi = halving_geometry(oracle::hemicube(), {0, 1}, force);
    CHECK(hemi.provenance.construction == "P");
    CHECK(isomorphic_up_to_types(hemi.geometry, oracle::tetrahedron()).has_value());
  }

  TEST_CASE("thinness transfers through both constructions") {
    // A non-thin input: the ditope with a doubled cell is still a geometry.
    auto thick = [] {
      auto t = oracle::tetrahedron();
      std::vector<TypeId> types = t.types();
      std::vector<Incidence> pairs = t.incidence_pairs();
      for (int c = 0; c < 3; ++c) {
        const ElementId cell = static_cast<ElementId>(types.size());
        types.push_back(3);
        for (ElementId x = 0; x < t.size(); ++x) pairs.emplace_back(x, cell);
      }
      return build_geometry(4, types, pairs);
    }();
    CHECK_FALSE(is_thin(thick));
    auto built = halving_geometry(thick, {0, 1});
    CHECK(built.provenance.construction == "P");
    CHECK_FALSE(is_thin(built.geometry));
    auto ditope = halving_geometry(oracle::tetrahedral_ditope(), {0, 1});
    CHECK(is_thin(ditope.geometry));
    CHECK(is_residually_connected(ditope.geometry));
  }

  TEST_CASE("duality correlation") {
    auto built = p_construction(oracle::torus(3, 1, 3), {0, 1});
    auto alpha = duality_correlation(built);
    const auto& g = built.geometry;
    REQUIRE(alpha.size() == g.size());
    for (ElementId x = 0; x < g.size(); ++x) {
      CHECK(alpha[alpha[x]] == x);
      const TypeId t = g.type_of(x);
      const TypeId image = g.type_of(alpha[x]);
      if (t == 0) CHECK(image == 1);
      else if (t == 1) CHECK(image == 0);
      else CHECK(image == t);
    }
    for (const auto& [a, b] : g.incidence_pairs()) CHECK(g.incident(alpha[a], alpha[b]));
    // alpha normalises the induced group.
    auto gamma = build_cubic_toroid({3, 1, 3});
    auto action = induced_action(gamma.coset.geometry, halving_geometry(gamma.coset.geometry, {0, 1}), gamma.coset.action);
    auto hb = halving_geometry(gamma.coset.geometry, {0, 1});
    auto beta = duality_correlation(hb);
    for (const auto& gen : action.generators()) {
      for (const auto& [a, b] : hb.geometry.incidence_pairs()) {
        const ElementId ca = beta[gen[beta[a]]], cb = beta[gen[beta[b]]];
        CHECK(hb.geometry.incident(ca, cb));
        CHECK(hb.geometry.type_of(ca) == hb.geometry.type_of(a));
      }
    }
    auto bp = bp_construction(oracle::torus(3, 1, 4), {0, 1});
    try {
      duality_correlation(bp);
      FAIL("expected NotPConstructed");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::kNotPConstructed);
    }
  }

  TEST_CASE("induced actions are chamber-transitive") {
    for (auto [k, s] : std::vector<std::pair<unsigned, unsigned>>{{1, 3}, {1, 4}, {2, 3}}) {
      auto t = build_cubic_toroid({3, k, s});
      auto h = halving_geometry(t.coset.geometry, {0, 1});
      auto action = induced_action(t.coset.geometry, h, t.coset.action);
      CHECK(chamber_orbit_count(h.geometry, action) == 1);
    }
  }

  TEST_CASE("leaf propagation") {
    auto g = toroid_geometry(3, 1, 3);
    CHECK(b1b2_propagation(g, {0, 1}, {3, 2}));
    auto h = halving_geometry(g, {0, 1});
    CHECK(check_b1(h.geometry, {3, 2}));
    CHECK(check_b2(h.geometry, {3, 2}));
    CHECK(b1b2_propagation(oracle::cube(), {0, 1}, {2, 1}));
    // The s = (2,2,0) toroid loses the leaves at (0,2) and (1,2) after halving.
    auto g22 = toroid_geometry(3, 2, 2);
    auto h22 = halving_geometry(g22, {0, 1});
    const bool leaf02 = check_b1(h22.geometry, {0, 2}) && check_b2(h22.geometry, {0, 2});
    const bool leaf12 = check_b1(h22.geometry, {1, 2}) && check_b2(h22.geometry, {1, 2});
    CHECK_FALSE((leaf02 && leaf12));
    auto g23 = toroid_geometry(3, 2, 3);
    auto h23 = halving_geometry(g23, {0, 1});
    CHECK(check_b1(h23.geometry, {0, 2}));
    CHECK(check_b2(h23.geometry, {0, 2}));
  }

  TEST_CASE("propagation prediction matches the constructed geometry") {
    for (ToroidParams p : {ToroidParams{3, 1, 3}, ToroidParams{3, 3, 3}, ToroidParams{4, 1, 3}}) {
      auto g = toroid_geometry(p.n, p.k, p.s);
      auto h = p_construction(g, {0, 1});
      for (Leaf next : {Leaf{p.n, p.n - 1}, Leaf{p.n - 1, p.n}}) {
        if (!(check_b1(g, next) && check_b2(g, next))) continue;
        const bool direct = check_b1(h.geometry, next) && check_b2(h.geometry, next);
        CHECK(b1b2_propagation(g, {0, 1}, next) == direct);
      }
    }
  }
}
