#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "hyperforge/action.hpp"
#include "hyperforge/diagram.hpp"
#include "hyperforge/error.hpp"
#include "hyperforge/geometry.hpp"
#include "hyperforge/isomorphism.hpp"
#include "oracles.hpp"

using namespace hyperforge;

namespace {

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::kInvalidInput;
}

std::vector<ElementId> sorted(std::vector<ElementId> v) {
  std::sort(v.begin(), v.end());
  return v;
}

IncidenceGeometry shuffled(const IncidenceGeometry& g, unsigned seed) {
  std::vector<ElementId> perm(g.size());
  std::iota(perm.begin(), perm.end(), 0);
  std::mt19937 rng(seed);
  std::shuffle(perm.begin(), perm.end(), rng);
  return relabel_elements(g, perm);
}

}  // namespace

TEST_SUITE("incidence-core") {
  TEST_CASE("build_geometry validates the axioms") {
    auto g = build_geometry(2, {0, 1}, {{0, 1}});
    CHECK(g.size() == 2);
    CHECK(g.rank() == 2);
    CHECK(g.incident(1, 0));
    CHECK(code_of([] { build_geometry(2, {0, 1}, {{0, 0}}); }) == ErrorCode::kSelfIncidence);
    CHECK(code_of([] { build_geometry(2, {0, 0, 1}, {{0, 1}}); }) == ErrorCode::kSameTypeIncidence);
    CHECK(code_of([] { build_geometry(2, {0, 1}, {{0, 5}}); }) == ErrorCode::kUnknownElement);
    CHECK(code_of([] { build_geometry(3, {0, 1}, {{0, 1}}); }) == ErrorCode::kEmptyType);
  }

  TEST_CASE("incidences are symmetrised and deduplicated") {
    auto a = build_geometry(2, {0, 1, 1}, {{0, 1}, {1, 0}, {2, 0}});
    auto b = build_geometry(2, {0, 1, 1}, {{0, 2}, {0, 1}});
    CHECK(a == b);
    CHECK(a.incidence_count() == 2);
  }

  TEST_CASE("cube oracle counts") {
    auto c = oracle::cube();
    CHECK(c.type_counts() == std::vector<std::size_t>{8, 12, 6});
    CHECK(c.incidence_count() == 24 + 24 + 24);
  }

  TEST_CASE("residue of a cube vertex is a triangle") {
    auto c = oracle::cube();
    const ElementId v = c.elements_of_type(0)[0];
    std::vector<ElementId> flag{v};
    auto r = residue(c, flag);
    CHECK(r.geometry.rank() == 2);
    CHECK(r.geometry.type_counts() == std::vector<std::size_t>{3, 3});
    CHECK(r.types == std::vector<TypeId>{1, 2});
    CHECK(sorted(r.elements) == oracle::residue_elements(c, flag));
    CHECK(isomorphic(r.geometry, oracle::polygon(3)));
  }

  TEST_CASE("residue edge cases") {
    auto c = oracle::cube();
    auto whole = residue(c, std::vector<ElementId>{});
    CHECK(whole.geometry == c);
    auto chambers = enumerate_chambers(c);
    auto empty = residue(c, chambers.front());
    CHECK(empty.geometry.rank() == 0);
    CHECK(empty.geometry.size() == 0);
    std::vector<ElementId> not_flag{c.elements_of_type(0)[0], c.elements_of_type(0)[1]};
    CHECK(code_of([&] { residue(c, not_flag); }) == ErrorCode::kNotAFlag);
  }

  TEST_CASE("residue composition law") {
    auto c = oracle::cube();
    for (const auto& chamber : enumerate_chambers(c)) {
      std::vector<ElementId> first{chamber[0]};
      auto r1 = residue(c, first);
      // chamber[2] lives in r1; find its local id.
      auto it = std::find(r1.elements.begin(), r1.elements.end(), chamber[2]);
      REQUIRE(it != r1.elements.end());
      std::vector<ElementId> second{static_cast<ElementId>(it - r1.elements.begin())};
      auto r2 = residue(r1.geometry, second);
      std::vector<ElementId> composed;
      for (ElementId x : r2.elements) composed.push_back(r1.elements[x]);
      std::vector<ElementId> both{chamber[0], chamber[2]};
      CHECK(sorted(composed) == sorted(residue(c, both).elements));
    }
  }

  TEST_CASE("truncation") {
    auto c = oracle::cube();
    std::vector<TypeId> j01{0, 1};
    auto t = truncation(c, j01);
    CHECK(t.geometry.type_counts() == std::vector<std::size_t>{8, 12});
    CHECK(t.geometry.incidence_count() == 24);
    std::vector<TypeId> all{0, 1, 2};
    CHECK(truncation(c, all).geometry == c);
    std::vector<TypeId> one{2};
    auto s = truncation(c, one);
    CHECK(s.geometry.size() == 6);
    CHECK(s.geometry.incidence_count() == 0);
  }

  TEST_CASE("shadows") {
    auto c = oracle::cube();
    CHECK(shadow(c, c.elements_of_type(2)[0], 0).size() == 4);
    CHECK(shadow(c, c.elements_of_type(1)[0], 0).size() == 2);
    const ElementId v = c.elements_of_type(0)[3];
    CHECK(shadow(c, v, 0) == std::vector<ElementId>{v});
    CHECK(code_of([&] { shadow(c, 999, 0); }) == ErrorCode::kUnknownElement);
  }

  TEST_CASE("chambers and the geometry axiom") {
    auto c = oracle::cube();
    auto chambers = enumerate_chambers(c);
    CHECK(chambers.size() == 48);
    CHECK(chambers.size() == oracle::brute_properties(c).chambers);
    CHECK(std::is_sorted(chambers.begin(), chambers.end()));
    CHECK(is_geometry(c));
    // An isolated point makes a maximal flag of size one.
    auto lonely = build_geometry(2, {0, 0, 1}, {{0, 2}});
    CHECK_FALSE(is_geometry(lonely));
    auto discrete = build_geometry(1, {0, 0, 0}, {});
    CHECK(is_geometry(discrete));
    CHECK(enumerate_chambers(discrete).size() == 3);
  }

  TEST_CASE("connectivity, residual connectedness and thinness") {
    auto c = oracle::cube();
    CHECK(is_thin(c));
    CHECK(is_residually_connected(c));
    CHECK(is_thin_by_chambers(c));
    auto two_digons = build_geometry(2, {0, 1, 0, 1}, {{0, 1}, {2, 3}});
    CHECK_FALSE(is_connected(two_digons));
    CHECK_FALSE(is_residually_connected(two_digons));
    auto lonely = build_geometry(2, {0, 0, 1}, {{0, 2}});
    CHECK(code_of([&] { is_thin(lonely); }) == ErrorCode::kNotAGeometry);
  }

  TEST_CASE("square pyramid against the brute-force scan") {
    auto p = oracle::square_pyramid();
    auto brute = oracle::brute_properties(p);
    CHECK(brute.geometry);
    CHECK(is_thin(p) == brute.thin);
    CHECK(is_residually_connected(p) == brute.residually_connected);
    CHECK(is_thin_by_chambers(p) == brute.thin);
    // Every polytope is thin; the apex residue is a 4-gon.
    CHECK(brute.thin);
    std::vector<ElementId> apex{4};
    CHECK(isomorphic(residue(p, apex).geometry, oracle::polygon(4)));
  }

  TEST_CASE("property scans agree with brute force on explicit geometries") {
    for (const auto& g : {oracle::cube(), oracle::tetrahedron(), oracle::hemicube(), oracle::square_pyramid(),
                          oracle::tetrahedral_ditope(), oracle::polygon(5), oracle::torus(3, 1, 2)}) {
      auto brute = oracle::brute_properties(g);
      auto scan = scan_flags(g);
      CHECK(scan.geometry == brute.geometry);
      CHECK(scan.thin == brute.thin);
      CHECK(scan.residually_connected == brute.residually_connected);
      CHECK(enumerate_chambers(g).size() == brute.chambers);
      CHECK(is_thin_by_chambers(g) == brute.thin);
    }
  }

  TEST_CASE("thin-by-chambers cross-check on the 3x3x3 torus") {
    auto t = oracle::torus(3, 1, 3);
    CHECK(t.type_counts() == std::vector<std::size_t>{27, 81, 81, 27});
    CHECK(is_thin(t));
    CHECK(is_thin_by_chambers(t));
    CHECK(enumerate_chambers(t).size() == 1296);
  }

  TEST_CASE("scan limit errors instead of sampling") {
    ScanLimits tiny{10};
    CHECK(code_of([&] { scan_flags(oracle::cube(), tiny); }) == ErrorCode::kSizeLimitExceeded);
  }

  TEST_CASE("automorphism groups") {
    auto tri = oracle::polygon(3);
    CHECK(group_order(automorphism_group(tri)) == 6);
    // Brute force over all 3! x 3! type-preserving bijections.
    std::size_t brute = 0;
    std::vector<ElementId> pts{0, 1, 2}, lines{3, 4, 5};
    do {
      std::vector<ElementId> l2 = lines;
      do {
        bool ok = true;
        for (const auto& [a, b] : tri.incidence_pairs()) {
          auto img = [&](ElementId x) { return x < 3 ? pts[x] : l2[x - 3]; };
          if (!tri.incident(img(a), img(b))) ok = false;
        }
        brute += ok;
      } while (std::next_permutation(l2.begin(), l2.end()));
    } while (std::next_permutation(pts.begin(), pts.end()));
    CHECK(brute == 6);

    auto c = oracle::cube();
    auto aut = automorphism_group(c);
    CHECK(group_order(aut) == 48);
    for (const auto& gen : aut.generators()) {
      for (const auto& [a, b] : c.incidence_pairs()) CHECK(c.incident(gen[a], gen[b]));
      for (ElementId x = 0; x < c.size(); ++x) CHECK(c.type_of(gen[x]) == c.type_of(x));
    }
  }

  TEST_CASE("isomorphism under relabelling") {
    auto c = oracle::cube();
    for (unsigned seed = 1; seed <= 5; ++seed) {
      auto s = shuffled(c, seed);
      auto map = find_isomorphism(c, s);
      REQUIRE(map.has_value());
      for (const auto& [a, b] : c.incidence_pairs()) CHECK(s.incident((*map)[a], (*map)[b]));
    }
    CHECK_FALSE(isomorphic(c, oracle::hemicube()));
    CHECK_FALSE(isomorphic(oracle::polygon(4), oracle::polygon(5)));
    CHECK(isomorphic(oracle::torus(3, 1, 3), shuffled(oracle::torus(3, 1, 3), 9)));
  }

  TEST_CASE("isomorphism up to types") {
    auto tet = oracle::tetrahedron();
    auto perm = isomorphic_up_to_types(dual(tet), tet);
    REQUIRE(perm.has_value());
    CHECK_FALSE(isomorphic_up_to_types(oracle::cube(), oracle::tetrahedron()).has_value());
  }

  TEST_CASE("flag-transitivity") {
    auto c = oracle::cube();
    auto aut = automorphism_group(c);
    CHECK(is_flag_transitive(c, aut));
    CHECK(is_flag_transitive(c));
    PermGroup trivial(c.size(), {Permutation::identity(c.size())});
    CHECK_FALSE(is_flag_transitive(c, trivial));
    CHECK(chamber_orbit_count(c, trivial) == 48);
    // A non-automorphism is rejected.
    std::vector<Point> swap(c.size());
    std::iota(swap.begin(), swap.end(), 0);
    std::swap(swap[0], swap[8]);
    PermGroup bad(c.size(), {Permutation(swap)});
    CHECK(code_of([&] { is_flag_transitive(c, bad); }) == ErrorCode::kNotAnAction);
    CHECK_FALSE(is_flag_transitive(oracle::square_pyramid()));
  }

  TEST_CASE("flag-transitivity is invariant under relabelling") {
    for (const auto& g : {oracle::cube(), oracle::square_pyramid(), oracle::hemicube()}) {
      CHECK(is_flag_transitive(g) == is_flag_transitive(shuffled(g, 4)));
    }
  }

  TEST_CASE("buekenhout diagram of the cube") {
    auto d = buekenhout_diagram(oracle::cube());
    CHECK(d.uniform());
    CHECK(d.edge(0, 1).label() == Rank2Parameters{4, 4, 4});
    CHECK(d.edge(1, 2).label() == Rank2Parameters{3, 3, 3});
    CHECK(d.edge(0, 2).digon());
  }

  TEST_CASE("generalised digon and polygons") {
    auto digon = build_geometry(2, {0, 0, 1, 1}, {{0, 2}, {0, 3}, {1, 2}, {1, 3}});
    CHECK(rank2_parameters(digon).digon());
    for (unsigned m = 3; m <= 7; ++m) {
      auto p = rank2_parameters(oracle::polygon(m));
      CHECK(p == Rank2Parameters{m, m, m});
      CHECK(p.gonality == oracle::incidence_gonality(oracle::polygon(m)));
    }
  }

  TEST_CASE("diagram of the 3x3x3 torus is 4-3-4") {
    auto d = buekenhout_diagram(oracle::torus(3, 1, 3));
    CHECK(*d.edge(0, 1).label().polygon() == 4);
    CHECK(*d.edge(1, 2).label().polygon() == 3);
    CHECK(*d.edge(2, 3).label().polygon() == 4);
    CHECK(d.edge(0, 2).digon());
    CHECK(d.edge(0, 3).digon());
    CHECK(d.edge(1, 3).digon());
  }

  TEST_CASE("non-uniform labels are reported") {
    auto d = buekenhout_diagram(oracle::square_pyramid());
    CHECK_FALSE(d.edge(0, 1).uniform());
    CHECK(d.edge(0, 1).labels.size() == 2);
    CHECK(code_of([&] { (void)d.edge(0, 1).label(); }) == ErrorCode::kPropertyViolation);
  }

  TEST_CASE("rank-2 parameters satisfy gonality <= diameters on random geometries") {
    std::mt19937 rng(7);
    for (int trial = 0; trial < 200; ++trial) {
      const unsigned np = 2 + rng() % 5, nl = 2 + rng() % 5;
      std::vector<TypeId> types(np, 0);
      types.resize(np + nl, 1);
      std::vector<Incidence> pairs;
      for (unsigned a = 0; a < np; ++a) {
        for (unsigned b = 0; b < nl; ++b) {
          if (rng() % 2) pairs.emplace_back(a, np + b);
        }
      }
      for (unsigned a = 0; a < np; ++a) pairs.emplace_back(a, np + a % nl);
      for (unsigned b = 0; b < nl; ++b) pairs.emplace_back(b % np, np + b);
      auto g = build_geometry(2, types, pairs);
      if (!is_connected(g)) continue;
      auto p = rank2_parameters(g);
      CHECK(p.gonality == oracle::incidence_gonality(g));
      if (p.gonality == kInfinite) continue;  // trees
      CHECK(p.gonality <= p.point_diameter);
      CHECK(p.gonality <= p.line_diameter);
    }
  }

  TEST_CASE("dual and type permutations") {
    auto c = oracle::cube();
    auto d = dual(c);
    CHECK(d.type_counts() == std::vector<std::size_t>{6, 12, 8});
    CHECK(dual(d) == c);
    std::vector<TypeId> swap{1, 0, 2};
    CHECK(permute_types(c, swap).type_counts() == std::vector<std::size_t>{12, 8, 6});
  }
}
