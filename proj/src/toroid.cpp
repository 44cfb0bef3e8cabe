#include "hyperforge/toroid.hpp"

#include <algorithm>
#include <future>
#include <numeric>
#include <optional>
#include <thread>

#include "hyperforge/action.hpp"
#include "hyperforge/constructions.hpp"
#include "hyperforge/diagram.hpp"
#include "hyperforge/error.hpp"
#include "hyperforge/isomorphism.hpp"

namespace hyperforge {

namespace {

// rho_a rho_(a+1) ... rho_b; empty when a > b.
Word ascending(unsigned a, unsigned b) {
  Word w;
  for (unsigned i = a; i <= b && a <= b; ++i) w.push_back(i);
  return w;
}

// rho_a rho_(a-1) ... rho_b; empty when a < b.
Word descending(unsigned a, unsigned b) {
  Word w;
  if (a < b) return w;
  for (unsigned i = a + 1; i-- > b;) w.push_back(i);
  return w;
}

std::uint64_t ipow(std::uint64_t b, unsigned e) {
  std::uint64_t r = 1;
  while (e--) r *= b;
  return r;
}

GroupPresentation with_extra(const CoxeterMatrix& m, Word extra, std::size_t exponent) {
  GroupPresentation p = coxeter_presentation(m);
  p.relators.push_back(power(extra, exponent));
  return p;
}

}  // namespace

std::string ToroidParams::label() const {
  return "(" + std::to_string(n) + "," + std::to_string(k) + "," + std::to_string(s) + ")";
}

void validate(const ToroidParams& p) {
  if (p.n < 3) throw Error(ErrorCode::kInvalidParams, "n must be at least 3");
  if (p.s < 2) throw Error(ErrorCode::kInvalidParams, "s must be at least 2");
  if (p.k != 1 && p.k != 2 && p.k != p.n) throw Error(ErrorCode::kInvalidParams, "k must be 1, 2 or n");
}

std::uint64_t toroid_vertex_count(const ToroidParams& p) {
  validate(p);
  const std::uint64_t base = ipow(p.s, p.n);
  if (p.k == 1) return base;
  if (p.k == 2) return 2 * base;
  return ipow(2, p.n - 1) * base;
}

std::uint64_t toroid_group_order(const ToroidParams& p) {
  std::uint64_t fact = 1;
  for (unsigned i = 2; i <= p.n; ++i) fact *= i;
  return ipow(2, p.n) * fact * toroid_vertex_count(p);
}

CoxeterMatrix halved_coxeter_matrix(const CoxeterMatrix& m, std::size_t i, std::size_t j) {
  for (std::size_t k = 0; k < m.size(); ++k) {
    if (k != i && k != j && m(i, k) != 2) {
      throw Error(ErrorCode::kUnsupportedCase, "halving needs a leaf node");
    }
  }
  CoxeterMatrix out = m;
  const std::uint32_t mij = m(i, j);
  out.set(i, j, mij % 2 == 0 ? mij / 2 : mij);
  for (std::size_t k = 0; k < m.size(); ++k) {
    if (k != i && k != j) out.set(i, k, m(j, k));
  }
  return out;
}

CoxeterMatrix toroid_coxeter_matrix(unsigned n, unsigned depth) {
  std::vector<std::uint32_t> labels(n, 3);
  labels.front() = 4;
  labels.back() = 4;
  CoxeterMatrix m = CoxeterMatrix::string(labels);
  if (depth >= 1) m = halved_coxeter_matrix(m, 0, 1);
  if (depth >= 2) m = halved_coxeter_matrix(m, n, n - 1);
  if (depth > 2) throw Error(ErrorCode::kUnsupportedCase, "depth above 2");
  return m;
}

GroupPresentation cubic_toroid_presentation(const ToroidParams& p) {
  validate(p);
  Word w = concat({ascending(0, p.n), descending(p.n - 1, p.k)});
  return with_extra(toroid_coxeter_matrix(p.n, 0), w, std::size_t{p.k} * p.s);
}

bool predict_truncation_bipartite(const ToroidParams& p) {
  validate(p);
  return !(p.k % 2 == 1 && p.s % 2 == 1);
}

bool predict_degenerate_leaf(const ToroidParams& p) {
  validate(p);
  return p.k == 1 && p.s == 2;
}

bool double_halving_supported(const ToroidParams& p) {
  validate(p);
  return !((p.k == 1 || p.k == 2) && p.s == 2);
}

GroupPresentation halved_presentation(const ToroidParams& p) {
  validate(p);
  if (predict_degenerate_leaf(p)) throw Error(ErrorCode::kUnsupportedCase, "degenerate leaf");
  const unsigned n = p.n, k = p.k, s = p.s;
  const CoxeterMatrix m = toroid_coxeter_matrix(n, 1);
  const Word k1 = concat({Word{0}, ascending(2, n), descending(n - 1, 2), Word{1}});
  if (!predict_truncation_bipartite(p)) {
    if (k == 1) return with_extra(m, k1, 2 * s);
    return with_extra(m, concat({Word{0}, ascending(2, n), Word{1}, ascending(2, n)}), std::size_t{n} * s);
  }
  if (k == 1) return with_extra(m, k1, s);
  const Word tail = concat({ascending(2, n), descending(n - 1, k)});
  return with_extra(m, concat({Word{0}, tail, Word{1}, tail}), std::size_t{k} * s / 2);
}

GroupPresentation double_halved_presentation(const ToroidParams& p) {
  validate(p);
  if (!double_halving_supported(p)) throw Error(ErrorCode::kUnsupportedCase, "excluded parameters");
  const unsigned n = p.n, k = p.k, s = p.s;
  const CoxeterMatrix m = toroid_coxeter_matrix(n, 2);
  const std::size_t k1_exp = s % 2 == 1 ? 2 * s : s;
  if (n == 3) {
    if (k == 1) return with_extra(m, {0, 2, 3, 1}, k1_exp);
    if (k == 2) return with_extra(m, {0, 2, 1, 3, 1, 2}, s);
    return with_extra(m, {0, 2, 1, 3}, s % 2 == 1 ? 3 * s : 3 * s / 2);
  }
  if (n == 4) {
    if (k == 1) return with_extra(m, {0, 2, 3, 4, 2, 1}, k1_exp);
    if (k == 2) return with_extra(m, {0, 2, 3, 4, 2, 1, 2, 3, 4, 2}, s);
    return with_extra(m, {0, 2, 3, 1, 2, 4}, 4 * s / 2);
  }
  const Word up = ascending(2, n - 1);  // rho2 ... rho(n-1)
  if (k == 1) return with_extra(m, concat({Word{0}, up, Word{n}, descending(n - 2, 2), Word{1}}), k1_exp);
  if (k == 2) {
    const Word half = concat({up, Word{n}, descending(n - 2, 2)});
    return with_extra(m, concat({Word{0}, half, Word{1}, half}), s);
  }
  const Word w = concat({Word{0}, ascending(2, n - 2), Word{n - 1, 1}, ascending(2, n - 2), Word{n}});
  const bool both_odd = n % 2 == 1 && s % 2 == 1;
  return with_extra(m, w, both_odd ? std::size_t{n} * s : std::size_t{n} * s / 2);
}

CubicToroid build_cubic_toroid(const ToroidParams& p, const ToroidBuildOptions& opts) {
  validate(p);
  CubicToroid t;
  t.params = p;
  t.presentation = cubic_toroid_presentation(p);
  CosetTable table = todd_coxeter(t.presentation, {}, opts.max_cosets);
  t.group = perm_image(table);
  t.coset = coset_geometry(t.group);
  if (opts.verify) {
    FlagScan scan = scan_flags(t.coset.geometry, opts.limits);
    if (!scan.geometry || !scan.thin || !scan.residually_connected) {
      throw Error(ErrorCode::kPropertyViolation, "toroid " + p.label() + " is not a thin residually connected geometry");
    }
    if (!is_flag_transitive(t.coset.geometry, t.coset.action, opts.limits)) {
      throw Error(ErrorCode::kPropertyViolation, "toroid " + p.label() + " is not flag-transitive");
    }
    if (!intersection_property(t.group)) {
      throw Error(ErrorCode::kPropertyViolation, "toroid " + p.label() + " group fails the intersection property");
    }
  }
  return t;
}

bool FamilyReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

namespace {

std::string diagram_mismatch(const BuekenhoutDiagram& d, const CoxeterMatrix& m) {
  if (d.rank != m.size()) return "rank differs";
  std::string out;
  for (const auto& e : d.edges) {
    const std::uint32_t want = m(e.i, e.j);
    std::optional<std::uint32_t> got;
    if (e.uniform() && e.label().polygon()) got = *e.label().polygon();
    if (!got || *got != want) {
      out += "{" + std::to_string(e.i) + "," + std::to_string(e.j) + "} expected " + std::to_string(want) +
             (e.uniform() ? "" : " (non-uniform)") + "; ";
    }
  }
  return out;
}

class Recorder {
 public:
  explicit Recorder(FamilyReport& r) : r_(r) {}
  bool check(const std::string& name, bool ok, const std::string& detail = {}) {
    r_.checks.push_back({name, ok, detail});
    return ok;
  }
  template <typename F>
  bool guarded(const std::string& name, F&& f) {
    try {
      std::string detail;
      bool ok = f(detail);
      return check(name, ok, detail);
    } catch (const std::exception& e) {
      return check(name, false, e.what());
    }
  }

 private:
  FamilyReport& r_;
};

struct Stage {
  IncidenceGeometry geometry;
  PermGroup action;  // automorphisms of `geometry` used for flag-transitivity
  PermGroup group;   // C-group whose coset geometry should match
};

void hypertope_checks(Recorder& rec, const std::string& prefix, const Stage& st, const FamilyOptions& opts) {
  rec.guarded(prefix + ".hypertope", [&](std::string& detail) {
    FlagScan scan = scan_flags(st.geometry, opts.limits);
    bool ft = scan.geometry && chamber_orbit_count(st.geometry, st.action, opts.limits) == 1;
    detail = std::string("geometry=") + (scan.geometry ? "yes" : "no") + " thin=" + (scan.thin ? "yes" : "no") +
             " rc=" + (scan.residually_connected ? "yes" : "no") + " ft=" + (ft ? "yes" : "no");
    return scan.geometry && scan.thin && scan.residually_connected && ft;
  });
}

void presentation_checks(Recorder& rec, const std::string& prefix, const PermGroup& subgroup,
                         const GroupPresentation& pres, const FamilyOptions& opts) {
  rec.guarded(prefix + ".presentation", [&](std::string& detail) {
    PermGroup from_pres = perm_image(todd_coxeter(pres, {}, opts.max_cosets));
    const auto a = group_order(subgroup), b = group_order(from_pres);
    const bool orders = a == b;
    const bool matrices = coxeter_matrix(subgroup) == coxeter_matrix(from_pres);
    const bool gen_iso = orders && generator_isomorphic(subgroup, from_pres);
    const bool geom_iso = orders && isomorphic(coset_geometry(subgroup).geometry, coset_geometry(from_pres).geometry);
    detail = "orders " + std::to_string(a) + "/" + std::to_string(b) + " coxeter=" + (matrices ? "equal" : "differ") +
             " generator-iso=" + (gen_iso ? "yes" : "no") + " coset-iso=" + (geom_iso ? "yes" : "no");
    return orders && matrices && gen_iso && geom_iso;
  });
}

}  // namespace

FamilyReport verify_family(const ToroidParams& p, unsigned depth, const FamilyOptions& opts) {
  validate(p);
  if (depth > 2) throw Error(ErrorCode::kUnsupportedCase, "depth above 2");
  FamilyReport report;
  report.params = p;
  report.depth = depth;
  Recorder rec(report);

  ToroidBuildOptions build_opts;
  build_opts.max_cosets = opts.max_cosets;
  build_opts.verify = false;
  build_opts.limits = opts.limits;
  CubicToroid t = build_cubic_toroid(p, build_opts);
  const IncidenceGeometry& gamma = t.coset.geometry;

  rec.check("toroid.order", group_order(t.group) == toroid_group_order(p),
            std::to_string(group_order(t.group)) + " vs " + std::to_string(toroid_group_order(p)));
  Stage base{gamma, t.coset.action, t.group};
  hypertope_checks(rec, "toroid", base, opts);
  rec.guarded("toroid.intersection_property", [&](std::string&) { return intersection_property(t.group); });
  rec.guarded("toroid.diagram", [&](std::string& d) {
    d = diagram_mismatch(buekenhout_diagram(gamma, opts.limits), toroid_coxeter_matrix(p.n, 0));
    return d.empty() && coxeter_matrix(t.group) == toroid_coxeter_matrix(p.n, 0);
  });
  rec.guarded("toroid.self_dual", [&](std::string&) { return isomorphic(dual(gamma), gamma); });

  const bool predicted = predict_truncation_bipartite(p);
  rec.guarded("toroid.bipartite_law", [&](std::string& d) {
    const bool combinatorial = truncation_bipartite(gamma, {0, 1});
    const bool parity = relator_parity_bipartite(t.presentation, 0);
    const auto index = group_order(t.group) / group_order(halving_group(t.group, {0, 1}));
    d = "predicted=" + std::to_string(predicted) + " truncation=" + std::to_string(combinatorial) +
        " relators=" + std::to_string(parity) + " index=" + std::to_string(index);
    return predicted == combinatorial && predicted == parity && index == (predicted ? 2u : 1u);
  });
  if (depth == 0) return report;

  if (predict_degenerate_leaf(p)) {
    rec.check("leaf.degenerate_b1", !check_b1(gamma, {0, 1}));
    rec.guarded("leaf.degenerate_intersection", [&](std::string&) {
      return !intersection_property(halving_group(t.group, {0, 1}));
    });
    return report;
  }

  rec.guarded("depth1.leaf_conditions", [&](std::string& d) {
    const bool b1 = check_b1(gamma, {0, 1}), b2 = check_b2(gamma, {0, 1});
    const bool ab1 = check_b1_algebraic(t.group, {0, 1});
    const bool ab2 = check_b2_algebraic_sufficient(t.group, {0, 1});
    d = "b1=" + std::to_string(b1) + " b2=" + std::to_string(b2) + " alg-b1=" + std::to_string(ab1) +
        " alg-b2=" + std::to_string(ab2);
    return b1 && b2 && ab1 && ab2;
  });

  ConstructionOptions copts;
  copts.limits = opts.limits;
  ConstructedGeometry h1 = halving_geometry(gamma, {0, 1}, copts);
  report.branches.push_back(h1.provenance.construction);
  rec.check("depth1.branch", h1.provenance.construction == (predicted ? "BP" : "P"), h1.provenance.construction);
  Stage s1{h1.geometry, induced_action(gamma, h1, t.coset.action), halving_group(t.group, {0, 1})};
  hypertope_checks(rec, "depth1", s1, opts);
  rec.guarded("depth1.group", [&](std::string& d) {
    const auto order = group_order(s1.group);
    d = "order " + std::to_string(order);
    return order == group_order(t.group) / (predicted ? 2 : 1) && intersection_property(s1.group);
  });
  rec.guarded("depth1.coset_isomorphism", [&](std::string&) {
    return isomorphic(coset_geometry(s1.group).geometry, s1.geometry);
  });
  rec.guarded("depth1.diagram", [&](std::string& d) {
    d = diagram_mismatch(buekenhout_diagram(s1.geometry, opts.limits), toroid_coxeter_matrix(p.n, 1));
    return d.empty() && coxeter_matrix(s1.group) == toroid_coxeter_matrix(p.n, 1);
  });
  presentation_checks(rec, "depth1", s1.group, halved_presentation(p), opts);
  if (depth == 1) return report;

  const Leaf top{p.n, p.n - 1};
  rec.guarded("depth2.leaf_conditions", [&](std::string& d) {
    const bool b1 = check_b1(s1.geometry, top), b2 = check_b2(s1.geometry, top);
    const bool bip = truncation_bipartite(s1.geometry, top);
    const bool propagated = b1b2_propagation(gamma, {0, 1}, top);
    d = "b1=" + std::to_string(b1) + " b2=" + std::to_string(b2) + " bipartite=" + std::to_string(bip) +
        " propagation=" + std::to_string(propagated);
    return b1 && b2 && bip && propagated;
  });
  ConstructedGeometry h2 = halving_geometry(s1.geometry, top, copts);
  report.branches.push_back(h2.provenance.construction);
  rec.check("depth2.branch", h2.provenance.construction == "BP", h2.provenance.construction);
  Stage s2{h2.geometry, induced_action(s1.geometry, h2, s1.action), halving_group(s1.group, top)};
  hypertope_checks(rec, "depth2", s2, opts);
  rec.guarded("depth2.group", [&](std::string& d) {
    const auto order = group_order(s2.group);
    d = "order " + std::to_string(order);
    return 2 * order == group_order(s1.group) && intersection_property(s2.group);
  });
  rec.guarded("depth2.coset_isomorphism", [&](std::string&) {
    return isomorphic(coset_geometry(s2.group).geometry, s2.geometry);
  });
  rec.guarded("depth2.diagram", [&](std::string& d) {
    d = diagram_mismatch(buekenhout_diagram(s2.geometry, opts.limits), toroid_coxeter_matrix(p.n, 2));
    return d.empty() && coxeter_matrix(s2.group) == toroid_coxeter_matrix(p.n, 2);
  });
  rec.guarded("depth2.duality", [&](std::string&) {
    ConstructedGeometry other = halving_geometry(gamma, top, copts);
    return isomorphic(dual(other.geometry), s1.geometry);
  });
  if (double_halving_supported(p)) {
    presentation_checks(rec, "depth2", s2.group, double_halved_presentation(p), opts);
  } else {
    rec.check("depth2.presentation", true, "skipped: excluded parameters");
  }
  return report;
}

std::vector<FamilyReport> verify_families(const std::vector<ToroidParams>& cells, unsigned depth,
                                          const FamilyOptions& opts) {
  const std::size_t workers = std::max(1u, std::thread::hardware_concurrency());
  std::vector<FamilyReport> out(cells.size());
  for (std::size_t start = 0; start < cells.size(); start += workers) {
    std::vector<std::future<FamilyReport>> batch;
    for (std::size_t i = start; i < std::min(cells.size(), start + workers); ++i) {
      batch.push_back(std::async(std::launch::async, [&, i] { return verify_family(cells[i], depth, opts); }));
    }
    for (std::size_t i = 0; i < batch.size(); ++i) out[start + i] = batch[i].get();
  }
  return out;
}

}  // namespace hyperforge
