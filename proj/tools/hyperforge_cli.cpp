// Command-line front end: builds, halves, checks and reports incidence geometries.
#include <cstdlib>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hyperforge/action.hpp"
#include "hyperforge/cgroup.hpp"
#include "hyperforge/constructions.hpp"
#include "hyperforge/coset_enumeration.hpp"
#include "hyperforge/diagram.hpp"
#include "hyperforge/error.hpp"
#include "hyperforge/io.hpp"
#include "hyperforge/toroid.hpp"

namespace hf = hyperforge;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitUsage = 2;
constexpr int kExitLimit = 3;

struct Globals {
  std::size_t max_cosets = hf::default_max_cosets();
  std::size_t max_flags = hf::ScanLimits{}.max_flags;
};

void emit(const std::string& path, const std::string& content) {
  if (path.empty() || path == "-") {
    std::cout << content;
  } else {
    hf::write_text_file(path, content);
  }
}

hf::Leaf parse_leaf(const std::vector<unsigned>& v) {
  if (v.size() != 2 || v[0] == v[1]) throw hf::Error(hf::ErrorCode::kInvalidInput, "leaf must be two distinct types i,j");
  return {v[0], v[1]};
}

hf::GeometryDocument load_geometry(const std::string& path) {
  return hf::geometry_from_json(hf::read_text_file(path));
}

// One requested property: name plus optional leaf.
struct PropertyRequest {
  std::string name;
  std::optional<hf::Leaf> leaf;
};

PropertyRequest parse_property(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream in(text);
  std::string part;
  while (std::getline(in, part, ':')) parts.push_back(part);
  if (parts.empty()) throw hf::Error(hf::ErrorCode::kInvalidInput, "empty property");
  PropertyRequest req{parts[0], std::nullopt};
  static const std::vector<std::string> plain{"geometry", "connected", "rc", "thin", "ft"};
  static const std::vector<std::string> leafed{"b1", "b2", "bipartite"};
  const bool is_plain = std::find(plain.begin(), plain.end(), req.name) != plain.end();
  const bool is_leafed = std::find(leafed.begin(), leafed.end(), req.name) != leafed.end();
  if (is_plain && parts.size() == 1) return req;
  if (is_leafed && parts.size() == 3) {
    try {
      req.leaf = hf::Leaf{static_cast<hf::TypeId>(std::stoul(parts[1])), static_cast<hf::TypeId>(std::stoul(parts[2]))};
    } catch (const std::exception&) {
      throw hf::Error(hf::ErrorCode::kInvalidInput, "bad leaf in property '" + text + "'");
    }
    return req;
  }
  throw hf::Error(hf::ErrorCode::kInvalidInput, "unknown property '" + text + "'");
}

int run_check(const hf::IncidenceGeometry& g, const std::vector<std::string>& props, const Globals& globals) {
  hf::ScanLimits limits{globals.max_flags};
  std::vector<PropertyRequest> requests;
  for (const auto& p : props) requests.push_back(parse_property(p));
  bool all = true;
  for (const auto& req : requests) {
    bool ok = false;
    if (req.leaf && (req.leaf->first >= g.rank() || req.leaf->second >= g.rank())) {
      throw hf::Error(hf::ErrorCode::kInvalidInput, "leaf type outside the rank");
    }
    if (req.name == "geometry") ok = hf::is_geometry(g, limits);
    else if (req.name == "connected") ok = hf::is_connected(g);
    else if (req.name == "rc") ok = hf::scan_flags(g, limits).residually_connected && hf::is_geometry(g, limits);
    else if (req.name == "thin") ok = hf::is_thin(g, limits);
    else if (req.name == "ft") ok = hf::is_flag_transitive(g, std::nullopt, limits);
    else if (req.name == "b1") ok = hf::check_b1(g, *req.leaf);
    else if (req.name == "b2") ok = hf::check_b2(g, *req.leaf);
    else if (req.name == "bipartite") ok = hf::check_b1(g, *req.leaf) && hf::truncation_bipartite(g, *req.leaf);
    std::string label = req.name;
    if (req.leaf) label += ":" + std::to_string(req.leaf->first) + ":" + std::to_string(req.leaf->second);
    std::cout << (ok ? "PASS " : "FAIL ") << label << '\n';
    all = all && ok;
  }
  return all ? kExitOk : kExitCheckFailed;
}

std::vector<hf::ToroidParams> expand_cells(const std::vector<unsigned>& ns, const std::vector<std::string>& ks,
                                           const std::vector<unsigned>& ss) {
  std::vector<hf::ToroidParams> cells;
  for (unsigned n : ns) {
    for (const auto& kt : ks) {
      const unsigned k = kt == "n" ? n : static_cast<unsigned>(std::stoul(kt));
      for (unsigned s : ss) cells.push_back({n, k, s});
    }
  }
  return cells;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Incidence geometry toolkit: cubic toroids, halving constructions, coset geometries"};
  app.require_subcommand(1);
  Globals globals;
  app.add_option("--max-cosets", globals.max_cosets, "Coset enumeration limit (default from HYPERFORGE_MAX_COSETS)")
      ->check(CLI::PositiveNumber);
  app.add_option("--max-flags", globals.max_flags, "Flag scan limit")->check(CLI::PositiveNumber);

  // build
  auto* build = app.add_subcommand("build", "Build a geometry");
  build->require_subcommand(1);
  std::string out_path;
  hf::ToroidParams tp;
  bool no_verify = false;
  auto* build_toroid = build->add_subcommand("toroid", "Cubic toroid coset geometry");
  build_toroid->add_option("--n", tp.n, "Dimension n (rank n+1)")->required();
  build_toroid->add_option("--k", tp.k, "Lattice class k in {1,2,n}")->required();
  build_toroid->add_option("--s", tp.s, "Lattice size s")->required();
  build_toroid->add_flag("--no-verify", no_verify, "Skip the hypertope checks");
  build_toroid->add_option("-o,--output", out_path, "Geometry JSON output");
  std::string presentation_path;
  bool skip_ip = false;
  auto* build_coset = build->add_subcommand("coset", "Coset geometry of a group given by a presentation");
  build_coset->add_option("--presentation", presentation_path, "Presentation JSON")->required()->check(CLI::ExistingFile);
  build_coset->add_flag("--skip-intersection", skip_ip, "Do not require the intersection property");
  build_coset->add_option("-o,--output", out_path, "Geometry JSON output");
  std::string in_path;
  auto* build_file = build->add_subcommand("file", "Validate and canonicalise a geometry file");
  build_file->add_option("input", in_path, "Geometry JSON")->required()->check(CLI::ExistingFile);
  build_file->add_option("-o,--output", out_path, "Geometry JSON output");

  // halve
  auto* halve = app.add_subcommand("halve", "Halving geometry at a leaf");
  std::vector<unsigned> leaf_arg;
  bool force = false;
  std::string construction = "auto";
  halve->add_option("input", in_path, "Geometry JSON")->required()->check(CLI::ExistingFile);
  halve->add_option("--leaf", leaf_arg, "Leaf types i,j")->required()->delimiter(',')->expected(2);
  halve->add_flag("--force", force, "Skip the leaf preconditions");
  halve->add_option("--construction", construction, "auto, P or BP")->check(CLI::IsMember({"auto", "P", "BP"}));
  halve->add_option("-o,--output", out_path, "Geometry JSON output");

  // check
  auto* check = app.add_subcommand("check", "Check properties of a geometry");
  std::vector<std::string> props;
  check->add_option("input", in_path, "Geometry JSON")->required()->check(CLI::ExistingFile);
  check->add_option("--props", props, "geometry,connected,rc,thin,ft,b1:i:j,b2:i:j,bipartite:i:j")
      ->required()
      ->delimiter(',');

  // enumerate
  auto* enumerate = app.add_subcommand("enumerate", "Todd-Coxeter coset enumeration");
  std::string subgroup_text;
  enumerate->add_option("--presentation", presentation_path, "Presentation JSON")->required()->check(CLI::ExistingFile);
  enumerate->add_option("--subgroup", subgroup_text, "Subgroup words, ';'-separated, letters by spaces or commas");
  enumerate->add_option("-o,--output", out_path, "Coset table CSV output");

  // diagram
  auto* diagram = app.add_subcommand("diagram", "Buekenhout diagram as DOT");
  diagram->add_option("input", in_path, "Geometry JSON")->required()->check(CLI::ExistingFile);
  diagram->add_option("-o,--output", out_path, "DOT output");

  // verify-family
  auto* family = app.add_subcommand("verify-family", "Verify toroid cells up to a halving depth");
  std::vector<unsigned> ns, ss;
  std::vector<std::string> ks;
  unsigned depth = 0;
  std::string json_path;
  family->add_option("--n", ns, "Values of n")->required()->delimiter(',');
  family->add_option("--k", ks, "Values of k (1, 2, or n)")->required()->delimiter(',');
  family->add_option("--s", ss, "Values of s")->required()->delimiter(',');
  family->add_option("--depth", depth, "Halving depth 0..2")->check(CLI::Range(0u, 2u));
  family->add_option("--json", json_path, "Report JSON output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    hf::ScanLimits limits{globals.max_flags};
    if (*build) {
      if (*build_toroid) {
        hf::ToroidBuildOptions opts;
        opts.max_cosets = globals.max_cosets;
        opts.verify = !no_verify;
        opts.limits = limits;
        auto t = hf::build_cubic_toroid(tp, opts);
        std::cerr << "toroid " << tp.label() << ": order " << hf::group_order(t.group) << ", elements "
                  << t.coset.geometry.size() << '\n';
        emit(out_path, hf::geometry_to_json(t.coset.geometry));
      } else if (*build_coset) {
        auto p = hf::presentation_from_json(hf::read_text_file(presentation_path));
        auto group = hf::perm_image(hf::todd_coxeter(p, {}, globals.max_cosets));
        if (!skip_ip && !hf::intersection_property(group)) {
          std::cerr << "group fails the intersection property\n";
          return kExitCheckFailed;
        }
        emit(out_path, hf::geometry_to_json(hf::coset_geometry(group).geometry));
      } else {
        auto doc = load_geometry(in_path);
        emit(out_path, hf::geometry_to_json(doc.geometry, doc.provenance ? &*doc.provenance : nullptr));
      }
      return kExitOk;
    }
    if (*halve) {
      auto doc = load_geometry(in_path);
      hf::ConstructionOptions opts;
      opts.force = force;
      opts.limits = limits;
      const hf::Leaf leaf = parse_leaf(leaf_arg);
      hf::ConstructedGeometry built = construction == "P"    ? hf::p_construction(doc.geometry, leaf, opts)
                                      : construction == "BP" ? hf::bp_construction(doc.geometry, leaf, opts)
                                                             : hf::halving_geometry(doc.geometry, leaf, opts);
      std::cerr << "construction " << built.provenance.construction << ", elements " << built.geometry.size() << '\n';
      emit(out_path, hf::geometry_to_json(built.geometry, &built.provenance));
      return kExitOk;
    }
    if (*check) {
      return run_check(load_geometry(in_path).geometry, props, globals);
    }
    if (*enumerate) {
      auto p = hf::presentation_from_json(hf::read_text_file(presentation_path));
      auto table = hf::todd_coxeter(p, hf::parse_words(subgroup_text), globals.max_cosets);
      std::cerr << "index " << table.size() << " (" << table.defined_total << " cosets defined)\n";
      if (!out_path.empty()) {
        emit(out_path, hf::coset_table_csv(table));
      } else {
        std::cout << table.size() << '\n';
      }
      return kExitOk;
    }
    if (*diagram) {
      auto doc = load_geometry(in_path);
      emit(out_path, hf::diagram_dot(hf::buekenhout_diagram(doc.geometry, limits)));
      return kExitOk;
    }
    if (*family) {
      hf::FamilyOptions opts;
      opts.max_cosets = globals.max_cosets;
      opts.limits = limits;
      auto cells = expand_cells(ns, ks, ss);
      for (const auto& c : cells) hf::validate(c);
      auto reports = hf::verify_families(cells, depth, opts);
      std::cout << hf::family_reports_table(reports);
      if (!json_path.empty()) emit(json_path, hf::family_reports_json(reports));
      const bool all = std::all_of(reports.begin(), reports.end(), [](const auto& r) { return r.passed(); });
      return all ? kExitOk : kExitCheckFailed;
    }
  } catch (const hf::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    switch (e.code()) {
      case hf::ErrorCode::kOverflow:
      case hf::ErrorCode::kSizeLimitExceeded:
        return kExitLimit;
      case hf::ErrorCode::kPreconditionFailed:
      case hf::ErrorCode::kPropertyViolation:
      case hf::ErrorCode::kNotAGeometry:
        return kExitCheckFailed;
      default:
        return kExitUsage;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}
