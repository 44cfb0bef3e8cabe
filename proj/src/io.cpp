#include "hyperforge/io.hpp"

#include <fstream>
#include <iomanip>
#include <sstream>

#include <json.hpp>

#include "hyperforge/error.hpp"

namespace hyperforge {

using nlohmann::json;

namespace {

json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kInvalidInput, std::string("malformed JSON: ") + e.what());
  }
}

template <typename T>
T field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw Error(ErrorCode::kInvalidInput, std::string("missing field ") + key);
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kInvalidInput, std::string("bad field ") + key + ": " + e.what());
  }
}

std::string label_text(const Rank2Parameters& p) {
  auto num = [](std::uint32_t v) { return v == kInfinite ? std::string("inf") : std::to_string(v); };
  if (auto m = p.polygon()) return num(*m);
  return "(" + num(p.gonality) + "," + num(p.point_diameter) + "," + num(p.line_diameter) + ")";
}

}  // namespace

std::string geometry_to_json(const IncidenceGeometry& g, const Provenance* provenance) {
  json doc;
  doc["rank"] = g.rank();
  json elements = json::array();
  for (ElementId x = 0; x < g.size(); ++x) elements.push_back({{"id", x}, {"type", g.type_of(x)}});
  doc["elements"] = std::move(elements);
  json pairs = json::array();
  for (const auto& [a, b] : g.incidence_pairs()) pairs.push_back({a, b});
  doc["incidences"] = std::move(pairs);
  if (provenance) {
    json origin = json::array();
    for (const auto& [base, tag] : provenance->origin) origin.push_back({base, tag});
    doc["provenance"] = {{"construction", provenance->construction},
                         {"leaf", {provenance->leaf.first, provenance->leaf.second}},
                         {"origin", std::move(origin)}};
  }
  return doc.dump() + "\n";
}

GeometryDocument geometry_from_json(const std::string& text) {
  const json doc = parse_json(text);
  const auto rank = field<std::size_t>(doc, "rank");
  if (!doc.contains("elements")) throw Error(ErrorCode::kInvalidInput, "missing field elements");
  const json& elements = doc.at("elements");
  if (!elements.is_array()) throw Error(ErrorCode::kInvalidInput, "elements must be an array");
  std::vector<TypeId> types(elements.size());
  std::vector<bool> seen(elements.size(), false);
  for (const json& e : elements) {
    const auto id = field<std::size_t>(e, "id");
    if (id >= types.size() || seen[id]) throw Error(ErrorCode::kInvalidInput, "element ids must be 0..n-1 without repeats");
    seen[id] = true;
    types[id] = field<TypeId>(e, "type");
  }
  std::vector<Incidence> pairs;
  try {
    if (!doc.contains("incidences")) throw Error(ErrorCode::kInvalidInput, "missing field incidences");
    for (const json& p : doc.at("incidences")) {
      if (!p.is_array() || p.size() != 2) throw Error(ErrorCode::kInvalidInput, "incidence must be a pair");
      pairs.emplace_back(p[0].get<ElementId>(), p[1].get<ElementId>());
    }
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kInvalidInput, std::string("bad incidences: ") + e.what());
  }
  GeometryDocument out;
  out.geometry = build_geometry(rank, std::move(types), std::move(pairs));
  if (doc.contains("provenance")) {
    const json& pj = doc["provenance"];
    Provenance pv;
    pv.construction = field<std::string>(pj, "construction");
    auto leaf = field<std::vector<TypeId>>(pj, "leaf");
    if (leaf.size() != 2) throw Error(ErrorCode::kInvalidInput, "leaf must be a pair");
    pv.leaf = {leaf[0], leaf[1]};
    for (const auto& o : field<std::vector<std::vector<std::uint32_t>>>(pj, "origin")) {
      if (o.size() != 2) throw Error(ErrorCode::kInvalidInput, "origin entries must be pairs");
      pv.origin.emplace_back(o[0], o[1]);
    }
    if (pv.origin.size() != out.geometry.size()) throw Error(ErrorCode::kInvalidInput, "origin size mismatch");
    out.provenance = std::move(pv);
  }
  return out;
}

std::string presentation_to_json(const GroupPresentation& p) {
  json doc;
  doc["ngens"] = p.ngens;
  doc["relators"] = p.relators;
  return doc.dump() + "\n";
}

GroupPresentation presentation_from_json(const std::string& text) {
  const json doc = parse_json(text);
  GroupPresentation p;
  p.ngens = field<std::size_t>(doc, "ngens");
  p.relators = field<std::vector<Word>>(doc, "relators");
  validate(p);
  return p;
}

std::string coset_table_csv(const CosetTable& t) {
  std::ostringstream out;
  for (std::size_t g = 0; g < t.ngens; ++g) out << (g ? "," : "") << g;
  out << '\n';
  for (std::size_t c = 0; c < t.size(); ++c) {
    for (std::size_t g = 0; g < t.ngens; ++g) out << (g ? "," : "") << t.at(c, static_cast<Generator>(g));
    out << '\n';
  }
  return out.str();
}

std::string diagram_dot(const BuekenhoutDiagram& d, const std::string& name) {
  std::ostringstream out;
  out << "graph " << std::quoted(name) << " {\n  node [shape=circle];\n";
  for (std::size_t i = 0; i < d.rank; ++i) out << "  " << i << ";\n";
  for (const DiagramEdge& e : d.edges) {
    if (e.digon()) continue;
    out << "  " << e.i << " -- " << e.j;
    if (!e.uniform()) {
      std::string all;
      for (const auto& [params, count] : e.labels) all += (all.empty() ? "" : " ") + label_text(params) + "x" + std::to_string(count);
      out << " [label=" << std::quoted(all) << ", style=dashed]";
    } else if (auto m = e.label().polygon()) {
      if (*m == 4) {
        out << " [label=\"4\", penwidth=3]";
      } else if (*m != 3) {
        out << " [label=" << std::quoted(label_text(e.label())) << "]";
      }
    } else {
      out << " [label=" << std::quoted(label_text(e.label())) << ", style=dashed]";
    }
    out << ";\n";
  }
  out << "}\n";
  return out.str();
}

std::string family_reports_json(const std::vector<FamilyReport>& reports) {
  json cells = json::array();
  for (const FamilyReport& r : reports) {
    json checks = json::array();
    for (const CheckResult& c : r.checks) checks.push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
    cells.push_back({{"n", r.params.n},
                     {"k", r.params.k},
                     {"s", r.params.s},
                     {"depth", r.depth},
                     {"branches", r.branches},
                     {"passed", r.passed()},
                     {"checks", std::move(checks)}});
  }
  return json{{"cells", std::move(cells)}}.dump(2) + "\n";
}

std::string family_reports_table(const std::vector<FamilyReport>& reports) {
  std::ostringstream out;
  for (const FamilyReport& r : reports) {
    out << r.params.label() << " depth " << r.depth << ": " << (r.passed() ? "PASS" : "FAIL");
    if (!r.branches.empty()) {
      out << " [";
      for (std::size_t i = 0; i < r.branches.size(); ++i) out << (i ? "," : "") << r.branches[i];
      out << "]";
    }
    out << '\n';
    for (const CheckResult& c : r.checks) {
      out << "  " << (c.passed ? "ok   " : "FAIL ") << std::left << std::setw(30) << c.name << c.detail << '\n';
    }
  }
  return out.str();
}

std::vector<Word> parse_words(const std::string& text) {
  std::vector<Word> words;
  std::string part;
  std::istringstream parts(text);
  while (std::getline(parts, part, ';')) {
    for (char& c : part) {
      if (c == ',') c = ' ';
    }
    std::istringstream letters(part);
    Word w;
    std::string tok;
    while (letters >> tok) {
      try {
        std::size_t used = 0;
        const unsigned long v = std::stoul(tok, &used);
        if (used != tok.size()) throw std::invalid_argument(tok);
        w.push_back(static_cast<Generator>(v));
      } catch (const std::exception&) {
        throw Error(ErrorCode::kInvalidInput, "bad generator index '" + tok + "'");
      }
    }
    if (!w.empty()) words.push_back(std::move(w));
  }
  return words;
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kInvalidInput, "cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_text_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kInvalidInput, "cannot write " + path.string());
  out << content;
  if (!out) throw Error(ErrorCode::kInvalidInput, "write failed for " + path.string());
}

}  // namespace hyperforge
