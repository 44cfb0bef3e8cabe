#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "hyperforge/constructions.hpp"
#include "hyperforge/coset_enumeration.hpp"
#include "hyperforge/diagram.hpp"
#include "hyperforge/geometry.hpp"
#include "hyperforge/presentation.hpp"
#include "hyperforge/toroid.hpp"

namespace hyperforge {

/// Geometry file: {"elements":[{"id","type"}], "incidences":[[a,b]], "rank"}
/// with an optional "provenance" object. Keys sorted, one line per file.
struct GeometryDocument {
  IncidenceGeometry geometry;
  std::optional<Provenance> provenance;
};

std::string geometry_to_json(const IncidenceGeometry& g, const Provenance* provenance = nullptr);
/// Throws InvalidInput on malformed documents and the geometry errors on bad content.
GeometryDocument geometry_from_json(const std::string& text);

std::string presentation_to_json(const GroupPresentation& p);
GroupPresentation presentation_from_json(const std::string& text);

/// Header row of generator indices, then one row per coset.
std::string coset_table_csv(const CosetTable& t);

/// Edges with label 2 are dropped, label 3 is unlabelled, others carry
/// label and penwidth attributes; non-uniform or non-polygon edges are dashed.
std::string diagram_dot(const BuekenhoutDiagram& d, const std::string& name = "diagram");

std::string family_reports_json(const std::vector<FamilyReport>& reports);
std::string family_reports_table(const std::vector<FamilyReport>& reports);

/// Words separated by ';', letters by ',' or whitespace.
std::vector<Word> parse_words(const std::string& text);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& content);

}  // namespace hyperforge
