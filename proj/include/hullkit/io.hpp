#pragma once

#include <string>

#include <json.hpp>

#include "hullkit/fixtures.hpp"
#include "hullkit/hull.hpp"
#include "hullkit/types.hpp"

namespace hullkit {

using Json = nlohmann::json;

// Knot file: JSON object with a "components" array of [x,y,z] triple lists,
// optional "labels", optional free-form "metadata". A flat text importer
// (one "x y z" per line, blank line between components) is also accepted.

PolyLink load_link(const std::string& path);
void save_link(const PolyLink& link, const std::string& path, const Json& metadata = {});
void save_fixture(const Fixture& fixture, const std::string& path);

PolyLink link_from_json(const Json& j, const std::string& context = "<json>");
Json link_to_json(const PolyLink& link, const Json& metadata = {});

/// Wavefront OBJ quads. An empty mesh writes a valid file with a comment
/// header and no faces. Face indices are checked against the vertex count.
void export_mesh(const HullMesh& mesh, const std::string& path);

/// Report envelope shared by all CLI commands: alphabetical keys, seeds on
/// every stochastic result, tolerances always present. Serialization is
/// byte-stable for fixed inputs.
Json make_report(const std::string& command, const Tolerance& tol);

void write_json(const Json& j, const std::string& path);

}  // namespace hullkit
