#include "hullkit/io.hpp"

#include <fstream>
#include <sstream>

namespace hullkit {

namespace {

constexpr int kKnotFormatVersion = 1;
constexpr int kReportVersion = 1;

void check_valid(const PolyLink& link, const std::string& context) {
  const Tolerance tol = Tolerance::for_link(link, 1e-9);
  const auto violations = validate(link, tol);
  if (!violations.empty()) {
    std::ostringstream msg;
    msg << context << ": invalid link:";
    for (const auto& v : violations) msg << "\n  " << v.detail;
    throw ValidationError(msg.str());
  }
}

PolyLink parse_flat_text(std::istream& in, const std::string& context) {
  PolyLink link;
  PolyLoop current;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    double x, y, z;
    if (line.find_first_not_of(" \t\r\n") == std::string::npos ||
        line[line.find_first_not_of(" \t")] == '#') {
      if (!current.vertices.empty()) {
        link.loops.push_back(std::move(current));
        current = PolyLoop{};
      }
      continue;
    }
    if (!(ls >> x >> y >> z)) {
      std::ostringstream msg;
      msg << context << ":" << lineno << ": expected three coordinates";
      throw ParseError(msg.str());
    }
    current.vertices.emplace_back(x, y, z);
  }
  if (!current.vertices.empty()) link.loops.push_back(std::move(current));
  check_valid(link, context);
  return link;
}

}  // namespace

PolyLink link_from_json(const Json& j, const std::string& context) {
  if (!j.is_object() || !j.contains("components"))
    throw ParseError(context + ": expected an object with a \"components\" field");
  PolyLink link;
  const auto& comps = j.at("components");
  if (!comps.is_array())
    throw ParseError(context + ": \"components\" must be an array");
  for (size_t ci = 0; ci < comps.size(); ++ci) {
    const auto& comp = comps[ci];
    PolyLoop loop;
    if (!comp.is_array()) {
      std::ostringstream msg;
      msg << context << ": component " << ci << " must be an array of [x,y,z] triples";
      throw ParseError(msg.str());
    }
    for (size_t vi = 0; vi < comp.size(); ++vi) {
      const auto& v = comp[vi];
      if (!v.is_array() || v.size() != 3 || !v[0].is_number() || !v[1].is_number() ||
          !v[2].is_number()) {
        std::ostringstream msg;
        msg << context << ": component " << ci << " vertex " << vi
            << " is not a numeric [x,y,z] triple";
        throw ParseError(msg.str());
      }
      loop.vertices.emplace_back(v[0].get<double>(), v[1].get<double>(), v[2].get<double>());
    }
    link.loops.push_back(std::move(loop));
  }
  if (j.contains("labels")) {
    for (const auto& l : j.at("labels")) link.labels.push_back(l.get<std::string>());
  }
  check_valid(link, context);
  return link;
}

Json link_to_json(const PolyLink& link, const Json& metadata) {
  Json j;
  j["format"] = "hullkit-knot";
  j["version"] = kKnotFormatVersion;
  Json comps = Json::array();
  for (const auto& loop : link.loops) {
    Json c = Json::array();
    for (const auto& v : loop.vertices) c.push_back({v.x(), v.y(), v.z()});
    comps.push_back(std::move(c));
  }
  j["components"] = std::move(comps);
  if (!link.labels.empty()) j["labels"] = link.labels;
  if (!metadata.is_null() && !metadata.empty()) j["metadata"] = metadata;
  return j;
}

PolyLink load_link(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path + ": cannot open file");
  // Peek: JSON starts with '{'; anything else goes to the flat-text importer.
  char first = 0;
  in >> std::ws;
  first = static_cast<char>(in.peek());
  if (first != '{') return parse_flat_text(in, path);
  Json j;
  try {
    in >> j;
  } catch (const Json::parse_error& e) {
    throw ParseError(path + ": " + e.what());
  }
  return link_from_json(j, path);
}

void save_link(const PolyLink& link, const std::string& path, const Json& metadata) {
  write_json(link_to_json(link, metadata), path);
}

void save_fixture(const Fixture& fixture, const std::string& path) {
  Json meta;
  meta["generator"] = fixture.generator;
  meta["samples"] = fixture.samples;
  meta["seed"] = fixture.seed;
  meta["perturbation"] = fixture.perturbation;
  if (fixture.separation > 0) meta["separation"] = fixture.separation;
  save_link(fixture.link, path, meta);
}

void export_mesh(const HullMesh& mesh, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ParseError(path + ": cannot open for writing");
  out << "# hullkit hull boundary, level " << mesh.level << "\n";
  out << "# " << mesh.vertices.size() << " vertices, " << mesh.quads.size()
      << " faces\n";
  out.precision(17);
  for (const auto& v : mesh.vertices)
    out << "v " << v.x() << " " << v.y() << " " << v.z() << "\n";
  const int nv = static_cast<int>(mesh.vertices.size());
  for (const auto& q : mesh.quads) {
    for (int idx : q) {
      if (idx < 0 || idx >= nv)
        throw ValidationError(path + ": face index out of range on write");
    }
    out << "f " << q[0] + 1 << " " << q[1] + 1 << " " << q[2] + 1 << " "
        << q[3] + 1 << "\n";
  }
  if (!out) throw ParseError(path + ": write failed");
}

Json make_report(const std::string& command, const Tolerance& tol) {
  Json j;
  j["tool"] = "hullkit";
  j["report_version"] = kReportVersion;
  j["command"] = command;
  j["tolerance"]["eps_rel"] = tol.eps_rel;
  j["tolerance"]["eps_abs"] = tol.eps_abs;
  return j;
}

void write_json(const Json& j, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ParseError(path + ": cannot open for writing");
  out << j.dump(2) << "\n";
  if (!out) throw ParseError(path + ": write failed");
}

}  // namespace hullkit
