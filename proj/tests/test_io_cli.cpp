#include <doctest.h>

#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>

#include "hullkit/fixtures.hpp"
#include "hullkit/hull.hpp"
#include "hullkit/io.hpp"
#include "hullkit/verify.hpp"

using namespace hullkit;

namespace {

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / name).string();
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  return std::string(std::istreambuf_iterator<char>(in), {});
}

}  // namespace

TEST_CASE("knot files round trip bit-exactly") {
  const Fixture tre = make_trefoil(64);
  const std::string path = temp_path("hullkit_roundtrip.json");
  save_fixture(tre, path);
  const PolyLink loaded = load_link(path);
  REQUIRE(loaded.loop_count() == 1);
  REQUIRE(loaded.loops[0].size() == 64);
  for (int i = 0; i < 64; ++i)
    for (int a = 0; a < 3; ++a)
      REQUIRE(std::memcmp(&loaded.loops[0].vertices[i][a],
                          &tre.link.loops[0].vertices[i][a], sizeof(double)) == 0);
}

TEST_CASE("labels survive the round trip") {
  const Fixture hop = make_hopf(16);
  const std::string path = temp_path("hullkit_labels.json");
  save_link(hop.link, path);
  const PolyLink loaded = load_link(path);
  REQUIRE(loaded.labels.size() == 2);
  CHECK(loaded.labels[0] == "A");
  CHECK(loaded.labels[1] == "B");
}

TEST_CASE("invalid links are surfaced at load time") {
  const std::string path = temp_path("hullkit_bad.json");
  {
    std::ofstream out(path);
    out << R"({"components": [[[0,0,0],[1,0,0]]]})";
  }
  CHECK_THROWS_AS(load_link(path), ValidationError);

  const std::string garbled = temp_path("hullkit_garbled.json");
  {
    std::ofstream out(garbled);
    out << "{ not json";
  }
  CHECK_THROWS_AS(load_link(garbled), ParseError);
  CHECK_THROWS_AS(load_link(temp_path("hullkit_missing_file.json")), ParseError);
}

TEST_CASE("flat vertex-per-line text imports") {
  const std::string path = temp_path("hullkit_flat.txt");
  {
    std::ofstream out(path);
    out << "# loop one\n0 0 0\n1 0 0\n0.5 1 0\n\n0 0 2\n1 0 2\n0.5 1 2\n";
  }
  const PolyLink link = load_link(path);
  REQUIRE(link.loop_count() == 2);
  CHECK(link.loops[0].size() == 3);
  CHECK(link.loops[1].vertices[2].z() == 2.0);
}

TEST_CASE("mesh export: faces in range, empty meshes still valid files") {
  const Fixture tre = make_trefoil(64);
  const Tolerance tol = Tolerance::for_link(tre.link, 1e-9);
  const auto res = extract_hull(tre.link, 2, GridSpec::cover(tre.link, 16), {}, tol);
  REQUIRE(!res.mesh.quads.empty());
  const std::string path = temp_path("hullkit_h2.obj");
  export_mesh(res.mesh, path);
  const std::string content = slurp(path);
  CHECK(content.find("v ") != std::string::npos);
  CHECK(content.find("f ") != std::string::npos);
  // Parse back the face indices and bound them by the vertex count.
  std::istringstream in(content);
  std::string word;
  long nv = 0;
  std::vector<long> indices;
  while (in >> word) {
    if (word == "v") {
      double x, y, z;
      in >> x >> y >> z;
      ++nv;
    } else if (word == "f") {
      long a, b, c, d;
      in >> a >> b >> c >> d;
      indices.insert(indices.end(), {a, b, c, d});
    }
  }
  CHECK(nv == static_cast<long>(res.mesh.vertices.size()));
  for (long idx : indices) {
    CHECK(idx >= 1);
    CHECK(idx <= nv);
  }

  HullMesh empty;
  empty.level = 2;
  const std::string epath = temp_path("hullkit_empty.obj");
  export_mesh(empty, epath);
  const std::string econtent = slurp(epath);
  CHECK(econtent.find("#") != std::string::npos);
  CHECK(econtent.find("\nf ") == std::string::npos);
}

TEST_CASE("reports serialize deterministically") {
  const Fixture tre = make_trefoil(64);
  const Tolerance tol = Tolerance::for_link(tre.link, 1e-9);
  Json a = make_report("depth", tol);
  a["results"] = {{"min_count", 4}, {"seed", 42}};
  Json b = make_report("depth", tol);
  b["results"] = {{"seed", 42}, {"min_count", 4}};  // insertion order differs
  CHECK(a.dump() == b.dump());
}

TEST_CASE("named check suites pass on the trefoil") {
  const Fixture tre = make_trefoil(64);
  const Tolerance tol = Tolerance::for_link(tre.link, 1e-9);
  CheckParams params;
  params.seed = 7;
  params.grid = 12;

  CheckParams quick = params;
  quick.samples = 500;
  const SuiteResult updown = run_suite("updown", tre.link, quick, tol);
  CHECK(updown.passed);
  CHECK(updown.trials == 500);

  quick.samples = 10;
  const SuiteResult lemma = run_suite("lemma-cut", tre.link, quick, tol);
  CHECK(lemma.passed);
  CHECK(lemma.trials == 10 * 1000);

  const SuiteResult clip = run_suite("clip", tre.link, quick, tol);
  CHECK(clip.passed);

  const SuiteResult gb = run_suite("gauss-bonnet", tre.link, quick, tol);
  CHECK(gb.passed);

  CHECK_THROWS_AS(run_suite("not-a-suite", tre.link, params, tol),
                  std::invalid_argument);
  CHECK(!suite_names().empty());
}

#ifdef HULLKIT_CLI_PATH
TEST_CASE("command line surface: reports, exit codes, clipping") {
  const std::string cli = HULLKIT_CLI_PATH;
  REQUIRE(std::filesystem::exists(cli));
  const std::string knot = temp_path("hullkit_cli_trefoil.json");
  const std::string out = temp_path("hullkit_cli_out.json");

  auto run = [&](const std::string& args) {
    const std::string cmd = cli + " " + args + " > /dev/null 2>&1";
    const int rc = std::system(cmd.c_str());
    return WEXITSTATUS(rc);
  };

  CHECK(run("fixture --name trefoil --nv 64 --out " + knot) == 0);
  CHECK(run("validate --in " + knot) == 0);

  // depth report content
  CHECK(std::system((cli + " depth --in " + knot + " --point 0,0,0 --out " + out +
                     " > /dev/null 2>&1")
                        .c_str()) == 0);
  {
    std::ifstream in(out);
    Json report;
    in >> report;
    CHECK(report["results"]["min_count"] == 4);
    CHECK(report["results"]["depth"] == 2);
    CHECK(report["command"] == "depth");
  }

  // Determinism: two runs, byte-identical reports.
  const std::string out2 = temp_path("hullkit_cli_out2.json");
  CHECK(run("crofton --in " + knot + " --point 0,0,0 --samples 2000 --seed 9 --out " + out) == 0);
  CHECK(run("crofton --in " + knot + " --point 0,0,0 --samples 2000 --seed 9 --out " + out2) == 0);
  CHECK(slurp(out) == slurp(out2));

  // Exit code 2: validation error.
  const std::string bad = temp_path("hullkit_cli_bad.json");
  {
    std::ofstream o(bad);
    o << R"({"components": [[[0,0,0],[1,0,0]]]})";
  }
  CHECK(run("depth --in " + bad + " --point 0,0,0") == 2);
  CHECK(run("count --in " + knot + " --plane 0,0,0,1") == 2);  // null normal

  // Exit code 3: on-link query.
  const PolyLink link = load_link(knot);
  const Vec3 v = link.loops[0].vertices[7];
  char buf[128];
  std::snprintf(buf, sizeof(buf), "depth --in %s --point %.17g,%.17g,%.17g",
                knot.c_str(), v.x(), v.y(), v.z());
  CHECK(run(buf) == 3);

  // Exit code 4: exhausted budget on extraction.
  CHECK(run("hull --in " + knot + " --n 1 --grid 16 --budget 5") == 4);

  // Mesh export through the CLI.
  const std::string mesh = temp_path("hullkit_cli_h2.obj");
  CHECK(run("hull --in " + knot + " --n 2 --grid 16 --out " + mesh) == 0);
  CHECK(slurp(mesh).find("f ") != std::string::npos);

  // Named property suite through the CLI.
  CHECK(run("check --suite updown --in " + knot + " --seed 7 --samples 300") == 0);

  // Clip round trip through files; the plane isolates the top lobe only.
  const std::string clipped = temp_path("hullkit_cli_clipped.json");
  CHECK(run("clip --in " + knot + " --plane 0,0,1,0.998 --side below --out " + clipped) == 0);
  CHECK(load_link(clipped).loop_count() == 1);

  // Flat text import.
  const std::string flat = temp_path("hullkit_cli_flat.txt");
  {
    std::ofstream o(flat);
    o << "0 0 0\n1 0 0\n0.5 1 0\n";
  }
  CHECK(run("curvature --in " + flat) == 0);
}
#endif
