// hullkit command line: hull membership, extraction, curvature, bridge,
// quadrisecants, surgery and property suites over polygonal links.

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include "hullkit/curvature.hpp"
#include "hullkit/fixtures.hpp"
#include "hullkit/hull.hpp"
#include "hullkit/io.hpp"
#include "hullkit/plane_cut.hpp"
#include "hullkit/projection.hpp"
#include "hullkit/secants.hpp"
#include "hullkit/surgery.hpp"
#include "hullkit/verify.hpp"

namespace {

using namespace hullkit;

constexpr int kExitOk = 0;
constexpr int kExitValidation = 2;
constexpr int kExitDegenerate = 3;
constexpr int kExitBudget = 4;

struct CommonOpts {
  std::string in_path;
  std::string out_path;
  std::string format = "json";
  double eps_rel = 1e-9;
  std::uint64_t seed = 7;
  int samples = 0;
  int level = 2;
  std::string grid = "32";
  bool timings = false;
};

std::vector<double> parse_numbers(const std::string& s, size_t count,
                                  const std::string& what) {
  std::vector<double> vals;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      vals.push_back(std::stod(item));
    } catch (...) {
      throw ValidationError("malformed " + what + ": '" + s + "'");
    }
  }
  if (vals.size() != count)
    throw ValidationError("malformed " + what + ": expected " +
                          std::to_string(count) + " comma-separated numbers");
  return vals;
}

Vec3 parse_vec3(const std::string& s, const std::string& what) {
  const auto v = parse_numbers(s, 3, what);
  return Vec3(v[0], v[1], v[2]);
}

Plane parse_plane(const std::string& s) {
  const auto v = parse_numbers(s, 4, "plane");
  try {
    return Plane::from_normal_offset(Vec3(v[0], v[1], v[2]), v[3]);
  } catch (const std::invalid_argument& e) {
    throw ValidationError(std::string("malformed plane: ") + e.what());
  }
}

Eigen::Vector3i parse_grid(const std::string& s) {
  std::stringstream ss(s);
  std::string item;
  std::vector<int> vals;
  while (std::getline(ss, item, ',')) {
    try {
      vals.push_back(std::stoi(item));
    } catch (...) {
      throw ValidationError("malformed grid: '" + s + "'");
    }
  }
  if (vals.size() == 1) return Eigen::Vector3i::Constant(vals[0]);
  if (vals.size() == 3) return Eigen::Vector3i(vals[0], vals[1], vals[2]);
  throw ValidationError("malformed grid: expected one or three integers");
}

void flatten(const Json& j, const std::string& prefix, std::ostream& os) {
  if (j.is_object()) {
    for (const auto& [k, v] : j.items())
      flatten(v, prefix.empty() ? k : prefix + "." + k, os);
  } else if (j.is_array() && j.size() > 8) {
    os << prefix << " = [" << j.size() << " entries]\n";
  } else {
    os << prefix << " = " << j.dump() << "\n";
  }
}

void emit(const Json& report, const CommonOpts& opts) {
  if (opts.format == "text") {
    std::ostringstream os;
    flatten(report, "", os);
    if (!opts.out_path.empty()) {
      std::ofstream f(opts.out_path);
      f << os.str();
    } else {
      std::cout << os.str();
    }
    return;
  }
  if (!opts.out_path.empty())
    write_json(report, opts.out_path);
  else
    std::cout << report.dump(2) << "\n";
}

Json plane_json(const Plane& p) {
  return Json{{"normal", {p.normal.x(), p.normal.y(), p.normal.z()}},
              {"offset", p.offset}};
}

Json vec_json(const Vec3& v) { return Json{v.x(), v.y(), v.z()}; }

void add_common(CLI::App* cmd, CommonOpts& opts, bool needs_in = true) {
  auto* in = cmd->add_option("--in", opts.in_path, "input knot file");
  if (needs_in) in->required();
  cmd->add_option("--out", opts.out_path, "output file");
  cmd->add_option("--format", opts.format, "json|text")
      ->check(CLI::IsMember({"json", "text"}));
  cmd->add_option("--eps", opts.eps_rel, "relative tolerance (default 1e-9)");
  cmd->add_option("--seed", opts.seed, "random seed (recorded in reports)");
  cmd->add_option("--samples", opts.samples, "sample count where applicable");
  cmd->add_option("--n", opts.level, "hull level n");
  cmd->add_option("--grid", opts.grid, "grid dims: N or nx,ny,nz");
  cmd->add_flag("--timings", opts.timings, "include wall time in the report");
}

struct Timer {
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
  double ms() const {
    return std::chrono::duration<double, std::milli>(
               std::chrono::steady_clock::now() - start)
        .count();
  }
};

void finish(Json& report, const CommonOpts& opts, const Timer& timer) {
  if (opts.timings) report["timing_ms"] = timer.ms();
  emit(report, opts);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "hullkit: n-th hulls, cut counts and quadrisecants of polygonal links"};
  app.require_subcommand(1);

  CommonOpts opts;
  std::string plane_str, point_str, dir_str, side_str = "above", suite;
  std::string name = "trefoil";
  std::string start_str = "0,0.5", end_str = "1,0.5";
  int loop_index = 0, fixture_n = 64;
  double separation = 6.0;
  long budget = 2'000'000;
  bool refine = false;

  auto* c_validate = app.add_subcommand("validate", "structural checks");
  add_common(c_validate, opts);

  auto* c_count = app.add_subcommand("count", "plane cut count");
  add_common(c_count, opts);
  c_count->add_option("--plane", plane_str, "nx,ny,nz,d")->required();

  auto* c_depth = app.add_subcommand("depth", "exact hull depth of a point");
  add_common(c_depth, opts);
  c_depth->add_option("--point", point_str, "x,y,z")->required();

  auto* c_hull = app.add_subcommand("hull", "extract n-th hull voxels and mesh");
  add_common(c_hull, opts);
  c_hull->add_flag("--refine", refine, "refine boundary cells once");
  c_hull->add_option("--budget", budget, "max exact oracle calls");

  auto* c_hullnum = app.add_subcommand("hullnum", "largest n with nonempty hull");
  add_common(c_hullnum, opts);

  auto* c_curv = app.add_subcommand("curvature", "total curvature per loop");
  add_common(c_curv, opts);

  auto* c_cone = app.add_subcommand("cone", "cone angle from a point");
  add_common(c_cone, opts);
  c_cone->add_option("--point", point_str, "x,y,z")->required();

  auto* c_crofton = app.add_subcommand("crofton", "Monte Carlo cone angle");
  add_common(c_crofton, opts);
  c_crofton->add_option("--point", point_str, "x,y,z")->required();

  auto* c_bridge = app.add_subcommand("bridge", "bridge and superbridge numbers");
  add_common(c_bridge, opts);

  auto* c_quad = app.add_subcommand("quadrisecants", "enumerate quadrisecants");
  add_common(c_quad, opts);

  auto* c_clip = app.add_subcommand("clip", "clip loops to a half-space");
  add_common(c_clip, opts);
  c_clip->add_option("--plane", plane_str, "nx,ny,nz,d")->required();
  c_clip->add_option("--side", side_str, "above|below (half-space side)")
      ->check(CLI::IsMember({"above", "below"}));

  auto* c_chord = app.add_subcommand("chord", "replace a subarc by its chord");
  add_common(c_chord, opts);
  c_chord->add_option("--loop", loop_index, "loop index");
  c_chord->add_option("--start", start_str, "edge,t");
  c_chord->add_option("--end", end_str, "edge,t");

  auto* c_project = app.add_subcommand("project", "orthogonal projection to 2D");
  add_common(c_project, opts);
  c_project->add_option("--direction", dir_str, "x,y,z")->required();

  auto* c_check = app.add_subcommand("check", "run a named property suite");
  add_common(c_check, opts);
  c_check->add_option("--suite", suite, "suite name")->required();

  auto* c_report = app.add_subcommand("report", "summary battery for a link");
  add_common(c_report, opts);

  auto* c_fixture = app.add_subcommand("fixture", "generate a built-in fixture");
  add_common(c_fixture, opts, /*needs_in=*/false);
  c_fixture->add_option("--name", name, "circle|trefoil|hopf|two-circle|composite");
  c_fixture->add_option("--nv", fixture_n, "vertices per loop");
  c_fixture->add_option("--separation", separation, "composite stacking gap");

  CLI11_PARSE(app, argc, argv);

  try {
    Timer timer;
    if (c_fixture->parsed()) {
      const Fixture f = make_fixture(name, fixture_n, separation, opts.seed);
      if (opts.out_path.empty()) throw ValidationError("fixture: --out FILE required");
      save_fixture(f, opts.out_path);
      Json report = make_report("fixture", Tolerance::for_link(f.link, opts.eps_rel));
      report["results"] = {{"generator", f.generator},
                           {"vertices", f.link.total_vertices()},
                           {"loops", f.link.loop_count()},
                           {"seed", f.seed},
                           {"out", opts.out_path}};
      CommonOpts o = opts;
      o.out_path.clear();  // link went to --out, report to stdout
      finish(report, o, timer);
      return kExitOk;
    }

    const PolyLink link = load_link(opts.in_path);
    const Tolerance tol = Tolerance::for_link(link, opts.eps_rel);
    Json report = make_report(app.get_subcommands().front()->get_name(), tol);
    report["input"] = opts.in_path;

    if (c_validate->parsed()) {
      const auto violations = validate(link, tol);
      Json v = Json::array();
      for (const auto& viol : violations) v.push_back(viol.detail);
      report["results"] = {{"violations", v}, {"valid", violations.empty()}};
      finish(report, opts, timer);
      return violations.empty() ? kExitOk : kExitValidation;
    }

    if (c_count->parsed()) {
      const Plane plane = parse_plane(plane_str);
      const CutCount cc = cut_count(link, plane, tol);
      report["results"] = {{"total", cc.total},
                           {"up", cc.up},
                           {"down", cc.down},
                           {"per_loop", cc.per_loop},
                           {"degenerate", cc.degenerate},
                           {"plane", plane_json(plane)}};
      finish(report, opts, timer);
      return kExitOk;
    }

    if (c_depth->parsed()) {
      const Vec3 p = parse_vec3(point_str, "point");
      const HullQuery q = min_cut_exact(p, link, tol);
      report["results"] = {{"point", vec_json(p)},
                           {"min_count", q.min_count},
                           {"depth", q.depth()},
                           {"method", "exact"},
                           {"witness", plane_json(q.witness)}};
      finish(report, opts, timer);
      return kExitOk;
    }

    if (c_hull->parsed()) {
      ExtractOptions eopt;
      eopt.budget = budget;
      eopt.refine = refine;
      const GridSpec grid = GridSpec::cover(link, parse_grid(opts.grid));
      const auto res = extract_hull(link, opts.level, grid, eopt, tol);
      if (!opts.out_path.empty()) export_mesh(res.mesh, opts.out_path);
      report["results"] = {{"level", opts.level},
                           {"cells_in_set", res.voxels.count_in_set(opts.level)},
                           {"exact_queries", res.voxels.exact_queries},
                           {"budget_exhausted", res.voxels.budget_exhausted},
                           {"mesh_vertices", res.mesh.vertices.size()},
                           {"mesh_faces", res.mesh.quads.size()},
                           {"grid", {grid.dims.x(), grid.dims.y(), grid.dims.z()}},
                           {"spacing", res.voxels.grid.spacing},
                           {"mesh_out", opts.out_path}};
      CommonOpts o = opts;
      o.out_path.clear();
      finish(report, o, timer);
      return res.voxels.budget_exhausted ? kExitBudget : kExitOk;
    }

    if (c_hullnum->parsed()) {
      const GridSpec grid = GridSpec::cover(link, parse_grid(opts.grid));
      const int hn = hull_number(link, grid, tol);
      report["results"] = {{"hull_number", hn},
                           {"grid", {grid.dims.x(), grid.dims.y(), grid.dims.z()}}};
      finish(report, opts, timer);
      return kExitOk;
    }

    if (c_curv->parsed()) {
      Json per = Json::array();
      for (const auto& loop : link.loops) per.push_back(total_curvature(loop));
      report["results"] = {{"per_loop", per}, {"total", total_curvature(link)}};
      finish(report, opts, timer);
      return kExitOk;
    }

    if (c_cone->parsed()) {
      const Vec3 p = parse_vec3(point_str, "point");
      const ConeAngle ca = cone_angle(p, link, tol);
      report["results"] = {{"apex", vec_json(p)}, {"angle", ca.angle}};
      finish(report, opts, timer);
      return kExitOk;
    }

    if (c_crofton->parsed()) {
      const Vec3 p = parse_vec3(point_str, "point");
      const int n = opts.samples > 0 ? opts.samples : 100000;
      const double est = crofton_estimate(p, link, n, opts.seed, tol);
      report["results"] = {{"apex", vec_json(p)},
                           {"estimate", est},
                           {"samples", n},
                           {"seed", opts.seed},
                           {"cone_angle", cone_angle(p, link, tol).angle}};
      finish(report, opts, timer);
      return kExitOk;
    }

    if (c_bridge->parsed()) {
      const BridgeResult br = bridge_superbridge(link, tol);
      report["results"] = {{"bridge", br.bridge},
                           {"superbridge", br.superbridge},
                           {"witness_min", vec_json(br.witness_min)},
                           {"witness_max", vec_json(br.witness_max)}};
      finish(report, opts, timer);
      return kExitOk;
    }

    if (c_quad->parsed()) {
      const auto qs = quadrisecants(link, tol);
      Json records = Json::array();
      for (const auto& q : qs.quads) {
        Json hits = Json::array();
        for (const auto& h : q.hits)
          hits.push_back({{"loop", h.loop_index},
                          {"edge", h.edge_index},
                          {"edge_param", h.edge_param},
                          {"knot_param", h.knot_param},
                          {"line_param", h.line_param},
                          {"point", vec_json(h.point)}});
        records.push_back({{"pattern", q.pattern},
                           {"alternating", q.alternating},
                           {"multi_component", q.multi_component},
                           {"direction", vec_json(q.line.direction)},
                           {"point", vec_json(q.line.point)},
                           {"hits", hits}});
      }
      report["results"] = {{"quadrisecants", records},
                           {"count", qs.quads.size()},
                           {"unstable", qs.unstable.size()},
                           {"higher_order", qs.higher.size()},
                           {"degenerate_quadruples", qs.degenerate_quadruples}};
      finish(report, opts, timer);
      return kExitOk;
    }

    if (c_clip->parsed()) {
      const Halfspace H{parse_plane(plane_str),
                        side_str == "above" ? Side::above : Side::below};
      PolyLink clipped = link;
      for (auto& loop : clipped.loops) loop = clip_to_halfspace(loop, H, tol);
      if (!opts.out_path.empty()) save_link(clipped, opts.out_path);
      report["results"] = {{"vertices_before", link.total_vertices()},
                           {"vertices_after", clipped.total_vertices()},
                           {"out", opts.out_path}};
      CommonOpts o = opts;
      o.out_path.clear();
      finish(report, o, timer);
      return kExitOk;
    }

    if (c_chord->parsed()) {
      const auto s = parse_numbers(start_str, 2, "start locus");
      const auto e = parse_numbers(end_str, 2, "end locus");
      ArcSpec arc;
      arc.loop_index = loop_index;
      arc.start = {static_cast<int>(s[0]), s[1]};
      arc.end = {static_cast<int>(e[0]), e[1]};
      if (loop_index < 0 || loop_index >= link.loop_count())
        throw ValidationError("chord: loop index out of range");
      PolyLink modified = link;
      modified.loops[loop_index] = replace_subarc(link.loops[loop_index], arc, tol);
      if (!opts.out_path.empty()) save_link(modified, opts.out_path);
      report["results"] = {{"vertices_before", link.loops[loop_index].size()},
                           {"vertices_after", modified.loops[loop_index].size()},
                           {"out", opts.out_path}};
      CommonOpts o = opts;
      o.out_path.clear();
      finish(report, o, timer);
      return kExitOk;
    }

    if (c_project->parsed()) {
      const Vec3 dir = parse_vec3(dir_str, "direction");
      const ProjectedLink proj = project(link, dir, tol);
      Json comps = Json::array();
      for (const auto& loop : proj.link2.loops) {
        Json c = Json::array();
        for (const auto& v : loop.vertices) c.push_back({v.x(), v.y()});
        comps.push_back(std::move(c));
      }
      Json collapsed = Json::array();
      for (bool c : proj.collapsed) collapsed.push_back(c);
      report["results"] = {{"direction", vec_json(proj.direction)},
                           {"basis_u", vec_json(proj.basis_u)},
                           {"basis_v", vec_json(proj.basis_v)},
                           {"components2d", comps},
                           {"collapsed", collapsed}};
      finish(report, opts, timer);
      return kExitOk;
    }

    if (c_check->parsed()) {
      CheckParams params;
      params.seed = opts.seed;
      params.samples = opts.samples;
      const SuiteResult r = run_suite(suite, link, params, tol);
      report["results"] = {{"suite", r.suite},       {"passed", r.passed},
                           {"vacuous", r.vacuous},   {"trials", r.trials},
                           {"failures", r.failures}, {"seed", r.seed},
                           {"details", r.details}};
      finish(report, opts, timer);
      return r.passed ? kExitOk : 1;
    }

    if (c_report->parsed()) {
      const auto violations = validate(link, tol);
      Json per = Json::array();
      for (const auto& loop : link.loops) per.push_back(total_curvature(loop));
      const BridgeResult br = bridge_superbridge(link, tol);
      const GridSpec grid = GridSpec::cover(link, parse_grid(opts.grid));
      const int hn = hull_number(link, grid, tol);
      report["results"] = {{"valid", violations.empty()},
                           {"loops", link.loop_count()},
                           {"vertices", link.total_vertices()},
                           {"total_curvature", total_curvature(link)},
                           {"curvature_per_loop", per},
                           {"bridge", br.bridge},
                           {"superbridge", br.superbridge},
                           {"hull_number", hn},
                           {"seed", opts.seed}};
      finish(report, opts, timer);
      return kExitOk;
    }

    std::cerr << "no command handled\n";
    return 1;
  } catch (const ValidationError& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const DegenerateQueryError& e) {
    std::cerr << "degenerate query: " << e.what() << "\n";
    return kExitDegenerate;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
