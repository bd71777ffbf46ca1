#include "hullkit/verify.hpp"

#include <algorithm>
#include <functional>
#include <map>

#include "hullkit/curvature.hpp"
#include "hullkit/hull.hpp"
#include "hullkit/plane_cut.hpp"
#include "hullkit/projection.hpp"
#include "hullkit/rng.hpp"
#include "hullkit/secants.hpp"
#include "hullkit/surgery.hpp"

namespace hullkit {

namespace {

Plane random_plane(Rng& rng, const Eigen::AlignedBox3d& box) {
  const Vec3 n = rng.unit_vector();
  double lo = n.dot(box.min()), hi = lo;
  for (int c = 1; c < 8; ++c) {
    const double h = n.dot(box.corner(static_cast<Eigen::AlignedBox3d::CornerType>(c)));
    lo = std::min(lo, h);
    hi = std::max(hi, h);
  }
  const double pad = 0.1 * (hi - lo);
  return Plane{n, rng.uniform(lo - pad, hi + pad)};
}

Vec3 random_point(Rng& rng, const Eigen::AlignedBox3d& box) {
  Vec3 p;
  for (int a = 0; a < 3; ++a) p[a] = rng.uniform(box.min()[a], box.max()[a]);
  return p;
}

/// Depth that tolerates landing exactly on the link by nudging the point.
int robust_depth(const detail::HullEngine& engine, Vec3 p, Rng& rng, double nudge) {
  for (int attempt = 0; attempt < 8; ++attempt) {
    try {
      return engine.min_cut_exact(p).depth();
    } catch (const DegenerateQueryError&) {
      p += nudge * rng.unit_vector();
    }
  }
  throw DegenerateQueryError("robust_depth: could not move query off the link");
}

ArcSpec random_arc(Rng& rng, const PolyLoop& loop) {
  ArcSpec arc;
  arc.loop_index = 0;
  arc.start.edge = static_cast<int>(rng.below(loop.size()));
  arc.start.t = rng.uniform(0.05, 0.95);
  arc.end.edge = static_cast<int>(rng.below(loop.size()));
  arc.end.t = rng.uniform(0.05, 0.95);
  return arc;
}

using Runner = std::function<SuiteResult(const PolyLink&, const CheckParams&, const Tolerance&)>;

SuiteResult base(const std::string& name, const CheckParams& p) {
  SuiteResult r;
  r.suite = name;
  r.seed = p.seed;
  return r;
}

SuiteResult run_lemma_cut(const PolyLink& link, const CheckParams& p, const Tolerance& tol) {
  SuiteResult r = base("lemma-cut", p);
  const int arcs = p.samples > 0 ? p.samples : 200;
  const int planes = 1000;
  Rng rng(p.seed);
  const auto box = bounding_box(link);
  for (int a = 0; a < arcs; ++a) {
    const int li = static_cast<int>(rng.below(link.loop_count()));
    const PolyLoop& loop = link.loops[li];
    PolyLoop replaced;
    for (int attempt = 0;; ++attempt) {
      try {
        replaced = replace_subarc(loop, random_arc(rng, loop), tol);
        break;
      } catch (const ValidationError&) {
        if (attempt > 64) throw;
      }
    }
    PolyLink modified = link;
    modified.loops[li] = replaced;
    for (int k = 0; k < planes; ++k) {
      const Plane plane = random_plane(rng, box);
      ++r.trials;
      if (cut_count(modified, plane, tol).total > cut_count(link, plane, tol).total)
        ++r.failures;
    }
  }
  r.passed = r.failures == 0;
  r.details["arcs"] = arcs;
  r.details["planes_per_arc"] = planes;
  return r;
}

SuiteResult run_lemma_cut_depth(const PolyLink& link, const CheckParams& p,
                                const Tolerance& tol) {
  SuiteResult r = base("lemma-cut-depth", p);
  const int points = p.samples > 0 ? p.samples : 50;
  const int arcs = 10;
  Rng rng(p.seed);
  const auto box = bounding_box(link);
  const detail::HullEngine original(link, tol);
  for (int a = 0; a < arcs; ++a) {
    const int li = static_cast<int>(rng.below(link.loop_count()));
    PolyLink modified = link;
    for (int attempt = 0;; ++attempt) {
      try {
        modified.loops[li] = replace_subarc(link.loops[li], random_arc(rng, link.loops[li]), tol);
        break;
      } catch (const ValidationError&) {
        if (attempt > 64) throw;
      }
    }
    const detail::HullEngine engine(modified, tol);
    for (int k = 0; k < points; ++k) {
      const Vec3 q = random_point(rng, box);
      ++r.trials;
      const int before = robust_depth(original, q, rng, 4 * tol.eps_abs);
      const int after = robust_depth(engine, q, rng, 4 * tol.eps_abs);
      if (after > before) ++r.failures;
    }
  }
  r.passed = r.failures == 0;
  return r;
}

SuiteResult run_updown(const PolyLink& link, const CheckParams& p, const Tolerance& tol) {
  SuiteResult r = base("updown", p);
  const int planes = p.samples > 0 ? p.samples : 10000;
  Rng rng(p.seed);
  const auto box = bounding_box(link);
  for (int k = 0; k < planes; ++k) {
    const CutCount cc = cut_count(link, random_plane(rng, box), tol);
    ++r.trials;
    if (cc.up != cc.down || cc.total != cc.up + cc.down) ++r.failures;
  }
  r.passed = r.failures == 0;
  return r;
}

SuiteResult run_nesting(const PolyLink& link, const CheckParams& p, const Tolerance& tol) {
  SuiteResult r = base("nesting", p);
  const GridSpec grid = GridSpec::cover(link, p.grid);
  const auto r1 = extract_hull(link, 1, grid, {}, tol);
  const auto r2 = extract_hull(link, 2, grid, {}, tol);
  for (long i = 0; i < grid.cell_count(); ++i) {
    ++r.trials;
    if (r2.voxels.in_set(i, 2) && !r1.voxels.in_set(i, 1)) ++r.failures;
  }
  r.passed = r.failures == 0;
  r.details["cells_n1"] = r1.voxels.count_in_set(1);
  r.details["cells_n2"] = r2.voxels.count_in_set(2);
  return r;
}

SuiteResult run_convexity(const PolyLink& link, const CheckParams& p, const Tolerance& tol) {
  SuiteResult r = base("convexity", p);
  const int pairs_per_level = p.samples > 0 ? p.samples : 500;
  const GridSpec grid = GridSpec::cover(link, p.grid);
  Rng rng(p.seed);
  const detail::HullEngine engine(link, tol);
  for (int level = 1; level <= 2; ++level) {
    const auto res = extract_hull(link, level, grid, {}, tol);
    // Connected components (6-neighbour) of the confirmed in-set.
    std::vector<int> comp(grid.cell_count(), -1);
    int ncomp = 0;
    std::vector<long> stack;
    for (long s = 0; s < grid.cell_count(); ++s) {
      if (!res.voxels.in_set(s, level) || comp[s] >= 0) continue;
      stack.push_back(s);
      comp[s] = ncomp;
      while (!stack.empty()) {
        const long cur = stack.back();
        stack.pop_back();
        const int i = static_cast<int>(cur % grid.dims.x());
        const int j = static_cast<int>((cur / grid.dims.x()) % grid.dims.y());
        const int k = static_cast<int>(cur / (long(grid.dims.x()) * grid.dims.y()));
        static const int nb[6][3] = {{1, 0, 0}, {-1, 0, 0}, {0, 1, 0},
                                     {0, -1, 0}, {0, 0, 1}, {0, 0, -1}};
        for (const auto& d : nb) {
          const int ii = i + d[0], jj = j + d[1], kk = k + d[2];
          if (ii < 0 || jj < 0 || kk < 0 || ii >= grid.dims.x() || jj >= grid.dims.y() ||
              kk >= grid.dims.z())
            continue;
          const long nidx = grid.index(ii, jj, kk);
          if (res.voxels.in_set(nidx, level) && comp[nidx] < 0) {
            comp[nidx] = ncomp;
            stack.push_back(nidx);
          }
        }
      }
      ++ncomp;
    }
    std::vector<std::vector<Vec3>> members(ncomp);
    for (long s = 0; s < grid.cell_count(); ++s) {
      if (comp[s] < 0) continue;
      const int i = static_cast<int>(s % grid.dims.x());
      const int j = static_cast<int>((s / grid.dims.x()) % grid.dims.y());
      const int k = static_cast<int>(s / (long(grid.dims.x()) * grid.dims.y()));
      members[comp[s]].push_back(grid.cell_center(i, j, k));
    }
    for (const auto& cells : members) {
      if (cells.size() < 2) continue;
      for (int t = 0; t < pairs_per_level; ++t) {
        const Vec3 a = cells[rng.below(cells.size())];
        const Vec3 b = cells[rng.below(cells.size())];
        const Vec3 mid = 0.5 * (a + b);
        ++r.trials;
        if (robust_depth(engine, mid, rng, 4 * tol.eps_abs) < level) ++r.failures;
      }
    }
    r.details["components_n" + std::to_string(level)] = ncomp;
  }
  r.passed = r.failures == 0;
  r.vacuous = r.trials == 0;
  return r;
}

SuiteResult run_cone_depth(const PolyLink& link, const CheckParams& p, const Tolerance& tol) {
  SuiteResult r = base("cone-depth", p);
  const int samples = p.samples > 0 ? p.samples : 50;
  const GridSpec grid = GridSpec::cover(link, p.grid);
  const auto res = extract_hull(link, 2, grid, {}, tol);
  std::vector<Vec3> pts;
  for (long s = 0; s < grid.cell_count(); ++s) {
    if (!res.voxels.in_set(s, 2)) continue;
    const int i = static_cast<int>(s % grid.dims.x());
    const int j = static_cast<int>((s / grid.dims.x()) % grid.dims.y());
    const int k = static_cast<int>(s / (long(grid.dims.x()) * grid.dims.y()));
    pts.push_back(grid.cell_center(i, j, k));
  }
  const size_t stride = std::max<size_t>(1, pts.size() / std::max(1, samples));
  for (size_t idx = 0; idx < pts.size() && r.trials < samples; idx += stride) {
    ++r.trials;
    if (cone_angle(pts[idx], link, tol).angle < 4.0 * M_PI - 1e-6) ++r.failures;
  }
  r.passed = r.failures == 0;
  r.vacuous = r.trials == 0;
  return r;
}

SuiteResult run_gauss_bonnet(const PolyLink& link, const CheckParams& p,
                             const Tolerance& tol) {
  SuiteResult r = base("gauss-bonnet", p);
  const int apexes = p.samples > 0 ? p.samples : 100;
  Rng rng(p.seed);
  const auto box = bounding_box(link);
  const double tc = total_curvature(link);
  r.details["total_curvature"] = tc;
  for (int k = 0; k < apexes; ++k) {
    Vec3 apex = random_point(rng, box);
    double angle = -1;
    for (int attempt = 0; attempt < 8 && angle < 0; ++attempt) {
      try {
        angle = cone_angle(apex, link, tol).angle;
      } catch (const DegenerateQueryError&) {
        apex += 4 * tol.eps_abs * rng.unit_vector();
      }
    }
    ++r.trials;
    if (angle > tc + 1e-9) ++r.failures;
  }
  r.passed = r.failures == 0;
  return r;
}

SuiteResult run_crofton(const PolyLink& link, const CheckParams& p, const Tolerance& tol) {
  SuiteResult r = base("crofton", p);
  const int samples = p.samples > 0 ? p.samples : 100000;
  Rng rng(p.seed);
  const auto box = bounding_box(link);
  for (int k = 0; k < 5; ++k) {
    Vec3 apex = random_point(rng, box);
    double exact = -1;
    for (int attempt = 0; attempt < 8 && exact < 0; ++attempt) {
      try {
        exact = cone_angle(apex, link, tol).angle;
      } catch (const DegenerateQueryError&) {
        apex += 4 * tol.eps_abs * rng.unit_vector();
      }
    }
    const double estimate = crofton_estimate(apex, link, samples, p.seed + k, tol);
    ++r.trials;
    if (std::abs(estimate - exact) > 0.02 * exact) ++r.failures;
  }
  r.passed = r.failures == 0;
  r.details["samples"] = samples;
  return r;
}

SuiteResult run_hull_bridge(const PolyLink& link, const CheckParams& p,
                            const Tolerance& tol) {
  SuiteResult r = base("hull-bridge", p);
  const BridgeResult br = bridge_superbridge(link, tol);
  const int hn = hull_number(link, GridSpec::cover(link, p.grid), tol);
  r.trials = 1;
  r.failures = hn <= br.bridge ? 0 : 1;
  r.passed = r.failures == 0;
  r.details["hull_number"] = hn;
  r.details["bridge"] = br.bridge;
  r.details["superbridge"] = br.superbridge;
  return r;
}

SuiteResult run_superbridge_sweep(const PolyLink& link, const CheckParams& p,
                                  const Tolerance& tol) {
  SuiteResult r = base("superbridge-sweep", p);
  const BridgeResult br = bridge_superbridge(link, tol);
  const DirectionProfile prof = sweep_profile(link, br.witness_max, tol);
  int maxcount = 0;
  for (int c : prof.counts) maxcount = std::max(maxcount, c);
  r.trials = 1;
  // Level counts never exceed twice the maxima count of the same direction;
  // equality holds when the ascending runs share a common level.
  r.failures = maxcount <= 2 * br.superbridge ? 0 : 1;
  r.passed = r.failures == 0;
  r.details["superbridge"] = br.superbridge;
  r.details["max_sweep_count"] = maxcount;
  r.details["equality"] = maxcount == 2 * br.superbridge;
  return r;
}

SuiteResult run_projection(const PolyLink& link, const CheckParams& p,
                           const Tolerance& tol) {
  SuiteResult r = base("projection", p);
  const int samples = p.samples > 0 ? p.samples : 50;
  Rng rng(p.seed);
  const GridSpec grid = GridSpec::cover(link, p.grid);
  for (int n = 1; n <= 2; ++n) {
    const auto res = extract_hull(link, n, grid, {}, tol);
    for (int d = 0; d < 5; ++d) {
      const Vec3 dir = rng.unit_vector();
      const LemmaCheck check =
          projection_lemma_check(link, dir, n, samples, tol, &res.voxels);
      ++r.trials;
      if (!check.ok()) ++r.failures;
      if (check.vacuous()) r.details["vacuous_n" + std::to_string(n)] = true;
    }
  }
  r.passed = r.failures == 0;
  return r;
}

SuiteResult run_union(const PolyLink& link, const CheckParams& p, const Tolerance& tol) {
  SuiteResult r = base("union", p);
  if (link.loop_count() < 2) {
    r.vacuous = true;
    r.passed = true;
    return r;
  }
  PolyLink A, B;
  A.loops.push_back(link.loops[0]);
  for (int i = 1; i < link.loop_count(); ++i) B.loops.push_back(link.loops[i]);
  const LemmaCheck check =
      union_lemma_check(A, B, 1, 1, p.samples > 0 ? p.samples : 20, tol);
  r.trials = check.checked;
  r.failures = check.ok() ? 0 : 1;
  r.vacuous = check.vacuous();
  r.passed = check.ok();
  return r;
}

SuiteResult run_quadrisecants(const PolyLink& link, const CheckParams& p,
                              const Tolerance& tol) {
  SuiteResult r = base("quadrisecants", p);
  const auto qs = quadrisecants(link, tol);
  const double diam = diameter(link);
  long alternating = 0;
  for (const auto& q : qs.quads) {
    ++r.trials;
    // Collinearity residual, independent of the transversal solve.
    const LineL fit = LineL::through_points(q.hits[0].point, q.hits[3].point);
    for (int i = 1; i <= 2; ++i) {
      const Vec3 d = q.hits[i].point - fit.point;
      const double resid = (d - fit.direction.dot(d) * fit.direction).norm();
      if (resid > 1e-9 * diam) ++r.failures;
    }
    if (q.alternating) {
      ++alternating;
      if (!midsegment_depth_check(q, link, p.samples > 0 ? p.samples : 5, tol))
        ++r.failures;
    }
  }
  r.passed = r.failures == 0;
  r.details["quadrisecants"] = static_cast<long>(qs.quads.size());
  r.details["alternating"] = alternating;
  r.details["unstable"] = static_cast<long>(qs.unstable.size());
  r.details["degenerate_quadruples"] = qs.degenerate_quadruples;
  return r;
}

SuiteResult run_affine(const PolyLink& link, const CheckParams& p, const Tolerance& tol) {
  SuiteResult r = base("affine", p);
  const int maps = 10;
  const int points = p.samples > 0 ? p.samples : 20;
  Rng rng(p.seed);
  const auto box = bounding_box(link);
  const detail::HullEngine engine(link, tol);
  for (int m = 0; m < maps; ++m) {
    AffineMap map;
    do {
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) map.linear(i, j) = rng.uniform(-1, 1);
    } while (std::abs(map.determinant()) < 0.2);
    map.translation = Vec3(rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1));
    const PolyLink mapped = affine_apply(map, link);
    const Tolerance mtol = Tolerance::for_link(mapped, tol.eps_rel);
    const detail::HullEngine mapped_engine(mapped, mtol);
    for (int k = 0; k < points; ++k) {
      Vec3 q = random_point(rng, box);
      ++r.trials;
      try {
        const int d0 = engine.min_cut_exact(q).depth();
        const int d1 = mapped_engine.min_cut_exact(map.apply(q)).depth();
        if (d0 != d1) ++r.failures;
      } catch (const DegenerateQueryError&) {
        --r.trials;  // point fell on the link; skip
      }
    }
  }
  r.passed = r.failures == 0;
  return r;
}

SuiteResult run_oracle(const PolyLink& link, const CheckParams& p, const Tolerance& tol) {
  SuiteResult r = base("oracle", p);
  const int points = p.samples > 0 ? p.samples : 25;
  const int nsamples = 20000;
  Rng rng(p.seed);
  const auto box = bounding_box(link);
  const detail::HullEngine engine(link, tol);
  for (int k = 0; k < points; ++k) {
    const Vec3 q = random_point(rng, box);
    ++r.trials;
    try {
      const int exact = engine.min_cut_exact(q).min_count;
      const int sampled = min_cut_sampled(q, link, nsamples, p.seed + k, tol).min_count;
      if (exact > sampled) ++r.failures;  // sampled is one-sided above exact
    } catch (const DegenerateQueryError&) {
      --r.trials;
    }
  }
  r.passed = r.failures == 0;
  return r;
}

SuiteResult run_clip(const PolyLink& link, const CheckParams& p, const Tolerance& tol) {
  SuiteResult r = base("clip", p);
  Rng rng(p.seed);
  const auto box = bounding_box(link);
  const int trials = p.samples > 0 ? p.samples : 200;
  for (int k = 0; k < trials; ++k) {
    const int li = static_cast<int>(rng.below(link.loop_count()));
    const PolyLoop& loop = link.loops[li];
    Halfspace H{random_plane(rng, box), rng.uniform() < 0.5 ? Side::above : Side::below};
    if (!singly_outside(loop, H, tol)) continue;
    ++r.trials;
    const PolyLoop clipped = clip_to_halfspace(loop, H, tol);
    for (const auto& v : clipped.vertices)
      if (H.inside_distance(v) < -tol.eps_abs) ++r.failures;
    // Clipping is the chord replacement of the single outside arc.
    const OutsideArcs oa = outside_arcs(loop, H, tol);
    if (oa.arcs.size() == 1) {
      const PolyLoop direct = replace_subarc(loop, oa.arcs[0], tol);
      if (direct.size() != clipped.size()) ++r.failures;
      else
        for (int i = 0; i < direct.size(); ++i)
          if ((direct.vertices[i] - clipped.vertices[i]).norm() > tol.eps_abs) ++r.failures;
    }
  }
  r.passed = r.failures == 0;
  r.vacuous = r.trials == 0;
  return r;
}

const std::map<std::string, Runner>& registry() {
  static const std::map<std::string, Runner> reg = {
      {"lemma-cut", run_lemma_cut},
      {"lemma-cut-depth", run_lemma_cut_depth},
      {"updown", run_updown},
      {"nesting", run_nesting},
      {"convexity", run_convexity},
      {"cone-depth", run_cone_depth},
      {"gauss-bonnet", run_gauss_bonnet},
      {"crofton", run_crofton},
      {"hull-bridge", run_hull_bridge},
      {"superbridge-sweep", run_superbridge_sweep},
      {"projection", run_projection},
      {"union", run_union},
      {"quadrisecants", run_quadrisecants},
      {"affine", run_affine},
      {"oracle", run_oracle},
      {"clip", run_clip},
  };
  return reg;
}

}  // namespace

std::vector<std::string> suite_names() {
  std::vector<std::string> names;
  for (const auto& [name, _] : registry()) names.push_back(name);
  return names;
}

SuiteResult run_suite(const std::string& name, const PolyLink& link,
                      const CheckParams& params, const Tolerance& tol) {
  const auto it = registry().find(name);
  if (it == registry().end())
    throw std::invalid_argument("unknown check suite: " + name);
  return it->second(link, params, tol);
}

}  // namespace hullkit
