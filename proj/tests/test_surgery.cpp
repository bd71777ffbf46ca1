#include <doctest.h>

#include "hullkit/fixtures.hpp"
#include "hullkit/hull.hpp"
#include "hullkit/plane_cut.hpp"
#include "hullkit/rng.hpp"
#include "hullkit/surgery.hpp"

using namespace hullkit;

namespace {

PolyLoop square() {
  return PolyLoop{{Vec3(0, 0, 0), Vec3(1, 0, 0), Vec3(1, 1, 0), Vec3(0, 1, 0)}};
}

Halfspace below_z(double offset) {
  return Halfspace{Plane::from_normal_offset(Vec3::UnitZ(), offset), Side::below};
}

}  // namespace

TEST_CASE("replacing a zero-turning arc leaves the loop geometrically unchanged") {
  // Vertex 1 sits on the straight segment from vertex 0 to vertex 2.
  PolyLoop loop{{Vec3(0, 0, 0), Vec3(1, 0, 0), Vec3(2, 0, 0), Vec3(1, 2, 0)}};
  const Tolerance tol = Tolerance::absolute(1e-9);
  ArcSpec arc{0, {0, 0.5}, {1, 0.5}};
  const PolyLoop out = replace_subarc(loop, arc, tol);
  // Same trace: the chord from (0.5,0,0) to (1.5,0,0) lies on the old edges.
  const Plane xaxis_plane = Plane::from_normal_offset(Vec3::UnitY(), 0.0);
  PolyLink a, b;
  a.loops.push_back(loop);
  b.loops.push_back(out);
  Rng rng(21);
  for (int k = 0; k < 200; ++k) {
    const Plane p{rng.unit_vector(), rng.uniform(-1, 2)};
    REQUIRE(cut_count(b, p, tol).total == cut_count(a, p, tol).total);
  }
  (void)xaxis_plane;
}

TEST_CASE("arc preconditions") {
  const Tolerance tol = Tolerance::absolute(1e-9);
  PolyLoop loop = square();
  // Coincident endpoints.
  CHECK_THROWS_AS(replace_subarc(loop, ArcSpec{0, {1, 0.5}, {1, 0.5}}, tol),
                  ValidationError);
  // Near-whole-loop arc: complement is a sliver of one edge.
  CHECK_THROWS_AS(replace_subarc(loop, ArcSpec{0, {1, 0.6}, {1, 0.4}}, tol),
                  ValidationError);
  CHECK_THROWS_AS(replace_subarc(loop, ArcSpec{0, {9, 0.5}, {1, 0.5}}, tol),
                  ValidationError);
}

TEST_CASE("chord replacement never increases any plane count") {
  const Fixture tre = make_trefoil(64);
  const Tolerance tol = Tolerance::for_link(tre.link, 1e-9);
  Rng rng(22);
  const auto box = bounding_box(tre.link);
  for (int a = 0; a < 20; ++a) {
    ArcSpec arc;
    PolyLoop replaced;
    for (;;) {
      arc.loop_index = 0;
      arc.start = {static_cast<int>(rng.below(64)), rng.uniform(0.05, 0.95)};
      arc.end = {static_cast<int>(rng.below(64)), rng.uniform(0.05, 0.95)};
      try {
        replaced = replace_subarc(tre.link.loops[0], arc, tol);
        break;
      } catch (const ValidationError&) {
      }
    }
    PolyLink modified;
    modified.loops.push_back(replaced);
    REQUIRE(validate(modified, tol).empty());
    for (int k = 0; k < 200; ++k) {
      const Vec3 n = rng.unit_vector();
      double lo = 1e300, hi = -1e300;
      for (const auto& v : tre.link.loops[0].vertices) {
        lo = std::min(lo, n.dot(v));
        hi = std::max(hi, n.dot(v));
      }
      const Plane p{n, rng.uniform(lo, hi)};
      REQUIRE(cut_count(modified, p, tol).total <= cut_count(tre.link, p, tol).total);
    }
  }
  (void)box;
}

TEST_CASE("chord replacement never deepens sampled points") {
  const Fixture tre = make_trefoil(64);
  const Tolerance tol = Tolerance::for_link(tre.link, 1e-9);
  Rng rng(23);
  const auto box = bounding_box(tre.link);
  ArcSpec arc{0, {3, 0.5}, {20, 0.25}};
  PolyLink modified;
  modified.loops.push_back(replace_subarc(tre.link.loops[0], arc, tol));
  int checked = 0;
  while (checked < 50) {
    Vec3 p;
    for (int a = 0; a < 3; ++a) p[a] = rng.uniform(box.min()[a], box.max()[a]);
    try {
      const int before = hull_depth(p, tre.link, tol);
      const int after = hull_depth(p, modified, tol);
      REQUIRE(after <= before);
      ++checked;
    } catch (const DegenerateQueryError&) {
    }
  }
}

TEST_CASE("outside_arcs cases on the unit square") {
  const Tolerance tol = Tolerance::absolute(1e-9);
  const PolyLoop loop = square();

  // Entirely inside.
  CHECK(outside_arcs(loop, below_z(1.0), tol).arcs.empty());
  CHECK(singly_outside(loop, below_z(1.0), tol));

  // Entirely outside.
  const OutsideArcs all_out = outside_arcs(loop, below_z(-1.0), tol);
  CHECK(all_out.whole_loop_outside);
  CHECK(!singly_outside(loop, below_z(-1.0), tol));

  // One vertex pushed above the boundary plane, neighbours below.
  PolyLoop tent = loop;
  tent.vertices[2] = Vec3(1, 1, 2);
  const OutsideArcs one = outside_arcs(tent, below_z(1.0), tol);
  REQUIRE(one.arcs.size() == 1);
  CHECK(one.arcs[0].start.edge == 1);
  CHECK(one.arcs[0].end.edge == 2);
  CHECK(singly_outside(tent, below_z(1.0), tol));

  // Vertices alternating in and out four times: two arcs.
  PolyLoop zig{{Vec3(0, 0, 0), Vec3(1, 0, 2), Vec3(2, 0, 0), Vec3(3, 0, 2),
                Vec3(3, 1, 0), Vec3(0, 1, 0)}};
  const OutsideArcs two = outside_arcs(zig, below_z(1.0), tol);
  CHECK(two.arcs.size() == 2);
  CHECK(!singly_outside(zig, below_z(1.0), tol));
}

TEST_CASE("clipping the trefoil at a single lobe") {
  const Fixture tre = make_trefoil(64);
  const Tolerance tol = Tolerance::for_link(tre.link, 1e-9);
  // Choose the offset from the sweep profile: the topmost interval cut
  // exactly twice supports one lobe.
  const DirectionProfile prof = sweep_profile(tre.link, Vec3::UnitZ(), tol);
  double offset = 0;
  bool found = false;
  for (int i = static_cast<int>(prof.counts.size()) - 1; i >= 0; --i)
    if (prof.counts[i] == 2) {
      offset = 0.5 * (prof.cluster_hi[i] + prof.cluster_lo[i + 1]);
      found = true;
      break;
    }
  REQUIRE(found);
  const Halfspace H = below_z(offset);
  REQUIRE(singly_outside(tre.link.loops[0], H, tol));

  const PolyLoop clipped = clip_to_halfspace(tre.link.loops[0], H, tol);
  int inside = 0;
  for (const auto& v : tre.link.loops[0].vertices)
    if (H.inside_distance(v) >= -tol.eps_abs) ++inside;
  CHECK(clipped.size() == inside + 2);
  for (const auto& v : clipped.vertices)
    CHECK(H.inside_distance(v) >= -tol.eps_abs);

  // Idempotent.
  const PolyLoop again = clip_to_halfspace(clipped, H, tol);
  CHECK(again.size() == clipped.size());

  // Same output as chord replacement of the single outside arc.
  const OutsideArcs oa = outside_arcs(tre.link.loops[0], H, tol);
  REQUIRE(oa.arcs.size() == 1);
  const PolyLoop direct = replace_subarc(tre.link.loops[0], oa.arcs[0], tol);
  REQUIRE(direct.size() == clipped.size());
  for (int i = 0; i < direct.size(); ++i)
    CHECK((direct.vertices[i] - clipped.vertices[i]).norm() <= tol.eps_abs);
}

TEST_CASE("clipping requires a singly-outside loop") {
  const Tolerance tol = Tolerance::absolute(1e-9);
  PolyLoop zig{{Vec3(0, 0, 0), Vec3(1, 0, 2), Vec3(2, 0, 0), Vec3(3, 0, 2),
                Vec3(3, 1, 0), Vec3(0, 1, 0)}};
  CHECK_THROWS_AS(clip_to_halfspace(zig, below_z(1.0), tol), ValidationError);
  CHECK_THROWS_AS(clip_to_halfspace(square(), below_z(-1.0), tol), ValidationError);
  // No-op clip returns the loop unchanged.
  const PolyLoop same = clip_to_halfspace(square(), below_z(1.0), tol);
  CHECK(same.size() == 4);
}
