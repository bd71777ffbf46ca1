#include "hullkit/surgery.hpp"

#include <algorithm>

namespace hullkit {

namespace {

PolyLoop merge_duplicates(std::vector<Vec3> verts, const Tolerance& tol) {
  std::vector<Vec3> out;
  for (const Vec3& v : verts) {
    if (out.empty() || (v - out.back()).norm() > tol.eps_abs) out.push_back(v);
  }
  while (out.size() > 1 && (out.front() - out.back()).norm() <= tol.eps_abs)
    out.pop_back();
  return PolyLoop(std::move(out));
}

}  // namespace

PolyLoop replace_subarc(const PolyLoop& loop, const ArcSpec& arc, const Tolerance& tol) {
  const int n = loop.size();
  if (arc.start.edge < 0 || arc.start.edge >= n || arc.end.edge < 0 || arc.end.edge >= n)
    throw ValidationError("replace_subarc: arc edges out of range");
  const Vec3 a = loop.point_at(arc.start.edge, arc.start.t);
  const Vec3 b = loop.point_at(arc.end.edge, arc.end.t);
  if ((a - b).norm() <= tol.eps_abs)
    throw ValidationError("replace_subarc: arc endpoints coincide");
  // A same-edge arc wrapping past its own start covers the whole loop but a
  // sliver; the complement has no vertices left.
  if (arc.start.edge == arc.end.edge && arc.end.t <= arc.start.t)
    throw ValidationError("replace_subarc: arc spans the whole loop");

  // Keep the complement arc (end -> start, forward) plus the chord a -> b.
  std::vector<Vec3> verts;
  verts.push_back(a);
  verts.push_back(b);
  int i = loop.mod(arc.end.edge + 1);
  for (int guard = 0; guard <= n; ++guard) {
    verts.push_back(loop.vertex(i));
    if (i == arc.start.edge) break;
    i = loop.mod(i + 1);
  }

  PolyLoop out = merge_duplicates(std::move(verts), tol);
  if (out.size() < 3)
    throw ValidationError("replace_subarc: complement arc too short (near-whole-loop arc)");
  return out;
}

OutsideArcs outside_arcs(const PolyLoop& loop, const Halfspace& H, const Tolerance& tol,
                         int loop_index) {
  const int n = loop.size();
  std::vector<double> inside(n);  // positive inside the open half-space
  std::vector<bool> out(n);
  bool any_in = false;
  for (int i = 0; i < n; ++i) {
    inside[i] = H.inside_distance(loop.vertices[i]);
    // On-plane vertices belong to the inside.
    out[i] = inside[i] < -tol.eps_abs;
    if (!out[i]) any_in = true;
  }

  OutsideArcs result;
  if (!any_in) {
    result.whole_loop_outside = true;
    return result;
  }

  auto crossing_t = [&](int edge) {
    // Edge from vertex(edge) to vertex(edge+1) crossing the boundary plane.
    const double da = inside[edge];
    const double db = inside[loop.mod(edge + 1)];
    if (std::abs(da) <= tol.eps_abs) return 0.0;
    if (std::abs(db) <= tol.eps_abs) return 1.0;
    return std::clamp(da / (da - db), 0.0, 1.0);
  };

  int first_in = 0;
  while (out[first_in]) ++first_in;
  int k = 1;
  while (k <= n) {
    const int i = loop.mod(first_in + k);
    if (!out[i]) { ++k; continue; }
    int len = 1;
    while (out[loop.mod(first_in + k + len)]) ++len;
    ArcSpec arc;
    arc.loop_index = loop_index;
    const int enter_edge = loop.mod(i - 1);  // from inside vertex to first outside
    arc.start = {enter_edge, crossing_t(enter_edge)};
    const int exit_edge = loop.mod(i + len - 1);  // from last outside back inside
    arc.end = {exit_edge, crossing_t(exit_edge)};
    result.arcs.push_back(arc);
    k += len;
  }
  return result;
}

bool singly_outside(const PolyLoop& loop, const Halfspace& H, const Tolerance& tol) {
  const OutsideArcs oa = outside_arcs(loop, H, tol);
  return !oa.whole_loop_outside && oa.arcs.size() <= 1;
}

PolyLoop clip_to_halfspace(const PolyLoop& loop, const Halfspace& H, const Tolerance& tol) {
  const OutsideArcs oa = outside_arcs(loop, H, tol);
  if (oa.whole_loop_outside || oa.arcs.size() > 1)
    throw ValidationError("clip_to_halfspace: loop is not singly outside the half-space");
  if (oa.arcs.empty()) return loop;
  return replace_subarc(loop, oa.arcs[0], tol);
}

}  // namespace hullkit
