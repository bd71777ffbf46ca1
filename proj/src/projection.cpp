#include "hullkit/projection.hpp"

#include <algorithm>

namespace hullkit {

ProjectedLink project(const PolyLink& link, const Vec3& direction, const Tolerance& tol) {
  const double len = direction.norm();
  if (!(len > kUnitNormalTol))
    throw std::invalid_argument("project: zero direction");
  ProjectedLink out;
  out.direction = direction / len;
  out.basis_u = out.direction.unitOrthogonal();
  out.basis_v = out.direction.cross(out.basis_u);

  for (const auto& loop : link.loops) {
    PolyLoop2 l2;
    Eigen::AlignedBox2d box;
    for (const auto& v : loop.vertices) {
      const Vec2 p = out.project_point(v);
      l2.vertices.push_back(p);
      box.extend(p);
    }
    out.link2.loops.push_back(std::move(l2));
    out.collapsed.push_back(box.diagonal().minCoeff() <= tol.eps_abs);
  }
  return out;
}

namespace {

int loop_count_2d(const PolyLoop2& loop, const Line2& line, const Tolerance& tol) {
  std::vector<double> dist(loop.size());
  for (int i = 0; i < loop.size(); ++i) dist[i] = line.signed_distance(loop.vertex(i));
  return count_from_distances(dist, tol.eps_abs);
}

}  // namespace

int cut_count_2d(const PolyLink2& link, const Line2& line, const Tolerance& tol) {
  int total = 0;
  for (const auto& loop : link.loops) total += loop_count_2d(loop, line, tol);
  return total;
}

HullQuery2 min_cut_2d(const Vec2& p2, const PolyLink2& link, const Tolerance& tol) {
  std::vector<Vec2> normals;
  for (const auto& loop : link.loops) {
    for (const auto& v : loop.vertices) {
      const Vec2 w = v - p2;
      const double wn = w.norm();
      if (wn <= tol.eps_abs)
        throw DegenerateQueryError("min_cut_2d: point coincides with a vertex");
      const Vec2 perp(-w.y() / wn, w.x() / wn);
      // Rotate to either side of the perpendicular; the count is constant on
      // the arcs between consecutive perpendicular directions.
      const double c = std::cos(kEpsDir), s = std::sin(kEpsDir);
      normals.emplace_back(c * perp.x() - s * perp.y(), s * perp.x() + c * perp.y());
      normals.emplace_back(c * perp.x() + s * perp.y(), -s * perp.x() + c * perp.y());
    }
  }
  for (int k = 0; k < 8; ++k) {
    const double a = M_PI * k / 8.0;
    normals.emplace_back(std::cos(a), std::sin(a));
  }

  HullQuery2 best;
  best.point = p2;
  best.min_count = -1;
  for (const Vec2& n : normals) {
    Line2 line{n, n.dot(p2)};
    const int c = cut_count_2d(link, line, tol);
    if (best.min_count < 0 || c < best.min_count) {
      best.min_count = c;
      best.witness = line;
      if (c == 0) break;
    }
  }
  return best;
}

LemmaCheck projection_lemma_check(const PolyLink& link, const Vec3& direction, int n,
                                  int k_samples, const Tolerance& tol,
                                  const VoxelGrid* cached) {
  VoxelGrid local;
  const VoxelGrid* vox = cached;
  if (!vox) {
    const auto res = extract_hull(link, n, GridSpec::cover(link, 32), {}, tol);
    local = res.voxels;
    vox = &local;
  }
  std::vector<Vec3> points;
  const GridSpec& g = vox->grid;
  for (int k = 0; k < g.dims.z(); ++k)
    for (int j = 0; j < g.dims.y(); ++j)
      for (int i = 0; i < g.dims.x(); ++i)
        if (vox->in_set(g.index(i, j, k), n)) points.push_back(g.cell_center(i, j, k));

  LemmaCheck check;
  if (points.empty()) return check;  // vacuous

  const ProjectedLink proj = project(link, direction, tol);
  const size_t stride = std::max<size_t>(1, points.size() / std::max(1, k_samples));
  check.outcome = CheckOutcome::passed;
  for (size_t idx = 0; idx < points.size() && check.checked < k_samples; idx += stride) {
    const Vec2 p2 = proj.project_point(points[idx]);
    const HullQuery2 q = min_cut_2d(p2, proj.link2, tol);
    ++check.checked;
    if (q.depth() < n) { check.outcome = CheckOutcome::failed; return check; }
  }
  return check;
}

LemmaCheck union_lemma_check(const PolyLink& A, const PolyLink& B, int m, int n,
                             int k_samples, const Tolerance& tol,
                             const std::vector<Vec3>& extra_points) {
  PolyLink both;
  both.loops = A.loops;
  for (const auto& l : B.loops) both.loops.push_back(l);
  const Tolerance tol_union = Tolerance::for_link(both, tol.eps_rel);

  // Explicit probes must satisfy the premise (depth m in A, depth n in B).
  std::vector<Vec3> points;
  {
    const Tolerance ta = Tolerance::for_link(A, tol.eps_rel);
    const Tolerance tb = Tolerance::for_link(B, tol.eps_rel);
    for (const Vec3& p : extra_points)
      if (hull_depth(p, A, ta) >= m && hull_depth(p, B, tb) >= n) points.push_back(p);
  }
  {
    const GridSpec grid = GridSpec::cover(both, 32);
    const auto ra = extract_hull(A, m, grid, {}, Tolerance::for_link(A, tol.eps_rel));
    const auto rb = extract_hull(B, n, grid, {}, Tolerance::for_link(B, tol.eps_rel));
    for (long idx = 0; idx < grid.cell_count(); ++idx)
      if (ra.voxels.in_set(idx, m) && rb.voxels.in_set(idx, n)) {
        const int i = static_cast<int>(idx % grid.dims.x());
        const int j = static_cast<int>((idx / grid.dims.x()) % grid.dims.y());
        const int k = static_cast<int>(idx / (long(grid.dims.x()) * grid.dims.y()));
        points.push_back(grid.cell_center(i, j, k));
      }
  }

  LemmaCheck check;
  if (points.empty()) return check;  // vacuous: hulls do not meet at grid scale

  const detail::HullEngine engine(both, tol_union);
  const size_t stride =
      std::max<size_t>(1, points.size() / std::max<size_t>(1, k_samples));
  check.outcome = CheckOutcome::passed;
  for (size_t idx = 0; idx < points.size() && check.checked < k_samples; idx += stride) {
    const HullQuery q = engine.min_cut_exact(points[idx]);
    ++check.checked;
    if (q.depth() < m + n) { check.outcome = CheckOutcome::failed; return check; }
  }
  return check;
}

}  // namespace hullkit
