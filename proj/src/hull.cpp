#include "hullkit/hull.hpp"

#include <algorithm>
#include <cassert>
#include <map>

#include "hullkit/curvature.hpp"
#include "hullkit/rng.hpp"

namespace hullkit {

namespace detail {

void append_pencil_candidates(const std::vector<Vec3>& vectors,
                              std::vector<Vec3>& out) {
  if (vectors.size() < 2) return;
  Mat3 scatter = Mat3::Zero();
  for (const Vec3& v : vectors) {
    const double n = v.norm();
    if (n > 0) scatter += (v / n) * (v / n).transpose();
  }
  Eigen::SelfAdjointEigenSolver<Mat3> eig(scatter);
  const Vec3 pole = eig.eigenvectors().col(0);  // least-variance direction
  const Vec3 xb = pole.unitOrthogonal();
  const Vec3 yb = pole.cross(xb);

  std::vector<double> boundaries;
  boundaries.reserve(vectors.size());
  for (const Vec3& v : vectors) {
    const double x = xb.dot(v), y = yb.dot(v);
    if (x * x + y * y < 1e-28) continue;  // parallel to the pole
    // The circle dual to v meets the equator plane at the perpendicular of
    // its in-plane part; plane normals are taken modulo sign.
    double b = std::atan2(y, x) + M_PI / 2;
    b = b - M_PI * std::floor(b / M_PI);
    boundaries.push_back(b);
  }
  if (boundaries.size() < 2) return;
  std::sort(boundaries.begin(), boundaries.end());
  for (size_t i = 0; i < boundaries.size(); ++i) {
    const double next =
        i + 1 < boundaries.size() ? boundaries[i + 1] : boundaries[0] + M_PI;
    const double mid = 0.5 * (boundaries[i] + next);
    out.push_back(std::cos(mid) * xb + std::sin(mid) * yb);
  }
}

HullEngine::HullEngine(const PolyLink& link, const Tolerance& tol)
    : link_(&link), tol_(tol) {
  verts_.resize(3, link.total_vertices());
  loop_begin_.assign(1, 0);
  int col = 0;
  for (const auto& loop : link.loops) {
    for (const auto& v : loop.vertices) verts_.col(col++) = v;
    loop_begin_.push_back(col);
  }
}

bool HullEngine::on_link(const Vec3& p) const {
  for (const auto& loop : link_->loops) {
    for (int i = 0; i < loop.size(); ++i) {
      const Vec3 a = loop.vertex(i);
      const Vec3 ab = loop.edge_vector(i);
      const double len2 = ab.squaredNorm();
      double t = len2 > 0 ? ab.dot(p - a) / len2 : 0.0;
      t = std::clamp(t, 0.0, 1.0);
      if ((p - (a + t * ab)).norm() <= tol_.eps_abs) return true;
    }
  }
  return false;
}

std::vector<Vec3> HullEngine::candidate_directions(const Vec3& p) const {
  const int n = static_cast<int>(verts_.cols());
  for (int i = 0; i < n; ++i) {
    if ((verts_.col(i) - p).norm() <= tol_.eps_abs)
      throw DegenerateQueryError("candidate_directions: point coincides with a link vertex");
  }

  std::vector<Vec3> dirs;
  dirs.reserve(2 * n * (n - 1) + 26);
  const double c = std::cos(kEpsDir), s = std::sin(kEpsDir);
  for (int i = 0; i < n; ++i) {
    const Vec3 wi = verts_.col(i) - p;
    for (int j = i + 1; j < n; ++j) {
      const Vec3 wj = verts_.col(j) - p;
      const Vec3 cross = wi.cross(wj);
      const double cn = cross.norm();
      if (cn <= tol_.eps_rel * wi.norm() * wj.norm()) continue;  // parallel pair
      const Vec3 u0 = cross / cn;
      const Vec3 a = wi.normalized();
      const Vec3 b = wj.normalized();
      // a and b span the tangent plane at u0; the four sign patterns of
      // (d·a, d·b) pick out the four faces incident to the vertex u0.
      const Vec3 tang[4] = {a + b, a - b, -a - b, b - a};
      for (const Vec3& t : tang) {
        const double tn = t.norm();
        if (tn < 1e-14) continue;
        dirs.push_back((u0 * c + (t / tn) * s).normalized());
      }
    }
  }
  for (int x = -1; x <= 1; ++x)
    for (int y = -1; y <= 1; ++y)
      for (int z = -1; z <= 1; ++z) {
        if (x == 0 && y == 0 && z == 0) continue;
        dirs.push_back(Vec3(x, y, z).normalized());
      }
  std::vector<Vec3> rel(n);
  for (int i = 0; i < n; ++i) rel[i] = verts_.col(i) - p;
  append_pencil_candidates(rel, dirs);
  return dirs;
}

int HullEngine::count(const Vec3& p, const Vec3& u) const {
  const int nloops = static_cast<int>(loop_begin_.size()) - 1;
  int total = 0;
  std::vector<double> dist;
  for (int li = 0; li < nloops; ++li) {
    const int b = loop_begin_[li], e = loop_begin_[li + 1];
    dist.resize(e - b);
    for (int i = b; i < e; ++i) dist[i - b] = u.dot(verts_.col(i) - p);
    total += count_from_distances(dist, tol_.eps_abs);
  }
  return total;
}

HullQuery HullEngine::min_cut_exact(const Vec3& p) const {
  if (on_link(p))
    throw DegenerateQueryError("min_cut_exact: query point lies on the link");
  const auto dirs = candidate_directions(p);
  const int nloops = static_cast<int>(loop_begin_.size()) - 1;

  // Signed distances of every vertex to every candidate plane in one product.
  Eigen::Matrix3Xd rel = verts_.colwise() - p;
  const int m = static_cast<int>(dirs.size());
  Eigen::Matrix<double, Eigen::Dynamic, 3> D(m, 3);
  for (int k = 0; k < m; ++k) D.row(k) = dirs[k].transpose();
  Eigen::MatrixXd vals = D * rel;  // m x n

  int best = -1;
  int best_count = 0;
  std::vector<double> dist;
  for (int k = 0; k < m; ++k) {
    int total = 0;
    for (int li = 0; li < nloops && (best < 0 || total < best_count); ++li) {
      const int b = loop_begin_[li], e = loop_begin_[li + 1];
      dist.assign(vals.row(k).segment(b, e - b).begin(),
                  vals.row(k).segment(b, e - b).end());
      total += count_from_distances(dist, tol_.eps_abs);
    }
    if (best < 0 || total < best_count) {
      best = k;
      best_count = total;
      if (best_count == 0) break;
    }
  }

  HullQuery q;
  q.point = p;
  q.min_count = best_count;
  q.witness = Plane::through_point(dirs[best], p);
  return q;
}

}  // namespace detail

std::vector<Vec3> candidate_directions(const Vec3& p, const PolyLink& link,
                                       const Tolerance& tol) {
  return detail::HullEngine(link, tol).candidate_directions(p);
}

HullQuery min_cut_exact(const Vec3& p, const PolyLink& link, const Tolerance& tol) {
  return detail::HullEngine(link, tol).min_cut_exact(p);
}

HullQuery min_cut_sampled(const Vec3& p, const PolyLink& link, int n_samples,
                          std::uint64_t seed, const Tolerance& tol) {
  if (n_samples < 1) throw std::invalid_argument("min_cut_sampled: n_samples >= 1");
  detail::HullEngine engine(link, tol);
  Rng rng(seed);
  int best_count = -1;
  Vec3 best_dir = Vec3::UnitZ();
  for (int k = 0; k < n_samples; ++k) {
    const Vec3 u = rng.unit_vector();
    const int c = engine.count(p, u);
    if (best_count < 0 || c < best_count) {
      best_count = c;
      best_dir = u;
      if (best_count == 0) break;
    }
  }
  HullQuery q;
  q.point = p;
  q.min_count = best_count;
  q.witness = Plane::through_point(best_dir, p);
  q.sampled = SampledInfo{n_samples, seed};
  return q;
}

bool in_hull(const Vec3& p, const PolyLink& link, int n, const Tolerance& tol) {
  return min_cut_exact(p, link, tol).min_count >= 2 * n;
}

int hull_depth(const Vec3& p, const PolyLink& link, const Tolerance& tol) {
  return min_cut_exact(p, link, tol).depth();
}

GridSpec GridSpec::cover(const PolyLink& link, const Eigen::Vector3i& dims) {
  const auto box = bounding_box(link);
  const Vec3 center = box.center();
  const Vec3 extent = box.diagonal();
  double spacing = 0.0;
  for (int a = 0; a < 3; ++a)
    spacing = std::max(spacing, extent[a] / std::max(1, dims[a] - 1));
  if (spacing <= 0) spacing = 1.0;
  GridSpec g;
  g.dims = dims;
  g.spacing = spacing;
  // Put the center of cell floor(dims/2) exactly on the box center so that a
  // cell-center layer lies on each midplane.
  for (int a = 0; a < 3; ++a)
    g.origin[a] = center[a] - spacing * (dims[a] / 2 + 0.5);
  return g;
}

bool GridSpec::covers(const Eigen::AlignedBox3d& box) const {
  const Vec3 hi = origin + spacing * dims.cast<double>();
  const double slack = 1e-9 * (1.0 + box.diagonal().norm());
  return (box.min() - origin).minCoeff() >= -slack && (hi - box.max()).minCoeff() >= -slack;
}

long VoxelGrid::count_in_set(int level) const {
  long c = 0;
  for (long i = 0; i < static_cast<long>(depth.size()); ++i)
    if (in_set(i, level)) ++c;
  return c;
}

namespace {

struct Prefilter {
  std::vector<DirectionProfile> profiles;
  double guard = 0.0;

  Prefilter(const PolyLink& link, int ndirs, const Tolerance& tol) {
    guard = 2.0 * tol.eps_abs;
    for (const Vec3& u : fibonacci_sphere(ndirs))
      profiles.push_back(sweep_profile(link, u, tol));
  }

  /// Upper bound for the min cut count at p; never below the true value.
  int bound(const Vec3& p, int stop_below) const {
    int best = std::numeric_limits<int>::max();
    for (const auto& prof : profiles) {
      bool near = false;
      const int c = prof.count_at(prof.direction.dot(p), guard, &near);
      if (near) continue;  // interval count does not certify this plane
      best = std::min(best, c);
      if (best < stop_below) break;
    }
    return best;
  }
};

void classify_cells(const detail::HullEngine& engine, const Prefilter& pre,
                    VoxelGrid& vox, int level, long budget,
                    const std::vector<long>* only_cells) {
  const GridSpec& g = vox.grid;
  const long total = g.cell_count();
  auto process = [&](long idx) {
    const int i = static_cast<int>(idx % g.dims.x());
    const int j = static_cast<int>((idx / g.dims.x()) % g.dims.y());
    const int k = static_cast<int>(idx / (long(g.dims.x()) * g.dims.y()));
    const Vec3 center = g.cell_center(i, j, k);
    const int bound = pre.bound(center, 2 * level);
    if (bound < 2 * level) {
      vox.status[idx] = CellStatus::prefilter_only;
      vox.depth[idx] = static_cast<std::int16_t>(bound / 2);
      return;
    }
    if (vox.exact_queries >= budget) {
      vox.budget_exhausted = true;
      vox.status[idx] = CellStatus::prefilter_only;
      vox.depth[idx] = static_cast<std::int16_t>(bound / 2);
      return;
    }
    ++vox.exact_queries;
    try {
      const HullQuery q = engine.min_cut_exact(center);
      vox.status[idx] = CellStatus::confirmed_exact;
      vox.depth[idx] = static_cast<std::int16_t>(q.depth());
    } catch (const DegenerateQueryError&) {
      // Cell center on the link itself; nudge off by a fraction of a cell.
      const Vec3 moved = center + Vec3(0.37, 0.41, 0.23) * (g.spacing * 1e-3);
      const HullQuery q = engine.min_cut_exact(moved);
      vox.status[idx] = CellStatus::confirmed_exact;
      vox.depth[idx] = static_cast<std::int16_t>(q.depth());
    }
  };
  if (only_cells) {
    for (long idx : *only_cells) process(idx);
  } else {
    for (long idx = 0; idx < total; ++idx) process(idx);
  }
}

}  // namespace

HullMesh mesh_from_voxels(const VoxelGrid& vox, int level) {
  HullMesh mesh;
  mesh.level = level;
  const GridSpec& g = vox.grid;
  std::map<std::array<int, 3>, int> corner_index;
  auto corner = [&](int i, int j, int k) {
    const std::array<int, 3> key{i, j, k};
    auto it = corner_index.find(key);
    if (it != corner_index.end()) return it->second;
    const int id = static_cast<int>(mesh.vertices.size());
    mesh.vertices.push_back(g.origin + g.spacing * Vec3(i, j, k));
    corner_index.emplace(key, id);
    return id;
  };
  auto inside = [&](int i, int j, int k) {
    if (i < 0 || j < 0 || k < 0 || i >= g.dims.x() || j >= g.dims.y() || k >= g.dims.z())
      return false;
    return vox.in_set(g.index(i, j, k), level);
  };
  // Face corner offsets for the +axis and -axis faces of a cell, wound so the
  // normal points out of the in-set cell.
  static const int faces[6][4][3] = {
      {{1, 0, 0}, {1, 1, 0}, {1, 1, 1}, {1, 0, 1}},  // +x
      {{0, 0, 0}, {0, 0, 1}, {0, 1, 1}, {0, 1, 0}},  // -x
      {{0, 1, 0}, {0, 1, 1}, {1, 1, 1}, {1, 1, 0}},  // +y
      {{0, 0, 0}, {1, 0, 0}, {1, 0, 1}, {0, 0, 1}},  // -y
      {{0, 0, 1}, {1, 0, 1}, {1, 1, 1}, {0, 1, 1}},  // +z
      {{0, 0, 0}, {0, 1, 0}, {1, 1, 0}, {1, 0, 0}},  // -z
  };
  static const int nbr[6][3] = {{1, 0, 0}, {-1, 0, 0}, {0, 1, 0},
                                {0, -1, 0}, {0, 0, 1}, {0, 0, -1}};
  for (int k = 0; k < g.dims.z(); ++k)
    for (int j = 0; j < g.dims.y(); ++j)
      for (int i = 0; i < g.dims.x(); ++i) {
        if (!inside(i, j, k)) continue;
        for (int f = 0; f < 6; ++f) {
          if (inside(i + nbr[f][0], j + nbr[f][1], k + nbr[f][2])) continue;
          std::array<int, 4> quad;
          for (int c = 0; c < 4; ++c)
            quad[c] = corner(i + faces[f][c][0], j + faces[f][c][1], k + faces[f][c][2]);
          mesh.quads.push_back(quad);
        }
      }
  return mesh;
}

ExtractResult extract_hull(const PolyLink& link, int level, const GridSpec& grid,
                           const ExtractOptions& opt, const Tolerance& tol) {
  if (level < 1) throw std::invalid_argument("extract_hull: level >= 1 required");
  if (!grid.covers(bounding_box(link)))
    throw std::invalid_argument("extract_hull: grid does not cover the link bounding box");

  const detail::HullEngine engine(link, tol);
  const Prefilter pre(link, opt.prefilter_dirs, tol);

  VoxelGrid vox;
  vox.grid = grid;
  vox.depth.assign(grid.cell_count(), 0);
  vox.status.assign(grid.cell_count(), CellStatus::prefilter_only);
  classify_cells(engine, pre, vox, level, opt.budget, nullptr);

  if (!opt.refine) {
    ExtractResult res{std::move(vox), {}};
    res.mesh = mesh_from_voxels(res.voxels, level);
    return res;
  }

  // One refinement level: keep the coarse classification except across the
  // in-set boundary, where subcells are re-confirmed at half spacing.
  GridSpec fine;
  fine.origin = grid.origin;
  fine.spacing = grid.spacing / 2.0;
  fine.dims = grid.dims * 2;
  VoxelGrid fvox;
  fvox.grid = fine;
  fvox.depth.assign(fine.cell_count(), 0);
  fvox.status.assign(fine.cell_count(), CellStatus::prefilter_only);
  fvox.exact_queries = vox.exact_queries;
  fvox.budget_exhausted = vox.budget_exhausted;

  auto coarse_in = [&](int i, int j, int k) {
    if (i < 0 || j < 0 || k < 0 || i >= grid.dims.x() || j >= grid.dims.y() ||
        k >= grid.dims.z())
      return false;
    return vox.in_set(grid.index(i, j, k), level);
  };
  std::vector<long> boundary_fine;
  for (int k = 0; k < grid.dims.z(); ++k)
    for (int j = 0; j < grid.dims.y(); ++j)
      for (int i = 0; i < grid.dims.x(); ++i) {
        const bool in = coarse_in(i, j, k);
        bool boundary = false;
        static const int nb[6][3] = {{1, 0, 0}, {-1, 0, 0}, {0, 1, 0},
                                     {0, -1, 0}, {0, 0, 1}, {0, 0, -1}};
        for (const auto& d : nb)
          if (coarse_in(i + d[0], j + d[1], k + d[2]) != in) { boundary = true; break; }
        const long cidx = grid.index(i, j, k);
        for (int dz = 0; dz < 2; ++dz)
          for (int dy = 0; dy < 2; ++dy)
            for (int dx = 0; dx < 2; ++dx) {
              const long fidx = fine.index(2 * i + dx, 2 * j + dy, 2 * k + dz);
              if (boundary) {
                boundary_fine.push_back(fidx);
              } else {
                fvox.status[fidx] = vox.status[cidx];
                fvox.depth[fidx] = vox.depth[cidx];
              }
            }
      }
  classify_cells(engine, pre, fvox, level, opt.budget, &boundary_fine);

  ExtractResult res{std::move(fvox), {}};
  res.mesh = mesh_from_voxels(res.voxels, level);
  return res;
}

int hull_number(const PolyLink& link, const GridSpec& grid, const Tolerance& tol,
                const ExtractOptions& opt) {
  // Levels above the bridge number are provably empty, so scan down from it.
  const int cap = std::max(1, bridge_superbridge(link, tol).bridge);
  ExtractOptions o = opt;
  o.refine = false;
  for (int n = cap; n >= 1; --n) {
    const auto res = extract_hull(link, n, grid, o, tol);
    if (res.voxels.count_in_set(n) > 0) return n;
  }
  return 0;
}

}  // namespace hullkit
