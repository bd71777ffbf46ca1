#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "hullkit/plane_cut.hpp"
#include "hullkit/types.hpp"

namespace hullkit {

// Membership oracle for the n-th hull: the minimal convention-correct cut
// count over all planes through a query point. The count is piecewise
// constant on the open faces of the arrangement of great circles
// {u : dot(v_i - p, u) = 0} on the direction sphere, and any small
// perturbation of a degenerate plane never increases the count, so the
// minimum over all planes is attained on an open face. Every face of an
// arrangement of two or more distinct great circles touches an arrangement
// vertex, and the four rotations of each vertex direction sample all its
// incident faces; a lattice fallback covers arrangements with fewer circles.

struct SampledInfo {
  int n_samples = 0;
  std::uint64_t seed = 0;
};

struct HullQuery {
  Vec3 point = Vec3::Zero();
  int min_count = 0;
  Plane witness;
  std::optional<SampledInfo> sampled;  // empty for method = exact

  bool exact() const { return !sampled.has_value(); }
  int depth() const { return min_count / 2; }
};

/// Candidate plane normals through p that touch every face of the direction
/// arrangement. Throws DegenerateQueryError when p coincides with a vertex.
std::vector<Vec3> candidate_directions(const Vec3& p, const PolyLink& link,
                                       const Tolerance& tol);

HullQuery min_cut_exact(const Vec3& p, const PolyLink& link, const Tolerance& tol);

HullQuery min_cut_sampled(const Vec3& p, const PolyLink& link, int n_samples,
                          std::uint64_t seed, const Tolerance& tol);

bool in_hull(const Vec3& p, const PolyLink& link, int n, const Tolerance& tol);
int hull_depth(const Vec3& p, const PolyLink& link, const Tolerance& tol);

/// Axis-aligned cubic-cell grid. Cell (i,j,k) has center
/// origin + (i+1/2, j+1/2, k+1/2) * spacing. cover() places one layer of
/// cell centers per axis exactly on the bounding-box midplane, which lets
/// exact confirmation reach hull components of zero thickness on the
/// symmetric fixtures.
struct GridSpec {
  Vec3 origin = Vec3::Zero();
  double spacing = 1.0;
  Eigen::Vector3i dims = Eigen::Vector3i(32, 32, 32);

  static GridSpec cover(const PolyLink& link, const Eigen::Vector3i& dims);
  static GridSpec cover(const PolyLink& link, int dims) {
    return cover(link, Eigen::Vector3i(dims, dims, dims));
  }

  long cell_count() const { return long(dims.x()) * dims.y() * dims.z(); }
  long index(int i, int j, int k) const {
    return (long(k) * dims.y() + j) * dims.x() + i;
  }
  Vec3 cell_center(int i, int j, int k) const {
    return origin + spacing * Vec3(i + 0.5, j + 0.5, k + 0.5);
  }
  bool covers(const Eigen::AlignedBox3d& box) const;
};

enum class CellStatus : std::uint8_t { prefilter_only = 0, confirmed_exact = 1 };

struct VoxelGrid {
  GridSpec grid;
  std::vector<std::int16_t> depth;   // exact for confirmed cells, else an upper bound
  std::vector<CellStatus> status;
  bool budget_exhausted = false;
  long exact_queries = 0;

  bool in_set(long idx, int level) const {
    return status[idx] == CellStatus::confirmed_exact && depth[idx] >= level;
  }
  long count_in_set(int level) const;
};

/// Quad boundary mesh between cells of depth >= level and the rest.
struct HullMesh {
  int level = 0;
  std::vector<Vec3> vertices;
  std::vector<std::array<int, 4>> quads;
};

struct ExtractOptions {
  long budget = 2'000'000;  // max exact-oracle invocations
  int prefilter_dirs = 512;
  bool refine = false;  // one extra level: split boundary cells, re-confirm
};

struct ExtractResult {
  VoxelGrid voxels;
  HullMesh mesh;
};

ExtractResult extract_hull(const PolyLink& link, int level, const GridSpec& grid,
                           const ExtractOptions& opt, const Tolerance& tol);

/// Largest level with a confirmed nonempty voxel set on the given grid; a
/// grid-resolution lower bound for the true hull number. Capped above by the
/// bridge number, so only a few extraction passes run.
int hull_number(const PolyLink& link, const GridSpec& grid, const Tolerance& tol,
                const ExtractOptions& opt = {});

HullMesh mesh_from_voxels(const VoxelGrid& voxels, int level);

namespace detail {

/// Candidates for the faces of the arrangement of great circles dual to the
/// given vectors. When the vectors are (nearly) coplanar the circles form a
/// pencil through a common pole and the faces are lunes without generic
/// vertices; the midpoints of the sorted in-plane perpendiculars enumerate
/// those lunes exactly. Appended unconditionally: for spatial
/// configurations they are ordinary extra candidates.
void append_pencil_candidates(const std::vector<Vec3>& vectors,
                              std::vector<Vec3>& out);

/// Reusable per-link state for batches of exact queries.
class HullEngine {
public:
  HullEngine(const PolyLink& link, const Tolerance& tol);

  HullQuery min_cut_exact(const Vec3& p) const;
  std::vector<Vec3> candidate_directions(const Vec3& p) const;
  /// Convention-correct total count for the plane through p with normal u.
  int count(const Vec3& p, const Vec3& u) const;
  /// True when p lies within tolerance of a vertex or edge of the link.
  bool on_link(const Vec3& p) const;

private:
  const PolyLink* link_;
  Tolerance tol_;
  Eigen::Matrix3Xd verts_;       // all vertices, by loop
  std::vector<int> loop_begin_;  // loop i occupies columns [begin[i], begin[i+1])
};

}  // namespace detail

}  // namespace hullkit
