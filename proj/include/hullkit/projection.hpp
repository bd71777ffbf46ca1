#pragma once

#include <vector>

#include "hullkit/hull.hpp"
#include "hullkit/types.hpp"

namespace hullkit {

struct PolyLoop2 {
  std::vector<Vec2> vertices;
  int size() const { return static_cast<int>(vertices.size()); }
  const Vec2& vertex(int i) const {
    const int n = size();
    return vertices[((i % n) + n) % n];
  }
};

struct PolyLink2 {
  std::vector<PolyLoop2> loops;
};

/// Orthogonal projection along `direction`, with the in-plane basis recorded
/// so 3D points can be mapped consistently.
struct ProjectedLink {
  PolyLink2 link2;
  Vec3 direction = Vec3::UnitZ();
  Vec3 basis_u = Vec3::UnitX();
  Vec3 basis_v = Vec3::UnitY();
  std::vector<bool> collapsed;  // loop projects to (nearly) a segment

  Vec2 project_point(const Vec3& p) const { return Vec2(basis_u.dot(p), basis_v.dot(p)); }
};

ProjectedLink project(const PolyLink& link, const Vec3& direction, const Tolerance& tol);

struct Line2 {
  Vec2 normal = Vec2::UnitY();  // unit
  double offset = 0.0;
  double signed_distance(const Vec2& p) const { return normal.dot(p) - offset; }
};

struct HullQuery2 {
  Vec2 point = Vec2::Zero();
  int min_count = 0;
  Line2 witness;
  int depth() const { return min_count / 2; }
};

/// Convention-correct count of loop crossings of a line (the 2D analogue of
/// the plane count: lines are the hyperplanes of the plane).
int cut_count_2d(const PolyLink2& link, const Line2& line, const Tolerance& tol);

/// Exact minimum count over all lines through p2. Candidate normals are the
/// perpendiculars of the vertex directions, rotated to either side.
HullQuery2 min_cut_2d(const Vec2& p2, const PolyLink2& link, const Tolerance& tol);

enum class CheckOutcome { passed, failed, vacuous };

struct LemmaCheck {
  CheckOutcome outcome = CheckOutcome::vacuous;
  int checked = 0;
  bool ok() const { return outcome != CheckOutcome::failed; }
  bool vacuous() const { return outcome == CheckOutcome::vacuous; }
};

/// Samples confirmed 3D cells of depth >= n, projects them, and verifies 2D
/// depth >= n for each (the projection lemma as an executable check).
LemmaCheck projection_lemma_check(const PolyLink& link, const Vec3& direction, int n,
                                  int k_samples, const Tolerance& tol,
                                  const VoxelGrid* cached = nullptr);

/// Verifies depth(A) >= m and depth(B) >= n implies depth(A u B) >= m+n on
/// sampled points of the voxel intersection, plus any explicit probe points.
LemmaCheck union_lemma_check(const PolyLink& A, const PolyLink& B, int m, int n,
                             int k_samples, const Tolerance& tol,
                             const std::vector<Vec3>& extra_points = {});

}  // namespace hullkit
