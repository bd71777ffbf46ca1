#pragma once

#include <Eigen/Dense>
#include <Eigen/Geometry>

#include <cmath>
#include <string>
#include <vector>

#include "hullkit/errors.hpp"

namespace hullkit {

using Scalar = double;
using Vec3 = Eigen::Vector3d;
using Vec2 = Eigen::Vector2d;
using Mat3 = Eigen::Matrix3d;

// Fixed constants shared by all modules. The data-dependent tolerance lives
// in Tolerance below.
inline constexpr double kUnitNormalTol = 1e-12;  // |n|-1 allowed on stored planes
inline constexpr double kEpsDir = 1e-6;          // face-sampling rotation, radians
inline constexpr double kEpsParam = 1e-7;        // interiority margin for edge hits

enum class Side : int { below = -1, on = 0, above = 1 };

/// One closed polygonal loop. Vertices are cyclically ordered; the edge
/// (i, i+1 mod n) closes the loop. No parametrization is stored beyond
/// vertex order; arclength is computed on demand.
struct PolyLoop {
  std::vector<Vec3> vertices;

  PolyLoop() = default;
  explicit PolyLoop(std::vector<Vec3> v) : vertices(std::move(v)) {}

  int size() const { return static_cast<int>(vertices.size()); }
  const Vec3& vertex(int i) const { return vertices[mod(i)]; }
  int mod(int i) const {
    const int n = size();
    return ((i % n) + n) % n;
  }
  Vec3 edge_vector(int i) const { return vertex(i + 1) - vertex(i); }
  double edge_length(int i) const { return edge_vector(i).norm(); }

  /// Point at parameter t in [0,1] along edge i.
  Vec3 point_at(int edge, double t) const {
    return vertex(edge) + t * edge_vector(edge);
  }

  double perimeter() const {
    double s = 0;
    for (int i = 0; i < size(); ++i) s += edge_length(i);
    return s;
  }

  /// Cumulative arclength of vertex i from vertex 0 (size()+1 entries).
  std::vector<double> arclengths() const {
    std::vector<double> acc(size() + 1, 0.0);
    for (int i = 0; i < size(); ++i) acc[i + 1] = acc[i] + edge_length(i);
    return acc;
  }
};

/// A link: one or more disjoint closed loops, with optional per-loop labels.
struct PolyLink {
  std::vector<PolyLoop> loops;
  std::vector<std::string> labels;  // empty, or one label per loop

  PolyLink() = default;
  explicit PolyLink(std::vector<PolyLoop> l) : loops(std::move(l)) {}

  int loop_count() const { return static_cast<int>(loops.size()); }
  int total_vertices() const {
    int n = 0;
    for (const auto& l : loops) n += l.size();
    return n;
  }
  std::string label(int i) const {
    if (i < static_cast<int>(labels.size()) && !labels[i].empty()) return labels[i];
    std::string s;
    int k = i;
    do {
      s.insert(s.begin(), static_cast<char>('A' + k % 26));
      k = k / 26 - 1;
    } while (k >= 0);
    return s;
  }
};

inline Eigen::AlignedBox3d bounding_box(const PolyLink& link) {
  Eigen::AlignedBox3d box;
  for (const auto& loop : link.loops)
    for (const auto& v : loop.vertices) box.extend(v);
  return box;
}

inline double diameter(const PolyLink& link) {
  const auto box = bounding_box(link);
  return box.isEmpty() ? 0.0 : box.diagonal().norm();
}

/// Global tolerance policy. eps_abs is derived from the active link so that
/// all degeneracy decisions agree across modules.
struct Tolerance {
  double eps_rel = 1e-9;
  double eps_abs = 0.0;

  static Tolerance for_link(const PolyLink& link, double eps_rel = 1e-9) {
    if (!(eps_rel > 0)) throw std::invalid_argument("Tolerance: eps_rel must be > 0");
    Tolerance t;
    t.eps_rel = eps_rel;
    t.eps_abs = eps_rel * diameter(link);
    return t;
  }
  static Tolerance absolute(double eps_abs, double eps_rel = 1e-9) {
    Tolerance t;
    t.eps_rel = eps_rel;
    t.eps_abs = eps_abs;
    return t;
  }
};

/// Oriented plane {x : dot(normal, x) = offset} with unit normal.
struct Plane {
  Vec3 normal = Vec3::UnitZ();
  double offset = 0.0;

  static Plane from_normal_offset(const Vec3& n, double d) {
    const double len = n.norm();
    if (!(len > kUnitNormalTol) || !std::isfinite(len))
      throw std::invalid_argument("Plane: normal too close to zero");
    return Plane{n / len, d / len};
  }
  static Plane through_point(const Vec3& n, const Vec3& p) {
    const double len = n.norm();
    if (!(len > kUnitNormalTol) || !std::isfinite(len))
      throw std::invalid_argument("Plane: normal too close to zero");
    const Vec3 u = n / len;
    return Plane{u, u.dot(p)};
  }

  double signed_distance(const Vec3& p) const { return normal.dot(p) - offset; }
  Plane flipped() const { return Plane{-normal, -offset}; }
};

/// Open half-space on one side of a plane.
struct Halfspace {
  Plane plane;
  Side side = Side::above;  // above or below; never on

  /// Signed distance, positive strictly inside the open half-space.
  double inside_distance(const Vec3& p) const {
    const double d = plane.signed_distance(p);
    return side == Side::above ? d : -d;
  }
};

struct AffineMap {
  Mat3 linear = Mat3::Identity();
  Vec3 translation = Vec3::Zero();

  Vec3 apply(const Vec3& p) const { return linear * p + translation; }
  double determinant() const { return linear.determinant(); }
  bool invertible(const Tolerance& tol) const {
    return std::abs(determinant()) > tol.eps_rel;
  }
  AffineMap inverse() const {
    AffineMap inv;
    inv.linear = linear.inverse();
    inv.translation = -inv.linear * translation;
    return inv;
  }
};

/// Sign of dot(normal, p) - offset, snapped to Side::on within eps_abs.
inline Side classify_point(const Vec3& p, const Plane& plane, const Tolerance& tol) {
  if (!p.allFinite()) throw std::invalid_argument("classify_point: non-finite point");
  const double d = plane.signed_distance(p);
  if (std::abs(d) <= tol.eps_abs) return Side::on;
  return d > 0 ? Side::above : Side::below;
}

inline PolyLink affine_apply(const AffineMap& map, const PolyLink& link) {
  PolyLink out = link;
  for (auto& loop : out.loops)
    for (auto& v : loop.vertices) v = map.apply(v);
  return out;
}

struct Violation {
  enum class Kind { empty_link, too_few_vertices, duplicate_vertex, nonfinite };
  Kind kind;
  int loop_index = -1;  // -1 for link-level violations
  std::string detail;
};

/// Structural checks; violations are data, nothing throws.
std::vector<Violation> validate(const PolyLink& link, const Tolerance& tol);

}  // namespace hullkit
