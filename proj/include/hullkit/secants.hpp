#pragma once

#include <array>
#include <string>
#include <vector>

#include "hullkit/types.hpp"

namespace hullkit {

/// Oriented line with unit direction and Pluecker coordinates
/// (direction, moment = point x direction); dot(direction, moment) = 0.
struct LineL {
  Vec3 point = Vec3::Zero();      // some point on the line
  Vec3 direction = Vec3::UnitX(); // unit
  Eigen::Matrix<double, 6, 1> pluecker() const {
    Eigen::Matrix<double, 6, 1> p;
    p.head<3>() = direction;
    p.tail<3>() = point.cross(direction);
    return p;
  }
  static LineL through_points(const Vec3& a, const Vec3& b);
  Vec3 at(double t) const { return point + t * direction; }
};

/// Reciprocal (side) product; zero iff the lines are coplanar.
double side_product(const LineL& a, const LineL& b);

/// Intersection of the link with a secant line.
struct SecantHit {
  int loop_index = 0;
  int edge_index = 0;
  double edge_param = 0.0;  // position within the edge, in [0,1]
  double knot_param = 0.0;  // arclength along the loop
  double line_param = 0.0;  // position along the line
  Vec3 point = Vec3::Zero();
};

struct Quadrisecant {
  LineL line;
  std::array<SecantHit, 4> hits;  // sorted by line_param
  std::string pattern;            // knot-order permutation, or component word
  bool alternating = false;
  std::string reason;  // why alternating is false/undefined, when relevant
  bool multi_component = false;

  /// Mid-segment endpoints: between the 2nd and 3rd hits in line order.
  std::pair<Vec3, Vec3> midsegment() const { return {hits[1].point, hits[2].point}; }
};

/// A secant line meeting the link five or more times (all of its edge
/// 4-subsets collapse to this one record).
struct MultiSecant {
  LineL line;
  std::vector<SecantHit> hits;
};

struct TransversalResult {
  std::vector<LineL> lines;     // 0, 1 or 2 real transversals
  bool degenerate_family = false;  // infinitely many transversals
  double discriminant = 0.0;
};

/// Lines meeting all four given lines: the side products give four linear
/// conditions on Pluecker space, whose kernel meets the null quadric in up
/// to two real lines.
TransversalResult transversals_of_four_lines(const LineL& l1, const LineL& l2,
                                             const LineL& l3, const LineL& l4,
                                             const Tolerance& tol);

struct QuadrisecantSet {
  std::vector<Quadrisecant> quads;       // clean interior-hit quadrisecants
  std::vector<Quadrisecant> unstable;    // vertex-grazing or tied hits
  std::vector<MultiSecant> higher;       // lines with five or more hits
  long degenerate_quadruples = 0;        // skipped coplanar/parallel systems
  long candidate_quadruples = 0;
};

QuadrisecantSet quadrisecants(const PolyLink& link, const Tolerance& tol);

/// Fill pattern / alternating flag of a quadrisecant whose hits are set.
void classify_order(Quadrisecant& q, const PolyLink& link, const Tolerance& tol);

/// True iff k interior samples of the mid-segment all have exact hull depth
/// at least 2.
bool midsegment_depth_check(const Quadrisecant& q, const PolyLink& link,
                            int k_samples, const Tolerance& tol);

}  // namespace hullkit
