#pragma once

#include <span>
#include <vector>

#include "hullkit/types.hpp"

namespace hullkit {

// Intersection counting for a polygonal link against a plane.
//
// The count is the number of connected components of loop ∩ plane in the
// domain circle, where a component preceded and followed by arcs on the same
// side (glancing) counts twice, once in each direction, and a loop lying
// entirely in the plane counts twice. A polygon meets a plane in finitely
// many components, so the infinite-intersection convention for curves maps
// here to the whole_loop_in_plane flag plus on-plane vertex/edge runs; runs
// are maximal over the snapped sign sequence.

enum class ComponentKind {
  transverse_edge,
  upward_vertexrun,
  downward_vertexrun,
  glancing_vertexrun,
  whole_loop_in_plane,
};

/// One connected component of loop ∩ plane. Loci along the loop are encoded
/// as vertex index + edge parameter: locus v.t is the point at parameter t of
/// edge v. For runs that wrap past vertex 0 span_end exceeds the vertex count
/// (unwrapped coordinate).
struct CutComponent {
  int loop_index = 0;
  double span_begin = 0.0;
  double span_end = 0.0;
  ComponentKind kind = ComponentKind::transverse_edge;
  int up = 0;
  int down = 0;

  int contribution() const { return up + down; }
};

struct CutCount {
  int total = 0;
  std::vector<int> per_loop;
  int up = 0;
  int down = 0;
  bool degenerate = false;  // some loop lies entirely in the plane
};

/// Piecewise-constant intersection counts along a sweep direction. counts[k]
/// is the cut count of any plane with offset strictly between breakpoints k
/// and k+1; offsets outside [front, back] give zero. Vertex heights closer
/// than the merge width are chained into one breakpoint; cluster_lo/hi keep
/// the extent of each merged cluster so callers can stay clear of the
/// degenerate band around a breakpoint.
struct DirectionProfile {
  Vec3 direction = Vec3::UnitZ();
  std::vector<double> breakpoints;  // cluster representatives, ascending
  std::vector<double> cluster_lo;
  std::vector<double> cluster_hi;
  std::vector<int> counts;  // breakpoints.size() - 1 interval counts

  /// Count for a generic offset; sets *near_breakpoint when the offset is
  /// within guard of a cluster (where the interval count does not apply).
  int count_at(double offset, double guard, bool* near_breakpoint = nullptr) const;
};

std::vector<CutComponent> cut_components(const PolyLoop& loop, const Plane& plane,
                                         const Tolerance& tol, int loop_index = 0);

CutCount cut_count(const PolyLink& link, const Plane& plane, const Tolerance& tol);

/// Total count only, from precomputed signed distances of one loop's
/// vertices to the plane. This is the hot path shared by the hull oracle.
int count_from_distances(std::span<const double> dist, double eps_abs);

DirectionProfile sweep_profile(const PolyLink& link, const Vec3& direction,
                               const Tolerance& tol);

}  // namespace hullkit
