#pragma once

#include <cstdint>

#include "hullkit/types.hpp"

namespace hullkit {

struct ConeAngle {
  Vec3 apex = Vec3::Zero();
  double angle = 0.0;  // radians, >= 0
};

struct BridgeResult {
  int bridge = 0;      // min over directions of the number of height maxima
  int superbridge = 0; // max over directions
  Vec3 witness_min = Vec3::UnitZ();
  Vec3 witness_max = Vec3::UnitZ();
};

/// Milnor total curvature: sum of exterior turning angles at the vertices.
double total_curvature(const PolyLoop& loop);
double total_curvature(const PolyLink& link);

/// Length of the radial projection of the link to the unit sphere about p.
/// Throws DegenerateQueryError when p lies on the link.
ConeAngle cone_angle(const Vec3& p, const PolyLink& link, const Tolerance& tol);

/// Integral-geometry estimate of the cone angle: pi times the mean cut count
/// over seeded random planes through p.
double crofton_estimate(const Vec3& p, const PolyLink& link, int n_samples,
                        std::uint64_t seed, const Tolerance& tol);

/// Exact bridge and superbridge numbers of the embedding. The count of
/// height maxima is constant on the open faces of the arrangement of great
/// circles dual to the edge vectors; faces are sampled by perturbed pairwise
/// cross products exactly as in the hull oracle.
BridgeResult bridge_superbridge(const PolyLink& link, const Tolerance& tol);

/// Number of cyclic local height maxima along direction u, plateaus merged.
/// Returns -1 for degenerate directions (a loop with all heights equal).
int height_maxima(const PolyLink& link, const Vec3& u, const Tolerance& tol);

}  // namespace hullkit
