#pragma once

#include <cstdint>
#include <string>

#include "hullkit/types.hpp"

namespace hullkit {

inline constexpr std::uint64_t kDefaultFixtureSeed = 97531;

/// A generated test link together with its provenance, so reports and files
/// can carry the construction parameters.
struct Fixture {
  PolyLink link;
  std::string generator;
  int samples = 0;
  std::uint64_t seed = 0;
  double perturbation = 0.0;  // absolute perturbation radius applied
  double separation = 0.0;    // composite fixture only
};

// All fixtures perturb their vertices by 1e-7 x diameter with the recorded
// seed to break symmetry ties. Planar fixtures (circle, Hopf components,
// two-circle unlink) are perturbed within their own supporting plane, so the
// exactly-planar structure that their hull geometry relies on is preserved.

/// Regular n-gon of radius 1 in the z = 0 plane.
Fixture make_circle(int n, std::uint64_t seed = kDefaultFixtureSeed);

/// Polygonal trefoil sampled from
/// ((2+cos 3t) cos 2t, (2+cos 3t) sin 2t, sin 3t).
Fixture make_trefoil(int n, std::uint64_t seed = kDefaultFixtureSeed);

/// Hopf link: unit circle in the xy-plane about the origin, unit circle in
/// the xz-plane about (1,0,0). The convex hulls meet along x in [0,1] on the
/// x-axis.
Fixture make_hopf(int n, std::uint64_t seed = kDefaultFixtureSeed);

/// Two coplanar unit circles centered (-1.5,0,0) and (1.5,0,0) in z = 0.
Fixture make_two_circle_unlink(int n, std::uint64_t seed = kDefaultFixtureSeed);

/// Connect sum of two trefoils, each in a two-bridge frame, stacked along z
/// with the given vertical gap between them. The splice removes the top
/// vertex of the lower summand and the bottom vertex of the upper one, so
/// the z height function has exactly three maxima.
Fixture make_composite_trefoils(int n, double separation = 6.0,
                                std::uint64_t seed = kDefaultFixtureSeed);

/// Dispatcher for the CLI: name in {circle, trefoil, hopf, two-circle,
/// composite}.
Fixture make_fixture(const std::string& name, int n, double separation = 6.0,
                     std::uint64_t seed = kDefaultFixtureSeed);

}  // namespace hullkit
