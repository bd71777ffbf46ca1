#pragma once

#include <vector>

#include "hullkit/types.hpp"

namespace hullkit {

/// Locus on a loop: parameter t in [0,1] along edge `edge`.
struct LoopLocus {
  int edge = 0;
  double t = 0.0;
};

/// Proper subarc of a loop, oriented along stored vertex order.
struct ArcSpec {
  int loop_index = 0;
  LoopLocus start;
  LoopLocus end;
};

/// Decomposition of a loop against a half-space: the maximal arcs lying
/// strictly outside the closure of H, with arc endpoints on the boundary
/// plane. On-plane vertices count as inside. whole_loop_outside is set when
/// no vertex lies in the closure at all (then no boundary arcs exist).
struct OutsideArcs {
  std::vector<ArcSpec> arcs;
  bool whole_loop_outside = false;
};

/// Replace the subarc start..end (forward along the loop) by the straight
/// chord between its endpoints. Consecutive near-duplicate vertices in the
/// result are merged. Throws ValidationError when the arc is degenerate or
/// spans (nearly) the whole loop.
PolyLoop replace_subarc(const PolyLoop& loop, const ArcSpec& arc, const Tolerance& tol);

OutsideArcs outside_arcs(const PolyLoop& loop, const Halfspace& H, const Tolerance& tol,
                         int loop_index = 0);

/// True iff at most one arc of the loop lies outside the closure of H.
/// Unknottedness of that arc is not checked; this is only the combinatorial
/// part of essential containment.
bool singly_outside(const PolyLoop& loop, const Halfspace& H, const Tolerance& tol);

/// Clip the loop to H: replace the single outside arc (if any) by the
/// segment in the boundary plane. Requires singly_outside.
PolyLoop clip_to_halfspace(const PolyLoop& loop, const Halfspace& H, const Tolerance& tol);

}  // namespace hullkit
