#include "hullkit/plane_cut.hpp"

#include <algorithm>
#include <cassert>

namespace hullkit {

namespace {

int snap(double d, double eps) { return std::abs(d) <= eps ? 0 : (d > 0 ? 1 : -1); }

}  // namespace

std::vector<CutComponent> cut_components(const PolyLoop& loop, const Plane& plane,
                                         const Tolerance& tol, int loop_index) {
  const int n = loop.size();
  std::vector<double> dist(n);
  std::vector<int> sign(n);
  bool any_nonzero = false;
  for (int i = 0; i < n; ++i) {
    dist[i] = plane.signed_distance(loop.vertices[i]);
    sign[i] = snap(dist[i], tol.eps_abs);
    any_nonzero |= sign[i] != 0;
  }

  std::vector<CutComponent> comps;
  if (!any_nonzero) {
    comps.push_back({loop_index, 0.0, static_cast<double>(n),
                     ComponentKind::whole_loop_in_plane, 1, 1});
    return comps;
  }

  // Transverse interior-edge crossings: strict sign change across an edge.
  for (int i = 0; i < n; ++i) {
    const int j = loop.mod(i + 1);
    if (sign[i] != 0 && sign[j] != 0 && sign[i] != sign[j]) {
      const double t = dist[i] / (dist[i] - dist[j]);
      CutComponent c;
      c.loop_index = loop_index;
      c.span_begin = c.span_end = i + t;
      c.kind = ComponentKind::transverse_edge;
      if (sign[i] < 0) c.up = 1; else c.down = 1;
      comps.push_back(c);
    }
  }

  // Maximal runs of on-plane vertices (with their connecting on-plane edges),
  // classified by the strict sides of the preceding and following arcs.
  // Scanning from a strict vertex keeps runs from wrapping the scan seam.
  int first_strict = 0;
  while (sign[first_strict] == 0) ++first_strict;
  int k = 1;
  while (k <= n) {
    const int i = loop.mod(first_strict + k);
    if (sign[i] != 0) { ++k; continue; }
    int len = 1;
    while (sign[loop.mod(first_strict + k + len)] == 0) ++len;
    const int prev = sign[loop.mod(first_strict + k - 1)];
    const int next = sign[loop.mod(first_strict + k + len)];
    CutComponent c;
    c.loop_index = loop_index;
    c.span_begin = i;
    c.span_end = i + len - 1;  // unwrapped; may exceed n-1
    if (prev < 0 && next > 0) {
      c.kind = ComponentKind::upward_vertexrun;
      c.up = 1;
    } else if (prev > 0 && next < 0) {
      c.kind = ComponentKind::downward_vertexrun;
      c.down = 1;
    } else {
      c.kind = ComponentKind::glancing_vertexrun;
      c.up = c.down = 1;
    }
    comps.push_back(c);
    k += len;
  }
  std::sort(comps.begin(), comps.end(), [](const CutComponent& a, const CutComponent& b) {
    return a.span_begin < b.span_begin;
  });
  return comps;
}

int count_from_distances(std::span<const double> dist, double eps_abs) {
  const int n = static_cast<int>(dist.size());
  // Walk the cyclic snapped sign sequence: opposite consecutive strict signs
  // contribute 1, equal strict signs separated by an on-plane run contribute
  // 2 (glancing), equal signs on a plain edge contribute 0.
  int first_strict = -1;
  for (int i = 0; i < n; ++i) {
    if (std::abs(dist[i]) > eps_abs) { first_strict = i; break; }
  }
  if (first_strict < 0) return 2;  // whole loop in the plane

  int count = 0;
  int prev_sign = dist[first_strict] > 0 ? 1 : -1;
  bool gap = false;  // on-plane run since the previous strict vertex
  for (int k = 1; k <= n; ++k) {
    const int i = (first_strict + k) % n;
    const double d = dist[i];
    if (std::abs(d) <= eps_abs) { gap = true; continue; }
    const int s = d > 0 ? 1 : -1;
    if (s != prev_sign) count += 1;
    else if (gap) count += 2;
    prev_sign = s;
    gap = false;
  }
  return count;
}

CutCount cut_count(const PolyLink& link, const Plane& plane, const Tolerance& tol) {
  CutCount cc;
  cc.per_loop.resize(link.loop_count(), 0);
  for (int li = 0; li < link.loop_count(); ++li) {
    const auto comps = cut_components(link.loops[li], plane, tol, li);
    for (const auto& c : comps) {
      cc.per_loop[li] += c.contribution();
      cc.up += c.up;
      cc.down += c.down;
      if (c.kind == ComponentKind::whole_loop_in_plane) cc.degenerate = true;
    }
    cc.total += cc.per_loop[li];
  }
  assert(cc.up == cc.down);
  return cc;
}

int DirectionProfile::count_at(double offset, double guard, bool* near_breakpoint) const {
  if (near_breakpoint) *near_breakpoint = false;
  const int m = static_cast<int>(breakpoints.size());
  if (m == 0) return 0;
  if (offset < cluster_lo.front() - guard || offset > cluster_hi.back() + guard) return 0;
  const auto it = std::upper_bound(cluster_lo.begin(), cluster_lo.end(), offset + guard);
  const int k = static_cast<int>(it - cluster_lo.begin()) - 1;  // >= 0 here
  const int nints = static_cast<int>(counts.size());
  if (offset <= cluster_hi[k] + guard) {
    // Inside the degenerate band of cluster k; the interval count does not
    // apply there, report the larger neighbour.
    if (near_breakpoint) *near_breakpoint = true;
    const int left = (k >= 1 && k - 1 < nints) ? counts[k - 1] : 0;
    const int right = k < nints ? counts[k] : 0;
    return std::max(left, right);
  }
  return k < nints ? counts[k] : 0;
}

DirectionProfile sweep_profile(const PolyLink& link, const Vec3& direction,
                               const Tolerance& tol) {
  if (!(std::abs(direction.norm() - 1.0) <= 1e-9))
    throw std::invalid_argument("sweep_profile: direction must be unit length");

  DirectionProfile prof;
  prof.direction = direction;

  std::vector<double> heights;
  heights.reserve(link.total_vertices());
  for (const auto& loop : link.loops)
    for (const auto& v : loop.vertices) heights.push_back(direction.dot(v));
  if (heights.empty()) return prof;

  std::vector<double> sorted = heights;
  std::sort(sorted.begin(), sorted.end());

  // Chain heights closer than the merge width into clusters; inter-cluster
  // gaps then exceed the width, so interval midpoints are strictly off every
  // vertex height even after snapping.
  const double merge = 4.0 * tol.eps_abs;
  std::vector<double> lo, hi;
  lo.push_back(sorted[0]);
  hi.push_back(sorted[0]);
  for (size_t i = 1; i < sorted.size(); ++i) {
    if (sorted[i] - hi.back() <= merge) hi.back() = sorted[i];
    else { lo.push_back(sorted[i]); hi.push_back(sorted[i]); }
  }
  const int m = static_cast<int>(lo.size());
  prof.cluster_lo = lo;
  prof.cluster_hi = hi;
  prof.breakpoints.resize(m);
  for (int k = 0; k < m; ++k) prof.breakpoints[k] = 0.5 * (lo[k] + hi[k]);

  auto cluster_of = [&](double h) {
    const auto it = std::upper_bound(lo.begin(), lo.end(), h + merge * 0.5);
    return static_cast<int>(it - lo.begin()) - 1;
  };

  // An edge spanning clusters [a, b] crosses every generic offset between
  // them; accumulate with a difference array over the m-1 gaps.
  std::vector<int> diff(m + 1, 0);
  for (const auto& loop : link.loops) {
    for (int i = 0; i < loop.size(); ++i) {
      const double ha = direction.dot(loop.vertex(i));
      const double hb = direction.dot(loop.vertex(i + 1));
      int ca = cluster_of(ha), cb = cluster_of(hb);
      if (ca > cb) std::swap(ca, cb);
      if (ca < cb) { diff[ca] += 1; diff[cb] -= 1; }
    }
  }
  prof.counts.assign(std::max(0, m - 1), 0);
  int running = 0;
  for (int k = 0; k < m - 1; ++k) {
    running += diff[k];
    prof.counts[k] = running;
  }
  return prof;
}

}  // namespace hullkit
