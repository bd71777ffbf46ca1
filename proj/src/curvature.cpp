#include "hullkit/curvature.hpp"

#include <algorithm>

#include "hullkit/hull.hpp"
#include "hullkit/plane_cut.hpp"
#include "hullkit/rng.hpp"

namespace hullkit {

namespace {

// Angle between two vectors via atan2 of cross/dot; stays accurate near 0
// and pi where acos does not.
double angle_between(const Vec3& a, const Vec3& b) {
  return std::atan2(a.cross(b).norm(), a.dot(b));
}

}  // namespace

double total_curvature(const PolyLoop& loop) {
  double sum = 0.0;
  for (int i = 0; i < loop.size(); ++i) {
    const Vec3 in = loop.edge_vector(i - 1);
    const Vec3 out = loop.edge_vector(i);
    sum += angle_between(in, out);
  }
  return sum;
}

double total_curvature(const PolyLink& link) {
  double sum = 0.0;
  for (const auto& loop : link.loops) sum += total_curvature(loop);
  return sum;
}

ConeAngle cone_angle(const Vec3& p, const PolyLink& link, const Tolerance& tol) {
  for (const auto& loop : link.loops) {
    for (int i = 0; i < loop.size(); ++i) {
      const Vec3 a = loop.vertex(i);
      const Vec3 ab = loop.edge_vector(i);
      const double len2 = ab.squaredNorm();
      double t = len2 > 0 ? ab.dot(p - a) / len2 : 0.0;
      t = std::clamp(t, 0.0, 1.0);
      if ((p - (a + t * ab)).norm() <= tol.eps_abs)
        throw DegenerateQueryError("cone_angle: apex lies on the link");
    }
  }
  ConeAngle res;
  res.apex = p;
  for (const auto& loop : link.loops)
    for (int i = 0; i < loop.size(); ++i)
      res.angle += angle_between(loop.vertex(i) - p, loop.vertex(i + 1) - p);
  return res;
}

double crofton_estimate(const Vec3& p, const PolyLink& link, int n_samples,
                        std::uint64_t seed, const Tolerance& tol) {
  if (n_samples < 1) throw std::invalid_argument("crofton_estimate: n_samples >= 1");
  Rng rng(seed);
  long long total = 0;
  for (int k = 0; k < n_samples; ++k) {
    const Plane plane = Plane::through_point(rng.unit_vector(), p);
    total += cut_count(link, plane, tol).total;
  }
  return M_PI * static_cast<double>(total) / n_samples;
}

int height_maxima(const PolyLink& link, const Vec3& u, const Tolerance& tol) {
  int maxima = 0;
  std::vector<double> h;
  for (const auto& loop : link.loops) {
    h.clear();
    for (const auto& v : loop.vertices) h.push_back(u.dot(v));
    // Merge plateaus: collapse cyclic runs of heights equal within tolerance.
    std::vector<double> r;
    for (double x : h) {
      if (r.empty() || std::abs(x - r.back()) > tol.eps_abs) r.push_back(x);
      else r.back() = std::max(r.back(), x);
    }
    while (r.size() > 1 && std::abs(r.front() - r.back()) <= tol.eps_abs) r.pop_back();
    const int m = static_cast<int>(r.size());
    if (m < 2) return -1;  // loop degenerate along u
    for (int i = 0; i < m; ++i) {
      const double prev = r[(i + m - 1) % m];
      const double next = r[(i + 1) % m];
      if (r[i] > prev && r[i] > next) ++maxima;
    }
  }
  return maxima;
}

BridgeResult bridge_superbridge(const PolyLink& link, const Tolerance& tol) {
  // Candidate directions sampling every face of the edge-vector arrangement.
  std::vector<Vec3> edges;
  for (const auto& loop : link.loops)
    for (int i = 0; i < loop.size(); ++i) edges.push_back(loop.edge_vector(i));

  std::vector<Vec3> dirs;
  const int ne = static_cast<int>(edges.size());
  dirs.reserve(2 * ne * (ne - 1) + 26);
  const double c = std::cos(kEpsDir), s = std::sin(kEpsDir);
  for (int i = 0; i < ne; ++i) {
    for (int j = i + 1; j < ne; ++j) {
      const Vec3 cross = edges[i].cross(edges[j]);
      const double cn = cross.norm();
      if (cn <= tol.eps_rel * edges[i].norm() * edges[j].norm()) continue;
      const Vec3 u0 = cross / cn;
      const Vec3 a = edges[i].normalized();
      const Vec3 b = edges[j].normalized();
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
  for (const Vec3& u : fibonacci_sphere(256)) dirs.push_back(u);
  detail::append_pencil_candidates(edges, dirs);

  BridgeResult res;
  bool first = true;
  for (const Vec3& u : dirs) {
    const int m = height_maxima(link, u, tol);
    if (m < 0) continue;  // degenerate face, excluded
    if (first || m < res.bridge) { res.bridge = m; res.witness_min = u; }
    if (first || m > res.superbridge) { res.superbridge = m; res.witness_max = u; }
    first = false;
  }
  return res;
}

}  // namespace hullkit
