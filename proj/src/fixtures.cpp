#include "hullkit/fixtures.hpp"

#include <algorithm>

#include "hullkit/rng.hpp"

namespace hullkit {

namespace {

void require_samples(int n) {
  if (n < 8) throw std::invalid_argument("fixture: need at least 8 samples per loop");
}

/// Perturb every vertex by up to `radius`, optionally constrained to the
/// plane spanned by in_plane_u/v (full 3D when both are zero).
void perturb(PolyLink& link, double radius, std::uint64_t seed,
             const std::vector<std::pair<Vec3, Vec3>>& planes = {}) {
  Rng rng(seed);
  for (int li = 0; li < link.loop_count(); ++li) {
    for (auto& v : link.loops[li].vertices) {
      if (li < static_cast<int>(planes.size())) {
        const auto& [u, w] = planes[li];
        v += radius * (rng.uniform(-1, 1) * u + rng.uniform(-1, 1) * w);
      } else {
        v += radius * Vec3(rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1));
      }
    }
  }
}

PolyLoop circle_loop(int n, const Vec3& center, const Vec3& axis_u, const Vec3& axis_v) {
  PolyLoop loop;
  loop.vertices.reserve(n);
  for (int k = 0; k < n; ++k) {
    const double t = 2.0 * M_PI * k / n;
    loop.vertices.push_back(center + std::cos(t) * axis_u + std::sin(t) * axis_v);
  }
  return loop;
}

std::vector<Vec3> trefoil_points(int n) {
  std::vector<Vec3> pts;
  pts.reserve(n);
  for (int k = 0; k < n; ++k) {
    const double t = 2.0 * M_PI * k / n;
    const double r = 2.0 + std::cos(3.0 * t);
    pts.emplace_back(r * std::cos(2.0 * t), r * std::sin(2.0 * t), std::sin(3.0 * t));
  }
  return pts;
}

}  // namespace

Fixture make_circle(int n, std::uint64_t seed) {
  require_samples(n);
  Fixture f;
  f.generator = "make_circle";
  f.samples = n;
  f.seed = seed;
  f.link.loops.push_back(circle_loop(n, Vec3::Zero(), Vec3::UnitX(), Vec3::UnitY()));
  f.perturbation = 1e-7 * diameter(f.link);
  perturb(f.link, f.perturbation, seed, {{Vec3::UnitX(), Vec3::UnitY()}});
  return f;
}

Fixture make_trefoil(int n, std::uint64_t seed) {
  require_samples(n);
  Fixture f;
  f.generator = "make_trefoil";
  f.samples = n;
  f.seed = seed;
  f.link.loops.emplace_back(trefoil_points(n));
  f.perturbation = 1e-7 * diameter(f.link);
  perturb(f.link, f.perturbation, seed);
  return f;
}

Fixture make_hopf(int n, std::uint64_t seed) {
  require_samples(n);
  Fixture f;
  f.generator = "make_hopf";
  f.samples = n;
  f.seed = seed;
  f.link.loops.push_back(circle_loop(n, Vec3::Zero(), Vec3::UnitX(), Vec3::UnitY()));
  f.link.loops.push_back(circle_loop(n, Vec3(1, 0, 0), Vec3::UnitX(), Vec3::UnitZ()));
  f.link.labels = {"A", "B"};
  f.perturbation = 1e-7 * diameter(f.link);
  perturb(f.link, f.perturbation, seed,
          {{Vec3::UnitX(), Vec3::UnitY()}, {Vec3::UnitX(), Vec3::UnitZ()}});
  return f;
}

Fixture make_two_circle_unlink(int n, std::uint64_t seed) {
  require_samples(n);
  Fixture f;
  f.generator = "make_two_circle_unlink";
  f.samples = n;
  f.seed = seed;
  f.link.loops.push_back(circle_loop(n, Vec3(-1.5, 0, 0), Vec3::UnitX(), Vec3::UnitY()));
  f.link.loops.push_back(circle_loop(n, Vec3(1.5, 0, 0), Vec3::UnitX(), Vec3::UnitY()));
  f.link.labels = {"A", "B"};
  f.perturbation = 1e-7 * diameter(f.link);
  perturb(f.link, f.perturbation, seed,
          {{Vec3::UnitX(), Vec3::UnitY()}, {Vec3::UnitX(), Vec3::UnitY()}});
  return f;
}

Fixture make_composite_trefoils(int n, double separation, std::uint64_t seed) {
  require_samples(n);
  if (!(separation > 0))
    throw std::invalid_argument("make_composite_trefoils: separation must be > 0");

  // Two-bridge frame: the y direction of the standard parametrization sees
  // exactly two height maxima, so rotate y onto z before stacking.
  auto frame = [](const Vec3& p) { return Vec3(p.x(), -p.z(), p.y()); };
  std::vector<Vec3> base = trefoil_points(n);
  std::vector<Vec3> t1(n);
  for (int i = 0; i < n; ++i) t1[i] = frame(base[i]);

  double zmin = t1[0].z(), zmax = t1[0].z();
  int imax = 0, imin = 0;
  for (int i = 0; i < n; ++i) {
    if (t1[i].z() > zmax) { zmax = t1[i].z(); imax = i; }
    if (t1[i].z() < zmin) { zmin = t1[i].z(); imin = i; }
  }
  const Vec3 offset(0, 0, (zmax - zmin) + separation);
  std::vector<Vec3> t2(n);
  for (int i = 0; i < n; ++i) t2[i] = t1[i] + offset;
  const int jmin = imin;  // t2 is a translate of t1

  // Splice: drop the apex of the lower copy and the nadir of the upper one,
  // then run the two open arcs in sequence. The two connector edges live in
  // the empty slab between the summands.
  std::vector<Vec3> verts;
  verts.reserve(2 * n - 2);
  for (int k = 1; k < n; ++k) verts.push_back(t1[(imax + k) % n]);
  for (int k = 1; k < n; ++k) verts.push_back(t2[(jmin + k) % n]);

  Fixture f;
  f.generator = "make_composite_trefoils";
  f.samples = n;
  f.seed = seed;
  f.separation = separation;
  f.link.loops.emplace_back(std::move(verts));
  f.perturbation = 1e-7 * diameter(f.link);
  perturb(f.link, f.perturbation, seed);
  return f;
}

Fixture make_fixture(const std::string& name, int n, double separation,
                     std::uint64_t seed) {
  if (name == "circle") return make_circle(n, seed);
  if (name == "trefoil") return make_trefoil(n, seed);
  if (name == "hopf") return make_hopf(n, seed);
  if (name == "two-circle" || name == "two_circle_unlink")
    return make_two_circle_unlink(n, seed);
  if (name == "composite" || name == "composite_trefoils")
    return make_composite_trefoils(n, separation, seed);
  throw std::invalid_argument("unknown fixture: " + name);
}

}  // namespace hullkit
