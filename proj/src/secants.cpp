#include "hullkit/secants.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <map>

#include "hullkit/hull.hpp"

namespace hullkit {

LineL LineL::through_points(const Vec3& a, const Vec3& b) {
  const Vec3 d = b - a;
  const double len = d.norm();
  if (!(len > 0))
    throw std::invalid_argument("LineL::through_points: coincident points");
  LineL l;
  l.direction = d / len;
  l.point = a;
  return l;
}

double side_product(const LineL& a, const LineL& b) {
  const auto pa = a.pluecker();
  const auto pb = b.pluecker();
  return pa.head<3>().dot(pb.tail<3>()) + pb.head<3>().dot(pa.tail<3>());
}

TransversalResult transversals_of_four_lines(const LineL& l1, const LineL& l2,
                                             const LineL& l3, const LineL& l4,
                                             const Tolerance& /*tol*/) {
  const LineL* lines[4] = {&l1, &l2, &l3, &l4};
  Eigen::Matrix<double, 4, 6> M;
  for (int i = 0; i < 4; ++i) {
    const auto p = lines[i]->pluecker();
    M.row(i).head<3>() = p.tail<3>().transpose();  // moment pairs with direction
    M.row(i).tail<3>() = p.head<3>().transpose();
    if (!p.allFinite())
      throw std::invalid_argument("transversals_of_four_lines: invalid line");
  }

  TransversalResult res;
  Eigen::FullPivLU<Eigen::Matrix<double, 4, 6>> lu(M);
  lu.setThreshold(1e-9);
  if (lu.rank() < 4) {
    // Rank-deficient side-product system: a whole family of transversals
    // (concurrent or coplanar inputs).
    res.degenerate_family = true;
    return res;
  }
  const Eigen::Matrix<double, 6, 2> kernel = lu.kernel();
  const Eigen::Matrix<double, 6, 1> B1 = kernel.col(0).normalized();
  const Eigen::Matrix<double, 6, 1> B2 = kernel.col(1).normalized();
  auto quadric = [](const Eigen::Matrix<double, 6, 1>& x,
                    const Eigen::Matrix<double, 6, 1>& y) {
    return 0.5 * (x.head<3>().dot(y.tail<3>()) + y.head<3>().dot(x.tail<3>()));
  };
  const double q11 = quadric(B1, B1);
  const double q12 = 2.0 * quadric(B1, B2);
  const double q22 = quadric(B2, B2);

  // Solve q11 a^2 + q12 a b + q22 b^2 = 0 projectively in (a : b).
  std::vector<std::pair<double, double>> roots;
  const double qscale = std::max({std::abs(q11), std::abs(q12), std::abs(q22)});
  if (qscale < 1e-12) {
    // The whole kernel plane lies on the null quadric: every kernel element
    // is a real line, a one-parameter family of transversals.
    res.degenerate_family = true;
    return res;
  }
  const double a2 = q11 / qscale, a1 = q12 / qscale, a0 = q22 / qscale;
  const double disc = a1 * a1 - 4 * a2 * a0;
  res.discriminant = disc;
  if (std::abs(a2) < 1e-14) {
    roots.emplace_back(1.0, 0.0);  // B1 itself is on the quadric
    if (std::abs(a1) > 1e-14) roots.emplace_back(-a0 / a1, 1.0);
  } else if (disc < 0) {
    return res;  // no real transversal
  } else {
    const double sq = std::sqrt(disc);
    // Numerically stable pair of roots of a2 t^2 + a1 t + a0 with t = a/b.
    const double qv = -0.5 * (a1 + (a1 >= 0 ? sq : -sq));
    roots.emplace_back(qv / a2, 1.0);
    if (std::abs(qv) > 1e-300) roots.emplace_back(a0 / qv, 1.0);
    else roots.emplace_back(0.0, 1.0);
    if (disc == 0) roots.pop_back();
  }

  for (const auto& [alpha, beta] : roots) {
    Eigen::Matrix<double, 6, 1> T = alpha * B1 + beta * B2;
    const Vec3 d = T.head<3>();
    const Vec3 m = T.tail<3>();
    const double dn = d.norm();
    if (dn <= 1e-9 * T.norm()) continue;  // line at infinity
    LineL line;
    line.direction = d / dn;
    line.point = line.direction.cross(m / dn);  // closest point to the origin
    res.lines.push_back(line);
  }

  // Residual check against each input, scaled by the moment magnitudes.
  std::vector<LineL> ok;
  for (const auto& cand : res.lines) {
    bool good = true;
    for (int i = 0; i < 4; ++i) {
      const double denom = std::max(1.0, cand.pluecker().tail<3>().norm() +
                                             lines[i]->pluecker().tail<3>().norm());
      if (std::abs(side_product(cand, *lines[i])) > 1e-7 * denom) { good = false; break; }
    }
    if (good) ok.push_back(cand);
  }
  res.lines = std::move(ok);
  return res;
}

namespace {

struct EdgeRef {
  int loop = 0;
  int edge = 0;
};

/// Hits of a line against all edges of the link, within tolerance.
std::vector<SecantHit> collect_hits(const LineL& line, const PolyLink& link,
                                    const std::vector<std::vector<double>>& arclen,
                                    const Tolerance& tol) {
  std::vector<SecantHit> hits;
  for (int li = 0; li < link.loop_count(); ++li) {
    const PolyLoop& loop = link.loops[li];
    for (int e = 0; e < loop.size(); ++e) {
      const Vec3 a = loop.vertex(e);
      const Vec3 ev = loop.edge_vector(e);
      // Closest-approach parameters between the line and the edge segment.
      const Vec3 r = a - line.point;
      const double c11 = 1.0;                    // |direction|^2
      const double c12 = line.direction.dot(ev);
      const double c22 = ev.squaredNorm();
      const double det = c11 * c22 - c12 * c12;
      double s;  // edge parameter
      if (det <= 1e-14 * c22) {
        s = 0.5;  // nearly parallel; distance check below decides
      } else {
        const double b1 = line.direction.dot(r);
        const double b2 = ev.dot(r);
        s = (c12 * b1 - c11 * b2) / det;
      }
      s = std::clamp(s, 0.0, 1.0);
      const Vec3 q = a + s * ev;
      const double t = line.direction.dot(q - line.point);
      const double dist = (q - line.at(t)).norm();
      if (dist <= 4.0 * tol.eps_abs) {
        SecantHit h;
        h.loop_index = li;
        h.edge_index = e;
        h.edge_param = s;
        h.knot_param = arclen[li][e] + s * loop.edge_length(e);
        h.line_param = t;
        h.point = q;
        hits.push_back(h);
      }
    }
  }
  std::sort(hits.begin(), hits.end(),
            [](const SecantHit& x, const SecantHit& y) { return x.line_param < y.line_param; });
  // A hit exactly at a shared vertex registers on both adjacent edges;
  // collapse coincident hit points.
  std::vector<SecantHit> dedup;
  for (const auto& h : hits) {
    if (!dedup.empty() && (h.point - dedup.back().point).norm() <= 4.0 * tol.eps_abs)
      continue;
    dedup.push_back(h);
  }
  return dedup;
}

std::array<int, 6> canonical_key(const LineL& line, double quantum) {
  Vec3 d = line.direction;
  Vec3 m = line.point.cross(line.direction);
  // Canonical orientation: first sufficiently nonzero direction component
  // positive.
  for (int i = 0; i < 3; ++i) {
    if (std::abs(d[i]) > 1e-7) {
      if (d[i] < 0) { d = -d; m = -m; }
      break;
    }
  }
  std::array<int, 6> key;
  for (int i = 0; i < 3; ++i) key[i] = static_cast<int>(std::llround(d[i] / quantum));
  for (int i = 0; i < 3; ++i) key[3 + i] = static_cast<int>(std::llround(m[i] / quantum));
  return key;
}

}  // namespace

void classify_order(Quadrisecant& q, const PolyLink& link, const Tolerance& tol) {
  // Sides by line order: first two hits at one pole, last two at the other.
  bool multi = false;
  for (int i = 1; i < 4; ++i)
    if (q.hits[i].loop_index != q.hits[0].loop_index) multi = true;
  q.multi_component = multi;

  if (multi) {
    q.pattern.clear();
    for (const auto& h : q.hits) q.pattern += link.label(h.loop_index);
    q.alternating = false;
    q.reason = "multi_component";
    return;
  }

  // Knot-order permutation of the line positions.
  std::array<int, 4> order{0, 1, 2, 3};
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    return q.hits[a].knot_param < q.hits[b].knot_param;
  });
  for (int i = 1; i < 4; ++i) {
    if (std::abs(q.hits[order[i]].knot_param - q.hits[order[i - 1]].knot_param) <=
        tol.eps_abs) {
      q.alternating = false;
      q.reason = "knot_param_tie";
      q.pattern.clear();
      return;
    }
  }
  q.pattern.clear();
  for (int i = 0; i < 4; ++i) q.pattern += static_cast<char>('1' + order[i]);
  // Alternating iff the knot visits the two line ends alternately: side word
  // ABAB or BABA with A = {line positions 1,2}, B = {3,4}.
  auto side = [](int line_pos) { return line_pos < 2 ? 0 : 1; };
  q.alternating = side(order[0]) != side(order[1]) && side(order[1]) != side(order[2]) &&
                  side(order[2]) != side(order[3]);
  q.reason = q.alternating ? "" : "non_alternating";
}

QuadrisecantSet quadrisecants(const PolyLink& link, const Tolerance& tol) {
  QuadrisecantSet out;

  std::vector<EdgeRef> edges;
  std::vector<LineL> edge_lines;
  std::vector<Eigen::AlignedBox3d> edge_boxes;
  std::vector<std::vector<double>> arclen;
  for (int li = 0; li < link.loop_count(); ++li) {
    const PolyLoop& loop = link.loops[li];
    arclen.push_back(loop.arclengths());
    for (int e = 0; e < loop.size(); ++e) {
      edges.push_back({li, e});
      edge_lines.push_back(LineL::through_points(loop.vertex(e), loop.vertex(e + 1)));
      Eigen::AlignedBox3d box;
      box.extend(loop.vertex(e));
      box.extend(loop.vertex(e + 1));
      const Vec3 margin = Vec3::Constant(tol.eps_abs);
      box.extend(box.min() - margin);
      box.extend(box.max() + margin);
      edge_boxes.push_back(box);
    }
  }
  const int ne = static_cast<int>(edges.size());

  // Pair hulls, as boxes: the chord between the hits on two segments lies in
  // the hull of the pair. Among the three pairings of a quadruple, the two
  // that straddle the middle hits must both have intersecting pair hulls, so
  // two or more disjoint pairings rule the quadruple out.
  std::vector<Eigen::AlignedBox3d> pair_box(static_cast<size_t>(ne) * ne);
  for (int i = 0; i < ne; ++i)
    for (int j = i + 1; j < ne; ++j)
      pair_box[static_cast<size_t>(i) * ne + j] = edge_boxes[i].merged(edge_boxes[j]);
  auto pbox = [&](int i, int j) -> const Eigen::AlignedBox3d& {
    return pair_box[static_cast<size_t>(std::min(i, j)) * ne + std::max(i, j)];
  };

  std::map<std::array<int, 6>, char> seen;  // canonical line -> recorded kind
  const double quantum = 1e-7 * std::max(1.0, diameter(link));

  auto hit_on_edge = [&](const std::vector<SecantHit>& hits, int li, int e) {
    for (const auto& h : hits)
      if (h.loop_index == li && h.edge_index == e) return true;
    return false;
  };

  for (int i1 = 0; i1 < ne; ++i1) {
    for (int i2 = i1 + 1; i2 < ne; ++i2) {
      for (int i3 = i2 + 1; i3 < ne; ++i3) {
        for (int i4 = i3 + 1; i4 < ne; ++i4) {
          int disjoint = 0;
          if (!pbox(i1, i2).intersects(pbox(i3, i4))) ++disjoint;
          if (!pbox(i1, i3).intersects(pbox(i2, i4))) ++disjoint;
          if (disjoint == 1 && !pbox(i1, i4).intersects(pbox(i2, i3))) ++disjoint;
          if (disjoint >= 2) continue;
          ++out.candidate_quadruples;
          const auto tr = transversals_of_four_lines(
              edge_lines[i1], edge_lines[i2], edge_lines[i3], edge_lines[i4], tol);
          if (tr.degenerate_family) {
            ++out.degenerate_quadruples;
            continue;
          }
          for (const LineL& cand : tr.lines) {
            const auto hits = collect_hits(cand, link, arclen, tol);
            if (hits.size() < 4) continue;
            // The generating edges must actually be hit.
            const int q[4] = {i1, i2, i3, i4};
            bool all_found = true;
            for (int gi : q)
              if (!hit_on_edge(hits, edges[gi].loop, edges[gi].edge)) { all_found = false; break; }
            if (!all_found) continue;

            const auto key = canonical_key(cand, quantum);
            if (seen.count(key)) continue;

            if (hits.size() > 4) {
              seen[key] = 'h';
              MultiSecant ms;
              ms.line = cand;
              ms.hits = hits;
              out.higher.push_back(std::move(ms));
              continue;
            }

            bool grazing = false;
            for (const auto& h : hits)
              if (h.edge_param <= kEpsParam || h.edge_param >= 1.0 - kEpsParam)
                grazing = true;
            bool distinct = true;
            for (int a = 1; a < 4; ++a)
              if ((hits[a].point - hits[a - 1].point).norm() <= tol.eps_abs)
                distinct = false;

            Quadrisecant qs;
            qs.line = cand;
            std::copy_n(hits.begin(), 4, qs.hits.begin());
            classify_order(qs, link, tol);
            if (grazing || !distinct || qs.reason == "knot_param_tie") {
              seen[key] = 'u';
              out.unstable.push_back(std::move(qs));
            } else {
              seen[key] = 'q';
              out.quads.push_back(std::move(qs));
            }
          }
        }
      }
    }
  }
  return out;
}

bool midsegment_depth_check(const Quadrisecant& q, const PolyLink& link,
                            int k_samples, const Tolerance& tol) {
  if (k_samples < 1) throw std::invalid_argument("midsegment_depth_check: k_samples >= 1");
  const detail::HullEngine engine(link, tol);
  const auto [a, b] = q.midsegment();
  for (int j = 1; j <= k_samples; ++j) {
    const double t = static_cast<double>(j) / (k_samples + 1);
    Vec3 p = a + t * (b - a);
    int depth = -1;
    for (int attempt = 0; attempt < 3 && depth < 0; ++attempt) {
      try {
        depth = engine.min_cut_exact(p).depth();
      } catch (const DegenerateQueryError&) {
        // Sample ended up on the link; nudge it off, perpendicular to the line.
        Vec3 off = q.line.direction.unitOrthogonal();
        p += off * (4.0 * tol.eps_abs * (attempt + 1));
      }
    }
    if (depth < 0) throw DegenerateQueryError("midsegment_depth_check: sample stuck on link");
    if (depth < 2) return false;
  }
  return true;
}

}  // namespace hullkit
