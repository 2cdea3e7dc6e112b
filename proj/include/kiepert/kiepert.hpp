#pragma once

// The headline constructions: the Kiepert hyperbola scene, the two
// equilateral triangles it carries, perspectivity certificates, Pascal and
// Hessian lines.

#include <array>
#include <optional>
#include <vector>

#include "kiepert/conic.hpp"
#include "kiepert/projective.hpp"
#include "kiepert/triangle.hpp"

namespace kiepert {

template <class S>
struct KiepertScene {
  Triangle<S> reference;
  FermatPair<S> fermat;
  Conic<S> conic;             // in the original coordinates
  Conic<S> normalized_conic;  // in the F2 -> (-1,0), F1 -> (1,0) frame
  Point<S> center;
  SimilarityFrame<S> frame;
};

// Fit the Kiepert hyperbola from A, B, C, F1 and the centroid, then validate
// that F2 also lies on it, that it is rectangular, and that its center is the
// Fermat midpoint. The fit happens in the normalized frame (coordinates of
// order one) and is pulled back.
template <class S>
KiepertScene<S> kiepert_hyperbola(const Triangle<S>& t) {
  if (!t.scalene()) throw geometry_error(errc::not_scalene, "reference triangle must be scalene");
  FermatPair<S> fp = fermat_pair(t);
  if (same_point(fp.f1, fp.f2))
    throw geometry_error(errc::coincident_fermat_points, "Fermat points coincide");
  SimilarityFrame<S> frame = normalize_frame(fp.f2, fp.f1);
  Point<S> m = centroid(t);
  std::array<Point<S>, 5> pts = {frame.apply(t.a()).normalized(),
                                 frame.apply(t.b()).normalized(),
                                 frame.apply(t.c()).normalized(),
                                 Point<S>(S(1), S(0)),  // F1 by construction
                                 frame.apply(m).normalized()};
  Conic<S> kn = fit_five_points(pts);
  if (kn.degenerate())
    throw geometry_error(errc::degenerate_conic, "fitted Kiepert conic is degenerate");
  if (!kn.contains(Point<S>(S(-1), S(0))))
    throw geometry_error(errc::degenerate_conic, "second Fermat point off the fitted conic");
  if (!is_rectangular(kn))
    throw geometry_error(errc::degenerate_conic, "fitted conic is not rectangular");
  Point<S> center_n = center_of(kn);
  if (!same_point(center_n, Point<S>(S(0), S(0))))
    throw geometry_error(errc::degenerate_conic, "conic center is not the Fermat midpoint");
  Conic<S> k_world = conic_pullback(kn, frame.matrix());
  return KiepertScene<S>{t, fp, k_world, kn, midpoint(fp.f1, fp.f2), frame};
}

// ---------------------------------------------------------------------------
// Equilaterality certificate with the concyclicity structure of the proof:
// side midpoints D,E,F, half-segment midpoints U,V,W of circumcenter-to-
// vertex segments, and the conic center o all sit at one distance from the
// circumcenter.

template <class S>
struct EquilateralCertificate {
  std::array<S, 3> side_sq;
  double side_spread = 0;  // max relative spread of squared side lengths
  // groups: {D,U,V,o}, {E,V,W,o}, {F,W,U,o}, {D,E,F,o}
  std::array<double, 4> concyclicity_residuals{};
  std::array<bool, 4> concyclicity_ok{};
  bool sides_ok = false;

  bool all_ok() const {
    return sides_ok && concyclicity_ok[0] && concyclicity_ok[1] && concyclicity_ok[2] &&
           concyclicity_ok[3];
  }
};

template <class S>
EquilateralCertificate<S> equilateral_certificate(const Triangle<S>& t,
                                                  const Point<S>& circumcenter,
                                                  const Point<S>& o) {
  EquilateralCertificate<S> cert{t.side_lengths_sq()};
  cert.side_spread = t.equilateral_spread();
  cert.sides_ok = cert.side_spread <= (is_exact_v<S> ? 0.0 : tolerance_epsilon());

  std::array<Point<S>, 3> mid_side = {midpoint(t.a(), t.b()), midpoint(t.b(), t.c()),
                                      midpoint(t.c(), t.a())};  // D, E, F
  std::array<Point<S>, 3> mid_half = {midpoint(circumcenter, t.a()), midpoint(circumcenter, t.b()),
                                      midpoint(circumcenter, t.c())};  // U, V, W
  auto d2c = [&](const Point<S>& p) { return dist2(circumcenter, p); };
  std::array<std::array<S, 4>, 4> groups = {
      std::array<S, 4>{d2c(mid_side[0]), d2c(mid_half[0]), d2c(mid_half[1]), d2c(o)},
      std::array<S, 4>{d2c(mid_side[1]), d2c(mid_half[1]), d2c(mid_half[2]), d2c(o)},
      std::array<S, 4>{d2c(mid_side[2]), d2c(mid_half[2]), d2c(mid_half[0]), d2c(o)},
      std::array<S, 4>{d2c(mid_side[0]), d2c(mid_side[1]), d2c(mid_side[2]), d2c(o)}};
  for (int g = 0; g < 4; ++g) {
    double scale = 0, worst = 0;
    bool exact_ok = true;
    for (int i = 0; i < 4; ++i) {
      scale = std::max(scale, std::abs(approx(groups[g][i])));
      for (int j = i + 1; j < 4; ++j) {
        worst = std::max(worst, std::abs(approx(groups[g][i] - groups[g][j])));
        if (!is_zero(groups[g][i] - groups[g][j])) exact_ok = false;
      }
    }
    cert.concyclicity_residuals[g] = scale > 0 ? worst / scale : 0;
    if constexpr (is_exact_v<S>) cert.concyclicity_ok[g] = exact_ok;
    else cert.concyclicity_ok[g] = cert.concyclicity_residuals[g] <= tolerance_epsilon();
  }
  return cert;
}

// ---------------------------------------------------------------------------
// Yiu triangles: residual intersections of the two Fermat circles with the
// conic, computed in the normalized frame and mapped back. Vertices sorted by
// chord slope, then reordered ccw.

inline Triangle<ApproxReal> order_ccw(Triangle<ApproxReal> t) {
  if (t.orientation() == Orientation::cw) return t.reversed();
  return t;
}

struct YiuTriangles {
  Triangle<ApproxReal> pqr;        // on the circle about F2
  Triangle<ApproxReal> pqr_prime;  // on the circle about F1
};

inline YiuTriangles yiu_triangles(const KiepertScene<ApproxReal>& scene) {
  const Conic<ApproxReal>& k = scene.normalized_conic;
  Circle<ApproxReal> c1(Point<ApproxReal>(ApproxReal(-1), ApproxReal(0)), ApproxReal(4));
  Circle<ApproxReal> c2(Point<ApproxReal>(ApproxReal(1), ApproxReal(0)), ApproxReal(4));
  auto pts1 = circle_conic_residual_intersections(c1, k, Point<ApproxReal>(ApproxReal(1), ApproxReal(0)));
  auto pts2 = circle_conic_residual_intersections(c2, k, Point<ApproxReal>(ApproxReal(-1), ApproxReal(0)));
  auto lift = [&](const std::vector<Point<ApproxReal>>& pts) {
    Triangle<ApproxReal> t = order_ccw(Triangle<ApproxReal>(pts[0], pts[1], pts[2]));
    return Triangle<ApproxReal>(scene.frame.apply_inverse(t.a()).normalized(),
                                scene.frame.apply_inverse(t.b()).normalized(),
                                scene.frame.apply_inverse(t.c()).normalized());
  };
  return YiuTriangles{lift(pts1), lift(pts2)};
}

// ---------------------------------------------------------------------------
// Perspectivity.

template <class S>
struct PerspectivityCertificate {
  int shift = 0;           // cyclic shift applied to the second triangle
  bool reversed = false;   // second triangle taken in reversed order
  Point<S> perspector;     // possibly at infinity
  double residual = 0;     // third-line incidence residual
};

template <class S>
PerspectivityCertificate<S> perspector(const Triangle<S>& t1, const Triangle<S>& t2, int shift,
                                       bool reversed = false) {
  Triangle<S> u = reversed ? t2.reversed() : t2;
  // a coincident correspondence pair constrains nothing: any line through the
  // doubled point works, so only the remaining pairs produce cevian lines
  std::vector<Line<S>> lines;
  for (int i = 0; i < 3; ++i) {
    const Point<S>& a = t1.v[i];
    const Point<S>& b = u.v[(i + shift) % 3];
    if (!same_point(a, b)) lines.push_back(join(a, b));
  }
  if (lines.size() < 2)
    throw geometry_error(errc::not_perspective, "too many coincident correspondences");
  Point<S> p = meet(lines[0], lines[1]);
  double res = 0;
  bool ok = true;
  if (lines.size() == 3) {
    res = incidence_residual(lines[2], p);
    if constexpr (is_exact_v<S>) ok = on_line(lines[2], p);
    else ok = res <= tolerance_epsilon();
  }
  if (!ok) throw geometry_error(errc::not_perspective, "third correspondence line misses");
  return PerspectivityCertificate<S>{shift, reversed, p.normalized(), res};
}

template <class S>
struct TriplePerspectivity {
  std::array<PerspectivityCertificate<S>, 3> certs;
  Line<S> axis;                 // line through the three perspectors
  double axis_residual = 0;     // third-perspector incidence residual
  bool reversed = false;        // orientation of the second triangle that worked
};

template <class S>
TriplePerspectivity<S> triple_perspectivity(const Triangle<S>& t1, const Triangle<S>& t2) {
  for (bool rev : {false, true}) {
    std::array<std::optional<PerspectivityCertificate<S>>, 3> certs;
    bool all = true;
    for (int shift = 0; shift < 3 && all; ++shift) {
      try {
        certs[shift] = perspector(t1, t2, shift, rev);
      } catch (const geometry_error&) {
        all = false;
      }
    }
    if (!all) continue;
    // axis through the two best-separated perspectors
    std::array<Point<S>, 3> ps = {certs[0]->perspector, certs[1]->perspector,
                                  certs[2]->perspector};
    int bi = 0, bj = 1;
    double best = -1;
    for (int i = 0; i < 3; ++i)
      for (int j = i + 1; j < 3; ++j) {
        if (same_point(ps[i], ps[j])) continue;
        Line<S> l = join(ps[i], ps[j]);
        double sep = l.norm_approx() / (ps[i].norm_approx() * ps[j].norm_approx());
        if (sep > best) { best = sep; bi = i; bj = j; }
      }
    if (best < 0)
      throw geometry_error(errc::not_triply_perspective, "all perspectors coincide");
    Line<S> axis = join(ps[bi], ps[bj]);
    int other = 3 - bi - bj;
    double res = incidence_residual(axis, ps[other]);
    bool ok;
    if constexpr (is_exact_v<S>) ok = on_line(axis, ps[other]);
    else ok = res <= tolerance_epsilon();
    if (!ok) throw geometry_error(errc::not_triply_perspective, "perspectors not collinear");
    return TriplePerspectivity<S>{{*certs[0], *certs[1], *certs[2]}, axis, res, rev};
  }
  throw geometry_error(errc::not_triply_perspective, "no orientation yields three perspectors");
}

// ---------------------------------------------------------------------------
// Pascal line of an ordered hexagon on a conic.

template <class S>
Line<S> pascal_line(const Conic<S>& k, const std::array<Point<S>, 6>& hex,
                    double* residual_out = nullptr) {
  for (int i = 0; i < 6; ++i) {
    if (!k.contains(hex[i]))
      throw geometry_error(errc::point_not_on_conic, "hexagon vertex off the conic");
    if (same_point(hex[i], hex[(i + 1) % 6]))
      throw geometry_error(errc::degenerate_hexagon, "repeated adjacent vertices");
  }
  Point<S> m1 = meet(join(hex[0], hex[1]), join(hex[3], hex[4]));
  Point<S> m2 = meet(join(hex[1], hex[2]), join(hex[4], hex[5]));
  Point<S> m3 = meet(join(hex[2], hex[3]), join(hex[5], hex[0]));
  Line<S> l = join(m1, m2);
  double res = incidence_residual(l, m3);
  if (residual_out) *residual_out = res;
  return l;
}

// Hessian line: the tangents at the vertices meet the opposite sides in three
// collinear points.
template <class S>
Line<S> hessian_line(const Conic<S>& k, const Triangle<S>& t, double* residual_out = nullptr) {
  if (k.degenerate()) throw geometry_error(errc::degenerate_conic, "Hessian of degenerate conic");
  std::array<Point<S>, 3> meets;
  for (int i = 0; i < 3; ++i) {
    Line<S> tangent = tangent_at(k, t.v[i]);
    Line<S> side = join(t.v[(i + 1) % 3], t.v[(i + 2) % 3]);
    meets[i] = meet(tangent, side);  // at infinity when tangent parallels the side
  }
  Line<S> l = join(meets[0], meets[1]);
  double res = incidence_residual(l, meets[2]);
  if (residual_out) *residual_out = res;
  return l;
}

}  // namespace kiepert
