#pragma once

// Triangles and the classical centers the constructions rely on: Fermat
// (isogonic) points, centroid, orthocenter, nine-point circle.

#include <array>

#include "kiepert/conic.hpp"
#include "kiepert/projective.hpp"

namespace kiepert {

enum class Orientation { ccw, cw };
enum class ApexSide { outward, inward };
enum class FermatWhich { first, second };

template <class S>
struct Triangle {
  std::array<Point<S>, 3> v;

  Triangle(Point<S> a, Point<S> b, Point<S> c) : v{std::move(a), std::move(b), std::move(c)} {
    for (const auto& p : v)
      if (p.at_infinity())
        throw geometry_error(errc::degenerate_triangle, "vertex at infinity");
    for (int i = 0; i < 3; ++i)
      for (int j = i + 1; j < 3; ++j)
        if (same_point(v[i], v[j]))
          throw geometry_error(errc::degenerate_triangle, "repeated vertex");
    if (is_zero(signed_area2()))
      throw geometry_error(errc::degenerate_triangle, "collinear vertices");
  }

  const Point<S>& a() const { return v[0]; }
  const Point<S>& b() const { return v[1]; }
  const Point<S>& c() const { return v[2]; }

  // twice the signed area
  S signed_area2() const {
    S ax = v[0].ax(), ay = v[0].ay();
    return (v[1].ax() - ax) * (v[2].ay() - ay) - (v[2].ax() - ax) * (v[1].ay() - ay);
  }

  Orientation orientation() const {
    return sgn(signed_area2()) > 0 ? Orientation::ccw : Orientation::cw;
  }

  Triangle reversed() const { return Triangle(v[0], v[2], v[1]); }

  Triangle cycled(int shift) const {
    return Triangle(v[shift % 3], v[(shift + 1) % 3], v[(shift + 2) % 3]);
  }

  std::array<S, 3> side_lengths_sq() const {
    return {dist2(v[1], v[2]), dist2(v[2], v[0]), dist2(v[0], v[1])};
  }

  bool scalene() const {
    auto s = side_lengths_sq();
    return !is_zero(s[0] - s[1]) && !is_zero(s[1] - s[2]) && !is_zero(s[2] - s[0]);
  }

  // max relative spread of the squared side lengths
  double equilateral_spread() const {
    auto s = side_lengths_sq();
    double m = std::max({std::abs(approx(s[0])), std::abs(approx(s[1])), std::abs(approx(s[2]))});
    if (m == 0) return 0;
    double d = std::max({std::abs(approx(s[0] - s[1])), std::abs(approx(s[1] - s[2])),
                         std::abs(approx(s[2] - s[0]))});
    return d / m;
  }
};

template <class S>
Point<S> centroid(const Triangle<S>& t) {
  return Point<S>((t.a().ax() + t.b().ax() + t.c().ax()) / S(3),
                  (t.a().ay() + t.b().ay() + t.c().ay()) / S(3));
}

// Apex of the equilateral triangle erected on segment pq. "outward" places it
// on the far side of pq from the triangle interior, given the triangle's
// orientation; in a ccw triangle the interior is to the left of each directed
// edge.
template <class S>
Point<S> erected_apex(const Point<S>& p, const Point<S>& q, ApexSide side, Orientation orient) {
  if (same_point(p, q)) throw geometry_error(errc::identical_elements, "degenerate edge");
  S dx = q.ax() - p.ax(), dy = q.ay() - p.ay();
  S mx = (p.ax() + q.ax()) / S(2), my = (p.ay() + q.ay()) / S(2);
  S h = sqrt3_of<S>() / S(2);
  // left normal of (dx,dy) is (-dy,dx)
  bool left = (orient == Orientation::ccw) == (side == ApexSide::inward);
  if (left) return Point<S>(mx - h * dy, my + h * dx);
  return Point<S>(mx + h * dy, my - h * dx);
}

template <class S>
struct FermatPair {
  Point<S> f1, f2;
  double residual1 = 0, residual2 = 0;  // third-cevian concurrency residuals
  bool f1_minimizes = true;             // false when some angle >= 120 degrees
};

template <class S>
bool has_angle_ge_120(const Triangle<S>& t) {
  for (int i = 0; i < 3; ++i) {
    const auto& a = t.v[i];
    const auto& b = t.v[(i + 1) % 3];
    const auto& c = t.v[(i + 2) % 3];
    S ux = b.ax() - a.ax(), uy = b.ay() - a.ay();
    S vx = c.ax() - a.ax(), vy = c.ay() - a.ay();
    S dot = ux * vx + uy * vy;
    if (sgn(dot) < 0) {
      // cos <= -1/2  <=>  4 dot^2 >= |u|^2 |v|^2 (with dot < 0)
      S lhs = S(4) * dot * dot;
      S rhs = (ux * ux + uy * uy) * (vx * vx + vy * vy);
      if (sgn(lhs - rhs) >= 0) return true;
    }
  }
  return false;
}

// Concurrency point of the three vertex-to-apex cevians. Exact in Q(sqrt(3))
// for rational vertices. Triangles with an angle >= 120 degrees still get the
// isogonic point; the pair's flag records that it is not the distance
// minimizer.
template <class S>
Point<S> fermat_point(const Triangle<S>& t, FermatWhich which, double* residual_out = nullptr) {
  ApexSide side = which == FermatWhich::first ? ApexSide::outward : ApexSide::inward;
  Orientation o = t.orientation();
  std::array<Line<S>, 3> cevians;
  for (int i = 0; i < 3; ++i) {
    Point<S> apex = erected_apex(t.v[(i + 1) % 3], t.v[(i + 2) % 3], side, o);
    cevians[i] = join(t.v[i], apex);
  }
  Point<S> f = meet(cevians[0], cevians[1]);
  double res = incidence_residual(cevians[2], f);
  if constexpr (is_exact_v<S>) {
    if (!on_line(cevians[2], f))
      throw geometry_error(errc::lines_not_concurrent, "fermat cevians not concurrent");
  } else if (res > tolerance_epsilon()) {
    throw geometry_error(errc::lines_not_concurrent, "fermat cevians not concurrent");
  }
  if (residual_out) *residual_out = res;
  return f.normalized();
}

template <class S>
FermatPair<S> fermat_pair(const Triangle<S>& t) {
  FermatPair<S> fp;
  fp.f1 = fermat_point(t, FermatWhich::first, &fp.residual1);
  fp.f2 = fermat_point(t, FermatWhich::second, &fp.residual2);
  fp.f1_minimizes = !has_angle_ge_120(t);
  return fp;
}

template <class S>
Line<S> altitude(const Triangle<S>& t, int vertex) {
  const auto& a = t.v[vertex];
  const auto& b = t.v[(vertex + 1) % 3];
  const auto& c = t.v[(vertex + 2) % 3];
  S dx = c.ax() - b.ax(), dy = c.ay() - b.ay();
  return Line<S>(dx, dy, S(0) - dx * a.ax() - dy * a.ay());
}

template <class S>
Point<S> orthocenter(const Triangle<S>& t, double* residual_out = nullptr) {
  Point<S> h = meet(altitude(t, 0), altitude(t, 1));
  if (residual_out) *residual_out = incidence_residual(altitude(t, 2), h);
  return h.normalized();
}

// Circumcircle through three affine points (perpendicular-bisector meet).
template <class S>
Circle<S> circle_through(const Point<S>& p, const Point<S>& q, const Point<S>& r) {
  S px = p.ax(), py = p.ay(), qx = q.ax(), qy = q.ay(), rx = r.ax(), ry = r.ay();
  // 2 (q-p).center = |q|^2 - |p|^2 ; same for r-p
  S a1 = S(2) * (qx - px), b1 = S(2) * (qy - py), c1 = qx * qx + qy * qy - px * px - py * py;
  S a2 = S(2) * (rx - px), b2 = S(2) * (ry - py), c2 = rx * rx + ry * ry - px * px - py * py;
  S det = a1 * b2 - a2 * b1;
  if (is_zero(det)) throw geometry_error(errc::degenerate_triangle, "collinear circumcircle input");
  S cx = (c1 * b2 - c2 * b1) / det;
  S cy = (a1 * c2 - a2 * c1) / det;
  S dx = px - cx, dy = py - cy;
  return Circle<S>(Point<S>(cx, cy), dx * dx + dy * dy);
}

template <class S>
struct NinePointCircle {
  Circle<S> circle;
  // incidence residuals: 3 side midpoints, 3 altitude feet, 3 Euler midpoints
  std::array<double, 9> residuals{};
  double max_residual() const {
    double m = 0;
    for (double r : residuals) m = std::max(m, r);
    return m;
  }
};

template <class S>
NinePointCircle<S> nine_point_circle(const Triangle<S>& t) {
  std::array<Point<S>, 3> mids = {midpoint(t.b(), t.c()), midpoint(t.c(), t.a()),
                                  midpoint(t.a(), t.b())};
  NinePointCircle<S> npc{circle_through(mids[0], mids[1], mids[2])};
  Point<S> h = orthocenter(t);
  double rs = std::max(std::abs(approx(npc.circle.radius_sq)), 1e-30);
  auto record = [&](int slot, const Point<S>& p) {
    npc.residuals[slot] = std::abs(approx(npc.circle.eval(p))) / rs;
  };
  for (int i = 0; i < 3; ++i) {
    record(i, mids[i]);
    // altitude foot from vertex i to the opposite side
    Line<S> foot_line = join(t.v[(i + 1) % 3], t.v[(i + 2) % 3]);
    record(3 + i, meet(altitude(t, i), foot_line).normalized());
    record(6 + i, midpoint(t.v[i], h));
  }
  return npc;
}

}  // namespace kiepert
