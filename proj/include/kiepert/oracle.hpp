#pragma once

// Closed-form evaluation of the normalized-frame configuration over
// Q(sqrt(3)): the equilateral triangle on the circle about (-1,0), the conic
// family it spans with the points (+-1,0), the secondary triangles cut out by
// chords through (0,y0), and their perspectors. Everything here is exact and
// serves as ground truth for the generic pipeline.

#include <array>
#include <optional>

#include "kiepert/conic.hpp"
#include "kiepert/triangle.hpp"

namespace kiepert {

inline const Point<QuadExt> kF1{QuadExt(1), QuadExt(0)};
inline const Point<QuadExt> kF2{QuadExt(-1), QuadExt(0)};

inline Circle<QuadExt> oracle_circle_s1() { return Circle<QuadExt>(kF2, QuadExt(4)); }
inline Circle<QuadExt> oracle_circle_s2() { return Circle<QuadExt>(kF1, QuadExt(4)); }

// P(t) and its two 120-degree rotations about (-1,0), all on the circle S1.
inline Triangle<QuadExt> oracle_PQR(const Rational& t) {
  if (t.is_zero())
    throw geometry_error(errc::degenerate_parameter, "t = 0 collapses P onto F1");
  QuadExt s3 = QuadExt::sqrt3();
  QuadExt tt(t);
  QuadExt den = tt * tt + QuadExt(1);
  Point<QuadExt> p((QuadExt(-1) * den + QuadExt(2) * (QuadExt(1) - tt * tt)) / den,
                   QuadExt(4) * tt / den);
  Point<QuadExt> q(QuadExt(-2) * (s3 * tt + QuadExt(1)) / den,
                   (QuadExt(0) - (s3 * tt * tt + QuadExt(2) * tt - s3)) / den);
  Point<QuadExt> r(QuadExt(2) * (s3 * tt - QuadExt(1)) / den,
                   (s3 * tt * tt - QuadExt(2) * tt - s3) / den);
  return Triangle<QuadExt>(p, q, r);
}

// (3t^2-1) x^2 + (2t^3-6t) xy + (1-3t^2) y^2 + (1-3t^2) = 0
inline Conic<QuadExt> oracle_conic(const Rational& t) {
  if (t.is_zero()) throw geometry_error(errc::degenerate_parameter, "t = 0");
  Rational t2 = t * t;
  Rational a = 3 * t2 - 1;
  Rational b = 2 * t2 * t - 6 * t;
  Rational c = 1 - 3 * t2;
  return Conic<QuadExt>(QuadExt(a), QuadExt(b), QuadExt(c), QuadExt(0), QuadExt(0), QuadExt(c));
}

// Closed forms for P'', Q'', R''. Each denominator is the product of the two
// bracketed factors; every output is verified against the conic and against
// the independent chord-intersection route before being returned.
inline Triangle<QuadExt> oracle_secondary_formulas(const Rational& t, const QuadExt& y0) {
  QuadExt s3 = QuadExt::sqrt3();
  QuadExt T(t), Y = y0;
  QuadExt t2 = T * T, t3 = t2 * T, t4 = t2 * t2, y2 = Y * Y;
  QuadExt dp = (t2 + QuadExt(1)) * (QuadExt(2) * T * Y - y2 + QuadExt(1));
  QuadExt dq = (QuadExt(3) * t2 * y2 + QuadExt(2) * s3 * t2 * Y - QuadExt(3) * t2 +
                QuadExt(8) * T * Y - y2 + QuadExt(2) * s3 * Y + QuadExt(1)) *
               (t2 + QuadExt(1));
  QuadExt dr = (QuadExt(3) * t2 * y2 - QuadExt(2) * s3 * t2 * Y - QuadExt(3) * t2 +
                QuadExt(8) * T * Y - y2 - QuadExt(2) * s3 * Y + QuadExt(1)) *
               (t2 + QuadExt(1));
  if (is_zero(dp) || is_zero(dq) || is_zero(dr))
    throw geometry_error(errc::degenerate_parameter, "secondary formula denominator vanishes");
  Point<QuadExt> pp((QuadExt(3) * t2 - QuadExt(1)) * (y2 + QuadExt(1)) / dp,
                    QuadExt(2) * (t2 * Y + QuadExt(2) * T - Y) * (T * Y - QuadExt(1)) / dp);
  QuadExt qx = QuadExt(-2) * (QuadExt(3) * s3 * t3 + QuadExt(3) * t2 - s3 * T - QuadExt(1)) *
               (y2 + QuadExt(1)) / dq;
  QuadExt qy = (QuadExt(0) - (s3 * t4 * y2 + QuadExt(6) * t4 * Y - QuadExt(2) * t3 * y2 +
                              QuadExt(3) * s3 * t4 - QuadExt(8) * s3 * t2 * y2 + QuadExt(6) * t3 +
                              QuadExt(4) * t2 * Y - QuadExt(10) * T * y2 - QuadExt(4) * s3 * t2 -
                              s3 * y2 - QuadExt(2) * T - QuadExt(2) * Y + s3)) /
               dq;
  QuadExt rx = QuadExt(2) * (QuadExt(3) * s3 * t3 - QuadExt(3) * t2 - s3 * T + QuadExt(1)) *
               (y2 + QuadExt(1)) / dr;
  QuadExt ry = (s3 * t4 * y2 - QuadExt(6) * t4 * Y + QuadExt(2) * t3 * y2 + QuadExt(3) * s3 * t4 -
                QuadExt(8) * s3 * t2 * y2 - QuadExt(6) * t3 - QuadExt(4) * t2 * Y +
                QuadExt(10) * T * y2 - QuadExt(4) * s3 * t2 - s3 * y2 + QuadExt(2) * T +
                QuadExt(2) * Y + s3) /
               dr;
  return Triangle<QuadExt>(pp, Point<QuadExt>(qx, qy), Point<QuadExt>(rx, ry));
}

// Secondary triangle via chords of the conic through V = (0, y0): for each
// vertex X of PQR, the residual intersection of line XV with the conic.
inline Triangle<QuadExt> oracle_secondary_chords(const Rational& t, const QuadExt& y0) {
  Triangle<QuadExt> pqr = oracle_PQR(t);
  Conic<QuadExt> k = oracle_conic(t);
  Point<QuadExt> v(QuadExt(0), y0);
  return Triangle<QuadExt>(second_intersection(k, pqr.a(), v), second_intersection(k, pqr.b(), v),
                           second_intersection(k, pqr.c(), v));
}

inline Triangle<QuadExt> oracle_secondary(const Rational& t, const QuadExt& y0) {
  Triangle<QuadExt> f = oracle_secondary_formulas(t, y0);
  Triangle<QuadExt> c = oracle_secondary_chords(t, y0);
  Conic<QuadExt> k = oracle_conic(t);
  for (int i = 0; i < 3; ++i) {
    if (!same_point(f.v[i], c.v[i]))
      throw geometry_error(errc::degenerate_parameter,
                           "displayed formula disagrees with the chord route");
    if (!k.contains(f.v[i]))
      throw geometry_error(errc::degenerate_parameter, "secondary vertex off the conic");
  }
  return f;
}

// The three concurrency points of the chord pairings with PQR. The latter two
// are independent of t; a vanishing denominator sends the perspector to
// infinity along the radical axis x = 0.
inline std::array<Point<QuadExt>, 3> oracle_perspectors(const Rational& t, const QuadExt& y0) {
  (void)t;
  QuadExt s3 = QuadExt::sqrt3();
  auto on_axis = [&](const QuadExt& num, const QuadExt& den) {
    if (is_zero(den)) return Point<QuadExt>(QuadExt(0), QuadExt(1), QuadExt(0));
    return Point<QuadExt>(QuadExt(0), num / den);
  };
  return {Point<QuadExt>(QuadExt(0), y0),
          on_axis(QuadExt(0) - (s3 * y0 + QuadExt(3)), QuadExt(3) * y0 - s3),
          on_axis(s3 * y0 - QuadExt(3), QuadExt(3) * y0 + s3)};
}

}  // namespace kiepert
