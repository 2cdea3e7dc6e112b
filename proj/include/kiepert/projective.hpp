#pragma once

// Homogeneous points and lines over a scalar tier, plus the similarity frame
// used to move scenes into the F2=(-1,0), F1=(1,0) coordinate system.

#include <array>
#include <cmath>

#include "kiepert/scalar.hpp"

namespace kiepert {

template <class S>
struct Point {
  S x{0}, y{0}, w{1};

  Point() = default;
  Point(S px, S py) : x(std::move(px)), y(std::move(py)), w(1) {}
  Point(S px, S py, S pw) : x(std::move(px)), y(std::move(py)), w(std::move(pw)) {}

  bool at_infinity() const { return is_zero(w); }

  // w != 0: scale to w = 1; otherwise make the first nonzero of (x, y) one.
  Point normalized() const {
    if (!is_zero(w)) return Point(x / w, y / w, S(1));
    if (!is_zero(x)) return Point(S(1), y / x, S(0));
    return Point(S(0), S(1), S(0));
  }

  S ax() const { return x / w; }  // affine coordinates; caller checks w != 0
  S ay() const { return y / w; }

  double norm_approx() const {
    double px = approx(x), py = approx(y), pw = approx(w);
    return std::sqrt(px * px + py * py + pw * pw);
  }
};

template <class S>
struct Line {
  S a{0}, b{0}, c{0};  // a x + b y + c w = 0

  Line() = default;
  Line(S la, S lb, S lc) : a(std::move(la)), b(std::move(lb)), c(std::move(lc)) {}

  static Line at_infinity() { return Line(S(0), S(0), S(1)); }

  bool is_infinity() const { return is_zero(a) && is_zero(b) && !is_zero(c); }

  double norm_approx() const {
    double pa = approx(a), pb = approx(b), pc = approx(c);
    return std::sqrt(pa * pa + pb * pb + pc * pc);
  }
};

template <class S>
S incidence(const Line<S>& l, const Point<S>& p) {
  return l.a * p.x + l.b * p.y + l.c * p.w;
}

template <class S>
bool on_line(const Line<S>& l, const Point<S>& p) {
  return is_zero(incidence(l, p));
}

// Incidence residual scaled by the element norms, so verdicts do not depend
// on the arbitrary homogeneous scales.
template <class S>
double incidence_residual(const Line<S>& l, const Point<S>& p) {
  double denom = l.norm_approx() * p.norm_approx();
  if (denom == 0) return 0;
  return std::abs(approx(incidence(l, p))) / denom;
}

template <class S>
bool same_point(const Point<S>& p, const Point<S>& q) {
  return is_zero(p.x * q.y - p.y * q.x) && is_zero(p.x * q.w - p.w * q.x) &&
         is_zero(p.y * q.w - p.w * q.y);
}

template <class S>
bool same_line(const Line<S>& l, const Line<S>& m) {
  return is_zero(l.a * m.b - l.b * m.a) && is_zero(l.a * m.c - l.c * m.a) &&
         is_zero(l.b * m.c - l.c * m.b);
}

template <class S>
double line_agreement_residual(const Line<S>& l, const Line<S>& m) {
  double d1 = std::abs(approx(l.a * m.b - l.b * m.a));
  double d2 = std::abs(approx(l.a * m.c - l.c * m.a));
  double d3 = std::abs(approx(l.b * m.c - l.c * m.b));
  double denom = l.norm_approx() * m.norm_approx();
  if (denom == 0) return 0;
  return std::max({d1, d2, d3}) / denom;
}

template <class S>
Line<S> join(const Point<S>& p, const Point<S>& q) {
  Line<S> l(p.y * q.w - p.w * q.y, p.w * q.x - p.x * q.w, p.x * q.y - p.y * q.x);
  if (is_zero(l.a) && is_zero(l.b) && is_zero(l.c))
    throw geometry_error(errc::identical_elements, "join of coincident points");
  return l;
}

template <class S>
Point<S> meet(const Line<S>& l, const Line<S>& m) {
  Point<S> p(l.b * m.c - l.c * m.b, l.c * m.a - l.a * m.c, l.a * m.b - l.b * m.a);
  if (is_zero(p.x) && is_zero(p.y) && is_zero(p.w))
    throw geometry_error(errc::identical_elements, "meet of coincident lines");
  return p;
}

template <class S>
struct Verdict {
  bool ok = false;
  double residual = 0;  // scale-free determinant residual
};

template <class S>
Verdict<S> collinear(const Point<S>& p1, const Point<S>& p2, const Point<S>& p3) {
  S det = p1.x * (p2.y * p3.w - p2.w * p3.y) - p1.y * (p2.x * p3.w - p2.w * p3.x) +
          p1.w * (p2.x * p3.y - p2.y * p3.x);
  double denom = p1.norm_approx() * p2.norm_approx() * p3.norm_approx();
  double res = denom > 0 ? std::abs(approx(det)) / denom : 0;
  if constexpr (is_exact_v<S>) return {is_zero(det), res};
  else return {res <= tolerance_epsilon(), res};
}

template <class S>
Verdict<S> concurrent(const Line<S>& l1, const Line<S>& l2, const Line<S>& l3) {
  return collinear(Point<S>(l1.a, l1.b, l1.c), Point<S>(l2.a, l2.b, l2.c),
                   Point<S>(l3.a, l3.b, l3.c));
}

template <class S>
Point<S> reflect_through(const Point<S>& p, const Point<S>& center) {
  return Point<S>(S(2) * center.ax() - p.ax(), S(2) * center.ay() - p.ay());
}

template <class S>
Point<S> midpoint(const Point<S>& p, const Point<S>& q) {
  return Point<S>((p.ax() + q.ax()) / S(2), (p.ay() + q.ay()) / S(2));
}

template <class S>
S dist2(const Point<S>& p, const Point<S>& q) {
  S dx = p.ax() - q.ax(), dy = p.ay() - q.ay();
  return dx * dx + dy * dy;
}

// ---------------------------------------------------------------------------
// SimilarityFrame: the conformal map sending f2 to (-1,0) and f1 to (1,0),
// realized as complex-linear z -> m z + t. Rational in the coordinates, so
// exact tiers stay exact; circles map to circles.

template <class S>
struct SimilarityFrame {
  // forward map z -> m z + t (complex), stored componentwise
  S mre{1}, mim{0}, tre{0}, tim{0};

  static SimilarityFrame identity() { return SimilarityFrame{}; }

  static SimilarityFrame from_fermat_pair(const Point<S>& f2, const Point<S>& f1) {
    if (f2.at_infinity() || f1.at_infinity())
      throw geometry_error(errc::bad_input, "frame anchors must be affine");
    S dre = f1.ax() - f2.ax(), dim = f1.ay() - f2.ay();
    if (is_zero(dre) && is_zero(dim))
      throw geometry_error(errc::coincident_fermat_points, "frame anchors coincide");
    // m = 2 / d, t = -(f1 + f2) / d
    S n = dre * dre + dim * dim;
    S sre = f1.ax() + f2.ax(), sim = f1.ay() + f2.ay();
    SimilarityFrame f;
    f.mre = S(2) * dre / n;
    f.mim = S(0) - S(2) * dim / n;
    f.tre = S(0) - (sre * dre + sim * dim) / n;
    f.tim = S(0) - (sim * dre - sre * dim) / n;
    return f;
  }

  // homogeneous action: linear on (x, y, w), so points at infinity carry over
  Point<S> apply(const Point<S>& p) const {
    return Point<S>(mre * p.x - mim * p.y + tre * p.w, mim * p.x + mre * p.y + tim * p.w, p.w);
  }

  Point<S> apply_inverse(const Point<S>& p) const {
    S n = mre * mre + mim * mim;  // |m|^2, nonzero by construction
    S ux = p.x - tre * p.w, uy = p.y - tim * p.w;
    return Point<S>((mre * ux + mim * uy) / n, (mre * uy - mim * ux) / n, p.w);
  }

  // 3x3 matrix of the forward point action, row major
  std::array<S, 9> matrix() const {
    return {mre, S(0) - mim, tre, mim, mre, tim, S(0), S(0), S(1)};
  }

  // the inverse similarity z -> (z - t) / m
  SimilarityFrame inverse() const {
    S n = mre * mre + mim * mim;
    SimilarityFrame f;
    f.mre = mre / n;
    f.mim = (S(0) - mim) / n;
    f.tre = (S(0) - (tre * mre + tim * mim)) / n;
    f.tim = (S(0) - (tim * mre - tre * mim)) / n;
    return f;
  }

  // squared conformal scale factor |m|^2 (ratio of squared lengths)
  S scale_sq() const { return mre * mre + mim * mim; }
};

template <class S>
SimilarityFrame<S> normalize_frame(const Point<S>& f2, const Point<S>& f1) {
  return SimilarityFrame<S>::from_fermat_pair(f2, f1);
}

}  // namespace kiepert
