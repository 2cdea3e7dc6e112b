#pragma once

// Projective collineations between conics and the generalized perspectivity
// statement they carry.

#include <array>

#include "kiepert/conic.hpp"
#include "kiepert/kiepert.hpp"

namespace kiepert {

template <class S>
struct Homography {
  std::array<S, 9> h;  // row major, invertible up to scale

  static Homography identity() {
    return Homography{{S(1), S(0), S(0), S(0), S(1), S(0), S(0), S(0), S(1)}};
  }

  S det() const {
    return h[0] * (h[4] * h[8] - h[5] * h[7]) - h[1] * (h[3] * h[8] - h[5] * h[6]) +
           h[2] * (h[3] * h[7] - h[4] * h[6]);
  }

  // adjugate = inverse up to the (nonzero) determinant scale
  Homography adjugate() const {
    return Homography{{h[4] * h[8] - h[5] * h[7], h[2] * h[7] - h[1] * h[8],
                       h[1] * h[5] - h[2] * h[4], h[5] * h[6] - h[3] * h[8],
                       h[0] * h[8] - h[2] * h[6], h[2] * h[3] - h[0] * h[5],
                       h[3] * h[7] - h[4] * h[6], h[1] * h[6] - h[0] * h[7],
                       h[0] * h[4] - h[1] * h[3]}};
  }

  Point<S> apply(const Point<S>& p) const {
    return Point<S>(h[0] * p.x + h[1] * p.y + h[2] * p.w, h[3] * p.x + h[4] * p.y + h[5] * p.w,
                    h[6] * p.x + h[7] * p.y + h[8] * p.w);
  }

  // lines transform by the inverse transpose; the adjugate transpose differs
  // only by scale
  Line<S> apply(const Line<S>& l) const {
    auto a = adjugate().h;
    return Line<S>(a[0] * l.a + a[3] * l.b + a[6] * l.c, a[1] * l.a + a[4] * l.b + a[7] * l.c,
                   a[2] * l.a + a[5] * l.b + a[8] * l.c);
  }

  // conic of the image points: pullback of k by the inverse map
  Conic<S> push_forward(const Conic<S>& k) const { return conic_pullback(k, adjugate().h); }

  friend Homography operator*(const Homography& x, const Homography& y) {
    Homography r{};
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        r.h[i * 3 + j] = S(0);
        for (int l = 0; l < 3; ++l) r.h[i * 3 + j] += x.h[i * 3 + l] * y.h[l * 3 + j];
      }
    return r;
  }
};

// Homography taking four points in general position to four points in
// general position. Classic frame construction: scale the first three
// columns so they sum to the fourth.
template <class S>
Homography<S> homography_from_four_points(const std::array<Point<S>, 4>& src,
                                          const std::array<Point<S>, 4>& dst) {
  auto frame_matrix = [](const std::array<Point<S>, 4>& p) {
    // solve [p0 p1 p2] lambda = p3 by Cramer
    auto det3 = [](const Point<S>& a, const Point<S>& b, const Point<S>& c) {
      return a.x * (b.y * c.w - b.w * c.y) - a.y * (b.x * c.w - b.w * c.x) +
             a.w * (b.x * c.y - b.y * c.x);
    };
    S d = det3(p[0], p[1], p[2]);
    if (is_zero(d)) throw geometry_error(errc::degenerate_frame, "three frame points collinear");
    S l0 = det3(p[3], p[1], p[2]) / d;
    S l1 = det3(p[0], p[3], p[2]) / d;
    S l2 = det3(p[0], p[1], p[3]) / d;
    if (is_zero(l0) || is_zero(l1) || is_zero(l2))
      throw geometry_error(errc::degenerate_frame, "fourth frame point on a side");
    return Homography<S>{{l0 * p[0].x, l1 * p[1].x, l2 * p[2].x, l0 * p[0].y, l1 * p[1].y,
                          l2 * p[2].y, l0 * p[0].w, l1 * p[1].w, l2 * p[2].w}};
  };
  return frame_matrix(dst) * frame_matrix(src).adjugate();
}

// Collineation carrying k1 to k2 with p_i -> q_i. The fourth correspondence
// is the covariant pole of the chord p1p2 (meet of tangents), falling back to
// the p2p3 pole when that frame degenerates.
template <class S>
Homography<S> collineation_from_conics(const Conic<S>& k1, const std::array<Point<S>, 3>& p,
                                       const Conic<S>& k2, const std::array<Point<S>, 3>& q) {
  if (k1.degenerate() || k2.degenerate())
    throw geometry_error(errc::degenerate_conic, "collineation needs proper conics");
  for (int i = 0; i < 3; ++i) {
    if (!k1.contains(p[i]))
      throw geometry_error(errc::point_not_on_conic, "source point off its conic");
    if (!k2.contains(q[i]))
      throw geometry_error(errc::point_not_on_conic, "target point off its conic");
  }
  for (auto pair : {std::pair<int, int>{0, 1}, {1, 2}}) {
    auto [i, j] = pair;
    try {
      Point<S> p4 = meet(tangent_at(k1, p[i]), tangent_at(k1, p[j]));
      Point<S> q4 = meet(tangent_at(k2, q[i]), tangent_at(k2, q[j]));
      Homography<S> h = homography_from_four_points<S>({p[0], p[1], p[2], p4},
                                                       {q[0], q[1], q[2], q4});
      return h;
    } catch (const geometry_error& e) {
      if (e.code() != errc::degenerate_frame && e.code() != errc::identical_elements) throw;
    }
  }
  throw geometry_error(errc::degenerate_frame, "no usable tangent-pole frame");
}

// relative residual of H^T M2 H vs M1 (pullback identity)
template <class S>
double pullback_residual(const Homography<S>& h, const Conic<S>& k1, const Conic<S>& k2) {
  return conic_agreement_residual(conic_pullback(k2, h.h), k1);
}

// ---------------------------------------------------------------------------
// Generalized construction: chords of k through a point s on the Hessian line
// of t cut out a second inscribed triangle that is triply perspective with t,
// with all perspectors back on the Hessian line.

template <class S>
struct Theorem3Result {
  Triangle<S> second;
  TriplePerspectivity<S> perspectivity;
  Line<S> hessian;
  std::array<double, 3> perspector_on_hessian_residuals{};
  bool perspectors_on_hessian = false;
};

template <class S>
Theorem3Result<S> theorem3_inscribed(const Conic<S>& k, const Triangle<S>& t, const Point<S>& s) {
  double hres = 0;
  Line<S> hess = hessian_line(k, t, &hres);
  if (incidence_residual(hess, s) > (is_exact_v<S> ? 0.0 : tolerance_epsilon()) ||
      (is_exact_v<S> && !on_line(hess, s)))
    throw geometry_error(errc::bad_input, "s must lie on the Hessian line");
  std::array<Point<S>, 3> img;
  for (int i = 0; i < 3; ++i) {
    if (same_point(t.v[i], s))
      throw geometry_error(errc::tangent_chord, "s coincides with a vertex");
    img[i] = second_intersection(k, t.v[i], s);
    if (same_point(img[i], t.v[i]))
      throw geometry_error(errc::tangent_chord, "chord through s is tangent at a vertex");
  }
  Theorem3Result<S> res{Triangle<S>(img[0], img[1], img[2]),
                        triple_perspectivity(t, Triangle<S>(img[0], img[1], img[2])), hess};
  res.perspectors_on_hessian = true;
  for (int i = 0; i < 3; ++i) {
    const Point<S>& p = res.perspectivity.certs[i].perspector;
    res.perspector_on_hessian_residuals[i] = incidence_residual(hess, p);
    bool ok;
    if constexpr (is_exact_v<S>) ok = on_line(hess, p);
    else ok = res.perspector_on_hessian_residuals[i] <= tolerance_epsilon();
    res.perspectors_on_hessian = res.perspectors_on_hessian && ok;
  }
  return res;
}

}  // namespace kiepert
