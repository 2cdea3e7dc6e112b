#pragma once

// Conics: five-point fitting, classification, tangents, and the intersection
// algorithms, including the chord-slope cubic that produces the three
// residual circle/conic intersections.

#include <algorithm>
#include <array>
#include <cmath>
#include <vector>

#include "kiepert/poly.hpp"
#include "kiepert/projective.hpp"

namespace kiepert {

// A x^2 + B xy + C y^2 + D xw + E yw + F w^2 = 0, up to scale.
template <class S>
struct Conic {
  std::array<S, 6> k{S(0), S(0), S(0), S(0), S(0), S(0)};  // A,B,C,D,E,F

  Conic() = default;
  Conic(S A, S B, S C, S D, S E, S F) : k{A, B, C, D, E, F} {}

  const S& A() const { return k[0]; }
  const S& B() const { return k[1]; }
  const S& C() const { return k[2]; }
  const S& D() const { return k[3]; }
  const S& E() const { return k[4]; }
  const S& F() const { return k[5]; }

  S eval(const Point<S>& p) const {
    return k[0] * p.x * p.x + k[1] * p.x * p.y + k[2] * p.y * p.y + k[3] * p.x * p.w +
           k[4] * p.y * p.w + k[5] * p.w * p.w;
  }

  double eval_residual(const Point<S>& p) const {
    double n = p.norm_approx();
    double m = max_coeff_approx();
    if (n == 0 || m == 0) return 0;
    return std::abs(approx(eval(p))) / (m * n * n);
  }

  bool contains(const Point<S>& p) const {
    if constexpr (is_exact_v<S>) return is_zero(eval(p));
    else return eval_residual(p) <= tolerance_epsilon();
  }

  double max_coeff_approx() const {
    double m = 0;
    for (const auto& c : k) m = std::max(m, std::abs(approx(c)));
    return m;
  }

  // doubled symmetric matrix [2A B D; B 2C E; D E 2F] (exact-friendly, no halves)
  std::array<S, 9> matrix2() const {
    return {S(2) * k[0], k[1], k[3], k[1], S(2) * k[2], k[4], k[3], k[4], S(2) * k[5]};
  }

  // determinant of the doubled matrix; zero iff the conic is degenerate
  S det3() const {
    auto m = matrix2();
    return m[0] * (m[4] * m[8] - m[5] * m[7]) - m[1] * (m[3] * m[8] - m[5] * m[6]) +
           m[2] * (m[3] * m[7] - m[4] * m[6]);
  }

  bool degenerate() const {
    if constexpr (is_exact_v<S>) return is_zero(det3());
    double m = max_coeff_approx();
    if (m == 0) return true;
    return std::abs(approx(det3())) <= tolerance_epsilon() * 8 * m * m * m;
  }

  // exact tier: first nonzero coefficient becomes 1; numeric: divide by the
  // largest-magnitude coefficient
  Conic normalized() const {
    Conic r = *this;
    if constexpr (is_exact_v<S>) {
      for (const auto& c : k)
        if (!is_zero(c)) {
          for (auto& x : r.k) x = x / c;
          return r;
        }
    } else {
      double m = 0;
      int best = 0;
      for (int i = 0; i < 6; ++i)
        if (std::abs(approx(k[i])) > m) { m = std::abs(approx(k[i])); best = i; }
      if (m > 0)
        for (auto& x : r.k) x = x / k[best];
    }
    return r;
  }

  Conic scaled(const S& s) const {
    Conic r = *this;
    for (auto& x : r.k) x = x * s;
    return r;
  }
};

template <class S>
bool same_conic(const Conic<S>& p, const Conic<S>& q) {
  // all 2x2 minors of the stacked coefficient rows vanish
  for (int i = 0; i < 6; ++i)
    for (int j = i + 1; j < 6; ++j)
      if (!is_zero(p.k[i] * q.k[j] - p.k[j] * q.k[i])) return false;
  return true;
}

template <class S>
double conic_agreement_residual(const Conic<S>& p, const Conic<S>& q) {
  double np = p.max_coeff_approx(), nq = q.max_coeff_approx();
  if (np == 0 || nq == 0) return 0;
  double worst = 0;
  for (int i = 0; i < 6; ++i)
    for (int j = i + 1; j < 6; ++j)
      worst = std::max(worst, std::abs(approx(p.k[i] * q.k[j] - p.k[j] * q.k[i])));
  return worst / (np * nq);
}

template <class S>
struct Circle {
  Point<S> center;
  S radius_sq;

  Circle(Point<S> c, S r2) : center(std::move(c)), radius_sq(std::move(r2)) {}

  S eval(const Point<S>& p) const {
    S dx = p.ax() - center.ax(), dy = p.ay() - center.ay();
    return dx * dx + dy * dy - radius_sq;
  }
  bool contains(const Point<S>& p) const {
    if constexpr (is_exact_v<S>) return is_zero(eval(p));
    double sc = std::max(std::abs(approx(radius_sq)), 1.0);
    return std::abs(approx(eval(p))) <= tolerance_epsilon() * sc;
  }
  Conic<S> as_conic() const {
    S cx = center.ax(), cy = center.ay();
    return Conic<S>(S(1), S(0), S(1), S(0) - S(2) * cx, S(0) - S(2) * cy,
                    cx * cx + cy * cy - radius_sq);
  }
};

// ---------------------------------------------------------------------------
// Five-point fit: null space of the 5x6 incidence system, full pivoting with
// pivots chosen by magnitude (arithmetic stays exact in the exact tiers).

namespace detail {

template <class S>
std::vector<std::array<S, 6>> nullspace_5x6(std::array<std::array<S, 6>, 5> m) {
  constexpr int rows = 5, cols = 6;
  std::array<int, cols> col_of_pivot{};  // column chosen at each elimination step
  std::array<bool, cols> used{};
  int rank = 0;
  std::array<int, rows> pivot_row{}, pivot_col{};
  for (int step = 0; step < rows; ++step) {
    // full pivot among remaining rows/unused columns
    double best = 0;
    int br = -1, bc = -1;
    for (int r = step; r < rows; ++r)
      for (int c = 0; c < cols; ++c) {
        if (used[c]) continue;
        double v = std::abs(approx(m[r][c]));
        if (v > best) { best = v; br = r; bc = c; }
      }
    bool zero_rest = (br < 0);
    if (!zero_rest) {
      if constexpr (is_exact_v<S>) zero_rest = is_zero(m[br][bc]);
      else zero_rest = best <= 1e-13;  // rows are pre-scaled to unit max entry
    }
    if (zero_rest) break;
    std::swap(m[step], m[br]);
    used[bc] = true;
    pivot_row[rank] = step;
    pivot_col[rank] = bc;
    ++rank;
    for (int r = step + 1; r < rows; ++r) {
      if (is_zero(m[r][bc]) && is_exact_v<S>) continue;
      S f = m[r][bc] / m[step][bc];
      for (int c = 0; c < cols; ++c) m[r][c] = m[r][c] - f * m[step][c];
      m[r][bc] = S(0);
    }
  }
  // one basis vector per free column, by back substitution
  std::vector<std::array<S, 6>> basis;
  for (int fc = 0; fc < cols; ++fc) {
    if (used[fc]) continue;
    std::array<S, 6> v;
    v.fill(S(0));
    v[fc] = S(1);
    for (int i = rank - 1; i >= 0; --i) {
      int r = pivot_row[i], c = pivot_col[i];
      S acc = S(0);
      for (int j = 0; j < cols; ++j)
        if (j != c) acc += m[r][j] * v[j];
      v[c] = (S(0) - acc) / m[r][c];
    }
    basis.push_back(v);
  }
  (void)col_of_pivot;
  return basis;
}

}  // namespace detail

template <class S>
Conic<S> fit_five_points(const std::array<Point<S>, 5>& pts) {
  for (int i = 0; i < 5; ++i)
    for (int j = i + 1; j < 5; ++j)
      if (same_point(pts[i], pts[j]))
        throw geometry_error(errc::no_unique_conic, "repeated input point");
  std::array<std::array<S, 6>, 5> m;
  for (int i = 0; i < 5; ++i) {
    const Point<S> p = pts[i].normalized();
    m[i] = {p.x * p.x, p.x * p.y, p.y * p.y, p.x * p.w, p.y * p.w, p.w * p.w};
    if constexpr (!is_exact_v<S>) {
      double mm = 0;
      for (auto& e : m[i]) mm = std::max(mm, std::abs(approx(e)));
      if (mm > 0)
        for (auto& e : m[i]) e = e / S(mm);
    }
  }
  auto basis = detail::nullspace_5x6<S>(m);
  if (basis.empty()) throw geometry_error(errc::no_unique_conic, "inconsistent system");
  if (basis.size() > 1)
    throw geometry_error(errc::no_unique_conic, "nullity exceeds one (degenerate configuration)");
  Conic<S> k;
  k.k = basis[0];
  return k.normalized();
}

template <class S>
Point<S> center_of(const Conic<S>& k) {
  if (k.degenerate()) throw geometry_error(errc::degenerate_conic, "center of degenerate conic");
  // pole of the line at infinity: solve [2A B; B 2C] (x,y) = -(D,E)
  S det = S(4) * k.A() * k.C() - k.B() * k.B();
  if (is_zero(det)) throw geometry_error(errc::not_central, "parabola has no center");
  S x = (k.B() * k.E() - S(2) * k.C() * k.D()) / det;
  S y = (k.B() * k.D() - S(2) * k.A() * k.E()) / det;
  return Point<S>(x, y);
}

template <class S>
bool is_rectangular(const Conic<S>& k) {
  S s = k.A() + k.C();
  if constexpr (is_exact_v<S>) return is_zero(s);
  double m = std::max({std::abs(approx(k.A())), std::abs(approx(k.B())), std::abs(approx(k.C()))});
  if (m == 0) return false;
  return std::abs(approx(s)) <= tolerance_epsilon() * m;
}

template <class S>
Line<S> tangent_at(const Conic<S>& k, const Point<S>& p) {
  if (!k.contains(p))
    throw geometry_error(errc::point_not_on_conic, "tangent base point off the conic");
  auto m = k.matrix2();
  Line<S> l(m[0] * p.x + m[1] * p.y + m[2] * p.w, m[3] * p.x + m[4] * p.y + m[5] * p.w,
            m[6] * p.x + m[7] * p.y + m[8] * p.w);
  if (is_zero(l.a) && is_zero(l.b) && is_zero(l.c))
    throw geometry_error(errc::pole_undefined, "singular point of a degenerate conic");
  return l;
}

// Residual intersection of line(known, through) with k; `known` must lie on
// k. Tangency returns `known` itself; if `through` is also on k, `through`.
template <class S>
Point<S> second_intersection(const Conic<S>& k, const Point<S>& known, const Point<S>& through) {
  if (!k.contains(known))
    throw geometry_error(errc::point_not_on_conic, "known point off the conic");
  if (same_point(known, through))
    throw geometry_error(errc::identical_elements, "chord endpoints coincide");
  // X(s) = known + s * through; k(X) = s^2 k(through) + s * bilinear
  auto m = k.matrix2();
  auto mul = [&](const Point<S>& p) {
    return Point<S>(m[0] * p.x + m[1] * p.y + m[2] * p.w, m[3] * p.x + m[4] * p.y + m[5] * p.w,
                    m[6] * p.x + m[7] * p.y + m[8] * p.w);
  };
  Point<S> mk = mul(known);
  S bilinear = mk.x * through.x + mk.y * through.y + mk.w * through.w;  // = 2 known^T M through
  S quad = k.eval(through);
  if (is_zero(quad)) return through.normalized();  // through is itself on k
  if (is_zero(bilinear)) return known.normalized();  // tangent at known
  Point<S> r(quad * known.x - bilinear * through.x, quad * known.y - bilinear * through.y,
             quad * known.w - bilinear * through.w);
  return r.normalized();
}

template <class S>
Line<S> radical_axis(const Circle<S>& c1, const Circle<S>& c2) {
  S ax = c1.center.ax(), ay = c1.center.ay();
  S bx = c2.center.ax(), by = c2.center.ay();
  if (is_zero(ax - bx) && is_zero(ay - by))
    throw geometry_error(errc::concentric_circles, "radical axis undefined");
  // subtract the two expanded circle equations
  return Line<S>(S(2) * (bx - ax), S(2) * (by - ay),
                 (ax * ax + ay * ay - c1.radius_sq) - (bx * bx + by * by - c2.radius_sq));
}

// Intersections of a line with a circle; exact tiers require the discriminant
// to be a square in the field (it is for every construction in scope).
template <class S>
std::vector<Point<S>> line_circle_intersections(const Line<S>& l, const Circle<S>& c) {
  // parametrize the line by a base point and direction
  Point<S> dir(l.b, S(0) - l.a, S(0));
  Point<S> base = [&] {
    if (!is_zero(l.a)) return Point<S>((S(0) - l.c) / l.a, S(0));
    return Point<S>(S(0), (S(0) - l.c) / l.b);
  }();
  // |base + t dir - center|^2 = r^2
  S ex = base.ax() - c.center.ax(), ey = base.ay() - c.center.ay();
  S qa = dir.x * dir.x + dir.y * dir.y;
  S qb = S(2) * (ex * dir.x + ey * dir.y);
  S qc = ex * ex + ey * ey - c.radius_sq;
  S disc = qb * qb - S(4) * qa * qc;
  int ds = sgn(disc);
  if (ds < 0) return {};
  if (ds == 0) {
    S t = (S(0) - qb) / (S(2) * qa);
    return {Point<S>(base.ax() + t * dir.x, base.ay() + t * dir.y)};
  }
  auto root = field_sqrt(disc);
  if (!root) throw geometry_error(errc::unrepresentable_sqrt, "discriminant has no field sqrt");
  S t1 = ((S(0) - qb) + *root) / (S(2) * qa);
  S t2 = ((S(0) - qb) - *root) / (S(2) * qa);
  return {Point<S>(base.ax() + t1 * dir.x, base.ay() + t1 * dir.y),
          Point<S>(base.ax() + t2 * dir.x, base.ay() + t2 * dir.y)};
}

template <class S>
std::vector<Point<S>> circle_circle_intersections(const Circle<S>& c1, const Circle<S>& c2) {
  return line_circle_intersections(radical_axis(c1, c2), c1);
}

// ---------------------------------------------------------------------------
// Circle/conic residual intersections via the chord-slope elimination: chords
// of c through `common` are parametrized by slope m; the second circle point
// of each chord is rational in m, and requiring it to lie on k yields a
// quartic whose root at the tangent direction is deflated away. Numeric tier
// only (the remaining cubic generally leaves Q(sqrt(3))).

inline std::vector<Point<ApproxReal>> circle_conic_residual_intersections(
    const Circle<ApproxReal>& c, const Conic<ApproxReal>& k, const Point<ApproxReal>& common) {
  if (!c.contains(common) || !k.contains(common))
    throw geometry_error(errc::bad_input, "common point must lie on both curves");
  if (k.degenerate())
    throw geometry_error(errc::degenerate_conic, "circle/conic intersection needs a proper conic");
  using P = Poly<ApproxReal>;
  const ApproxReal x0 = common.ax(), y0 = common.ay();
  const ApproxReal cx = c.center.ax(), cy = c.center.ay();
  const ApproxReal dy0 = y0 - cy, dx0 = x0 - cx;

  // second circle point of the slope-m chord: (P1(m), P2(m)) / (1 + m^2)
  P p1({ApproxReal(2) * cx - x0, ApproxReal(0) - ApproxReal(2) * dy0, x0});
  P p2({y0, ApproxReal(2) * (cx - x0), ApproxReal(2) * cy - y0});
  P w({ApproxReal(1), ApproxReal(0), ApproxReal(1)});  // 1 + m^2

  P quartic = k.A() * (p1 * p1) + k.B() * (p1 * p2) + k.C() * (p2 * p2) + k.D() * (p1 * w) +
              k.E() * (p2 * w) + k.F() * (w * w);

  // known root: tangent slope of the circle at `common`
  std::vector<double> slopes;
  bool vertical_extra = false;
  P reduced = quartic;
  if (!is_zero(dy0)) {
    ApproxReal mt = (ApproxReal(0) - dx0) / dy0;
    reduced = deflate(quartic, mt);
  }
  reduced.trim();
  int deg = reduced.degree();
  if (deg > 3) throw geometry_error(errc::degenerate_scene, "unexpected elimination degree");
  if (deg == 3) {
    for (const auto& r : solve_cubic_real(reduced)) slopes.push_back(r.v);
  } else {
    // degree dropped: one intersection sits on the vertical chord
    vertical_extra = true;
    std::vector<double> dc;
    for (const auto& x : reduced.c) dc.push_back(x.v);
    if (deg == 2)
      for (double r : detail::solve_quadratic_raw(dc[2], dc[1], dc[0])) slopes.push_back(r);
    else if (deg == 1)
      slopes.push_back(-dc[0] / dc[1]);
  }
  std::sort(slopes.begin(), slopes.end());

  std::vector<Point<ApproxReal>> out;
  for (double mv : slopes) {
    ApproxReal m(mv, std::max(std::abs(mv), 1.0));
    ApproxReal ww = ApproxReal(1) + m * m;
    out.emplace_back(p1.eval(m) / ww, p2.eval(m) / ww);
  }
  if (vertical_extra) out.emplace_back(x0, ApproxReal(2) * cy - y0);

  // drop anything that folded back onto the common point (tangency)
  std::erase_if(out, [&](const Point<ApproxReal>& p) { return same_point(p, common); });

  if (out.size() != 3)
    throw geometry_error(errc::fewer_than_three_real_intersections,
                         "expected exactly three residual intersections, got " +
                             std::to_string(out.size()));
  for (const auto& p : out)
    if (!c.contains(p) || !k.contains(p))
      throw geometry_error(errc::fewer_than_three_real_intersections,
                           "residual intersection failed the on-curve check");
  return out;
}

// Pullback of a conic under a 3x3 point map H (row major): points p with
// H p on k. Used to carry conics across frames and homographies.
template <class S>
Conic<S> conic_pullback(const Conic<S>& k, const std::array<S, 9>& h) {
  auto m = k.matrix2();  // 2*M, symmetric
  // N = H^T (2M) H
  std::array<S, 9> t{}, n{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      t[i * 3 + j] = S(0);
      for (int l = 0; l < 3; ++l) t[i * 3 + j] += m[i * 3 + l] * h[l * 3 + j];
    }
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      n[i * 3 + j] = S(0);
      for (int l = 0; l < 3; ++l) n[i * 3 + j] += h[l * 3 + i] * t[l * 3 + j];
    }
  // N = 2 * [A' B'/.. ] doubled form; read coefficients back
  return Conic<S>(n[0] / S(2), n[1], n[4] / S(2), n[2], n[5], n[8] / S(2)).normalized();
}

}  // namespace kiepert
