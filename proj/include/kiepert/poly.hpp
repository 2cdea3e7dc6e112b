#pragma once

// Low-degree polynomial machinery: evaluation, synthetic division, and real
// root solving for the cubics the chord elimination produces. Degrees never
// exceed 4 here.

#include <algorithm>
#include <cmath>
#include <vector>

#include "kiepert/scalar.hpp"

namespace kiepert {

template <class S>
struct Poly {
  // coefficients, lowest degree first
  std::vector<S> c;

  Poly() = default;
  explicit Poly(std::vector<S> coeffs) : c(std::move(coeffs)) {}

  int degree() const { return static_cast<int>(c.size()) - 1; }

  S eval(const S& x) const {
    if (c.empty()) return S(0);
    S acc = c.back();
    for (int i = static_cast<int>(c.size()) - 2; i >= 0; --i) acc = acc * x + c[i];
    return acc;
  }

  Poly derivative() const {
    Poly d;
    for (size_t i = 1; i < c.size(); ++i) d.c.push_back(c[i] * S(static_cast<int>(i)));
    return d;
  }

  // Drop (tier-appropriately) zero leading coefficients. For the numeric tier
  // "zero" is relative to the largest coefficient magnitude.
  Poly& trim() {
    if constexpr (is_exact_v<S>) {
      while (!c.empty() && is_zero(c.back())) c.pop_back();
    } else {
      double m = 0;
      for (const auto& x : c) m = std::max(m, std::abs(approx(x)));
      while (!c.empty() && std::abs(approx(c.back())) <= 1e-12 * m) c.pop_back();
    }
    return *this;
  }

  friend Poly operator*(const Poly& p, const Poly& q) {
    if (p.c.empty() || q.c.empty()) return Poly();
    Poly r;
    r.c.assign(p.c.size() + q.c.size() - 1, S(0));
    for (size_t i = 0; i < p.c.size(); ++i)
      for (size_t j = 0; j < q.c.size(); ++j) r.c[i + j] += p.c[i] * q.c[j];
    return r;
  }
  friend Poly operator+(const Poly& p, const Poly& q) {
    Poly r = p;
    if (q.c.size() > r.c.size()) r.c.resize(q.c.size(), S(0));
    for (size_t i = 0; i < q.c.size(); ++i) r.c[i] += q.c[i];
    return r;
  }
  friend Poly operator*(const S& k, Poly p) {
    for (auto& x : p.c) x = x * k;
    return p;
  }
};

// Synthetic division by (x - root). The remainder is p(root); it must vanish
// exactly in the exact tiers and within tolerance in the numeric tier.
template <class S>
Poly<S> deflate(const Poly<S>& p, const S& root, double* residual_out = nullptr) {
  if (p.degree() < 1) throw geometry_error(errc::not_a_root, "cannot deflate a constant");
  std::vector<S> q(p.c.size() - 1, S(0));
  S carry = p.c.back();
  for (int i = static_cast<int>(q.size()) - 1; i >= 0; --i) {
    q[i] = carry;
    carry = carry * root + p.c[i];
  }
  // carry == p(root)
  double res = std::abs(approx(carry));
  if constexpr (is_exact_v<S>) {
    if (!is_zero(carry)) throw geometry_error(errc::not_a_root, "exact deflation remainder nonzero");
  } else {
    double m = 0;
    for (const auto& x : p.c) m = std::max(m, std::abs(approx(x)));
    double r = std::abs(approx(root));
    double bound = m * std::max(1.0, r * r * r * r);
    if (res > 1e-6 * std::max(bound, 1.0))
      throw geometry_error(errc::not_a_root, "deflation remainder exceeds tolerance");
  }
  if (residual_out) *residual_out = res;
  return Poly<S>(std::move(q));
}

namespace detail {

inline double polish_newton(const std::vector<double>& c, double x) {
  // one guarded Newton step
  double f = 0, fp = 0;
  for (int i = static_cast<int>(c.size()) - 1; i >= 0; --i) {
    fp = fp * x + f;
    f = f * x + c[i];
  }
  if (fp == 0) return x;
  double step = f / fp;
  double limit = std::max(1.0, std::abs(x));
  if (std::abs(step) > 0.1 * limit) return x;
  return x - step;
}

inline std::vector<double> solve_quadratic_raw(double a, double b, double c) {
  if (a == 0) {
    if (b == 0) return {};
    return {-c / b};
  }
  double disc = b * b - 4 * a * c;
  double scale = std::max({b * b, std::abs(4 * a * c), 1e-300});
  if (disc < -1e-12 * scale) return {};
  if (disc <= 1e-12 * scale) return {-b / (2 * a)};
  double sq = std::sqrt(disc);
  double q = -0.5 * (b + (b >= 0 ? sq : -sq));
  double r1 = q / a, r2 = c / q;
  if (r1 > r2) std::swap(r1, r2);
  return {r1, r2};
}

// All real roots of a cubic, ascending. Trigonometric method in the
// three-real-root (negative discriminant) case, Cardano otherwise, each root
// finished with a guarded Newton step on the original coefficients.
inline std::vector<double> solve_cubic_raw(double c0, double c1, double c2, double c3) {
  const std::vector<double> coeffs = {c0, c1, c2, c3};
  double b = c2 / c3, c = c1 / c3, d = c0 / c3;
  // depressed cubic t^3 + p t + q, x = t - b/3
  double shift = b / 3.0;
  double p = c - b * b / 3.0;
  double q = 2.0 * b * b * b / 27.0 - b * c / 3.0 + d;
  double disc = q * q / 4.0 + p * p * p / 27.0;
  std::vector<double> roots;
  double dscale = std::max(q * q / 4.0, std::abs(p * p * p / 27.0));
  if (disc < 0) {
    // three distinct real roots (casus irreducibilis): Viete
    double m = 2.0 * std::sqrt(-p / 3.0);
    double arg = 3.0 * q / (p * m);
    arg = std::clamp(arg, -1.0, 1.0);
    double theta = std::acos(arg) / 3.0;
    for (int k = 0; k < 3; ++k)
      roots.push_back(m * std::cos(theta - 2.0 * M_PI * k / 3.0) - shift);
  } else if (disc <= 1e-14 * std::max(dscale, 1e-300) && p != 0) {
    // repeated roots
    double u = 3.0 * q / p;   // double root at -u/2... derive via p,q relations
    roots.push_back(u - shift);
    roots.push_back(-u / 2.0 - shift);
    roots.push_back(-u / 2.0 - shift);
  } else {
    double sq = std::sqrt(std::max(disc, 0.0));
    double u = std::cbrt(-q / 2.0 + sq);
    double v = std::cbrt(-q / 2.0 - sq);
    roots.push_back(u + v - shift);
  }
  for (auto& r : roots) r = polish_newton(coeffs, r);
  std::sort(roots.begin(), roots.end());
  return roots;
}

}  // namespace detail

// Real roots of a degree-3 polynomial over the numeric tier, ascending with
// multiplicity.
inline std::vector<ApproxReal> solve_cubic_real(const Poly<ApproxReal>& p) {
  if (p.degree() != 3)
    throw geometry_error(errc::degenerate_leading_coefficient, "degree is not 3");
  double m = 0;
  for (const auto& x : p.c) m = std::max(m, std::abs(x.v));
  double lead = std::abs(p.c[3].v);
  if (lead <= tolerance_epsilon() * m)
    throw geometry_error(errc::degenerate_leading_coefficient,
                         "leading coefficient below tolerance");
  auto raw = detail::solve_cubic_raw(p.c[0].v, p.c[1].v, p.c[2].v, p.c[3].v);
  double sc = 0;
  for (const auto& x : p.c) sc = std::max(sc, x.scale);
  std::vector<ApproxReal> out;
  for (double r : raw) out.emplace_back(r, std::max(std::abs(r), 1.0));
  (void)sc;
  return out;
}

// Rational roots of a polynomial with rational coefficients, found by
// continued-fraction reconstruction of the numeric roots and verified
// exactly. Covers the cubics the reconstruction pipeline meets, where a
// rational root is guaranteed whenever the scene lives in Q(sqrt(3)).
inline std::vector<Rational> rational_roots(const Poly<Rational>& p_in) {
  Poly<Rational> p = p_in;
  p.trim();
  std::vector<Rational> found;
  if (p.degree() < 1) return found;
  // numeric approximations
  std::vector<double> dc;
  for (const auto& x : p.c) dc.push_back(approx(x));
  std::vector<double> approx_roots;
  if (p.degree() == 1) approx_roots = {-dc[0] / dc[1]};
  else if (p.degree() == 2) approx_roots = detail::solve_quadratic_raw(dc[2], dc[1], dc[0]);
  else if (p.degree() == 3) approx_roots = detail::solve_cubic_raw(dc[0], dc[1], dc[2], dc[3]);
  else {
    // bisection scan for higher degrees (unused in practice, degree <= 4)
    for (double x = -1e3; x < 1e3; x += 0.5) {
      auto f = [&](double t) {
        double acc = 0;
        for (int i = static_cast<int>(dc.size()) - 1; i >= 0; --i) acc = acc * t + dc[i];
        return acc;
      };
      if (f(x) == 0) approx_roots.push_back(x);
      else if (f(x) * f(x + 0.5) < 0) {
        double lo = x, hi = x + 0.5;
        for (int it = 0; it < 100; ++it) {
          double mid = (lo + hi) / 2;
          (f(lo) * f(mid) <= 0 ? hi : lo) = mid;
        }
        approx_roots.push_back((lo + hi) / 2);
      }
    }
  }
  for (double r : approx_roots) {
    // continued fraction convergents of r, verified against p exactly
    double x = r;
    Int p0 = 0, p1 = 1, q0 = 1, q1 = 0;
    for (int it = 0; it < 64; ++it) {
      if (!std::isfinite(x) || std::abs(x) > 1e18) break;
      double fl = std::floor(x);
      Int a(static_cast<long long>(fl));
      Int p2 = a * p1 + p0, q2 = a * q1 + q0;
      if (q2 != 0) {
        Rational cand(p2, q2);
        if (is_zero(p.eval(cand))) {
          if (std::find(found.begin(), found.end(), cand) == found.end()) found.push_back(cand);
          break;
        }
      }
      p0 = p1; p1 = p2; q0 = q1; q1 = q2;
      double frac = x - fl;
      if (frac < 1e-15) break;
      x = 1.0 / frac;
    }
  }
  std::sort(found.begin(), found.end());
  return found;
}

}  // namespace kiepert
