#pragma once

// Three arithmetic tiers: exact rationals, the quadratic extension Q(sqrt(3)),
// and tolerance-governed doubles. Everything downstream is templated on one
// of these scalar types.

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

#include "kiepert/errors.hpp"

namespace kiepert {

using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline constexpr double kSqrt3 = 1.7320508075688772935;

// Global relative-tolerance knob (overridable via CLI / KIEPERT_TOL).
inline double& tolerance_epsilon() {
  static double eps = 1e-9;
  return eps;
}

inline int sgn(const Rational& r) { return r.sign(); }
inline bool is_zero(const Rational& r) { return r.is_zero(); }
inline double approx(const Rational& r) { return r.template convert_to<double>(); }

inline std::string to_string(const Rational& r) { return r.str(); }

inline Rational rational_from_string(const std::string& s) {
  auto slash = s.find('/');
  if (slash == std::string::npos) return Rational(Int(s));
  Int num(s.substr(0, slash));
  Int den(s.substr(slash + 1));
  if (den == 0) throw geometry_error(errc::bad_input, "zero denominator in '" + s + "'");
  return Rational(num, den);
}

// Exact square root of a nonnegative rational, when one exists.
inline std::optional<Rational> rational_sqrt(const Rational& r) {
  if (r.sign() < 0) return std::nullopt;
  Int n = boost::multiprecision::numerator(r);
  Int d = boost::multiprecision::denominator(r);
  Int sn = boost::multiprecision::sqrt(n);
  Int sd = boost::multiprecision::sqrt(d);
  if (sn * sn != n || sd * sd != d) return std::nullopt;
  return Rational(sn, sd);
}

// ---------------------------------------------------------------------------
// QuadExt: a + b*sqrt(3) with exact rational components.

struct QuadExt {
  Rational a;  // rational part
  Rational b;  // coefficient of sqrt(3)

  QuadExt() : a(0), b(0) {}
  QuadExt(int v) : a(v), b(0) {}                  // NOLINT: implicit by design
  QuadExt(Rational v) : a(std::move(v)), b(0) {}  // NOLINT
  QuadExt(Rational ra, Rational rb) : a(std::move(ra)), b(std::move(rb)) {}

  static QuadExt sqrt3() { return QuadExt(Rational(0), Rational(1)); }

  QuadExt operator-() const { return QuadExt(-a, -b); }

  QuadExt& operator+=(const QuadExt& o) { a += o.a; b += o.b; return *this; }
  QuadExt& operator-=(const QuadExt& o) { a -= o.a; b -= o.b; return *this; }
  QuadExt& operator*=(const QuadExt& o) {
    Rational na = a * o.a + 3 * b * o.b;
    Rational nb = a * o.b + b * o.a;
    a = std::move(na);
    b = std::move(nb);
    return *this;
  }
  QuadExt& operator/=(const QuadExt& o) {
    Rational norm = o.a * o.a - 3 * o.b * o.b;
    if (norm.is_zero()) {
      if (o.a.is_zero() && o.b.is_zero())
        throw geometry_error(errc::division_by_zero, "QuadExt division by zero");
      // a^2 = 3 b^2 with nonzero parts is impossible (sqrt(3) irrational)
      throw geometry_error(errc::division_by_zero, "QuadExt zero field norm");
    }
    // (a + b s3) * (oa - ob s3) / norm
    Rational na = (a * o.a - 3 * b * o.b) / norm;
    Rational nb = (b * o.a - a * o.b) / norm;
    a = std::move(na);
    b = std::move(nb);
    return *this;
  }

  friend QuadExt operator+(QuadExt x, const QuadExt& y) { return x += y; }
  friend QuadExt operator-(QuadExt x, const QuadExt& y) { return x -= y; }
  friend QuadExt operator*(QuadExt x, const QuadExt& y) { return x *= y; }
  friend QuadExt operator/(QuadExt x, const QuadExt& y) { return x /= y; }
  friend bool operator==(const QuadExt& x, const QuadExt& y) { return x.a == y.a && x.b == y.b; }
  friend bool operator!=(const QuadExt& x, const QuadExt& y) { return !(x == y); }
};

// Exact sign of a + b*sqrt(3), no floating point: when the parts disagree in
// sign the verdict follows from comparing a^2 against 3 b^2.
inline int sgn(const QuadExt& x) {
  int sa = x.a.sign();
  int sb = x.b.sign();
  if (sb == 0) return sa;
  if (sa == 0) return sb;
  if (sa == sb) return sa;
  Rational diff = x.a * x.a - 3 * x.b * x.b;
  int cmp = diff.sign();
  return sa > 0 ? cmp : -cmp;
}

inline bool is_zero(const QuadExt& x) { return x.a.is_zero() && x.b.is_zero(); }
inline double approx(const QuadExt& x) { return approx(x.a) + approx(x.b) * kSqrt3; }

inline bool operator<(const QuadExt& x, const QuadExt& y) { return sgn(x - y) < 0; }

// Square root inside Q(sqrt(3)), when the argument is a perfect square there.
inline std::optional<QuadExt> field_sqrt(const QuadExt& q) {
  if (sgn(q) < 0) return std::nullopt;
  if (is_zero(q)) return QuadExt(0);
  if (q.b.is_zero()) {
    if (auto ra = rational_sqrt(q.a)) return QuadExt(*ra, Rational(0));  // sqrt rational
    if (auto rb = rational_sqrt(q.a / 3)) return QuadExt(Rational(0), *rb);
    return std::nullopt;
  }
  // (x + y s3)^2 = q  =>  x^2 + 3 y^2 = q.a, 2 x y = q.b
  // => 4 x^4 - 4 q.a x^2 + 3 q.b^2 = 0
  auto disc = rational_sqrt(q.a * q.a - 3 * q.b * q.b);
  if (!disc) return std::nullopt;
  for (int pick = 0; pick < 2; ++pick) {
    Rational x2 = (q.a + (pick == 0 ? *disc : -*disc)) / 2;
    if (x2.sign() <= 0) continue;
    if (auto x = rational_sqrt(x2)) {
      Rational y = q.b / (2 * *x);
      QuadExt root(*x, y);
      if (root * root == q) return sgn(root) >= 0 ? root : -root;
    }
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// ApproxReal: a double tagged with a magnitude-bound "scale" that tracks the
// geometric extent of the expressions it came from. Zero tests and signs are
// relative to eps * scale; raw equality is never used.

struct ApproxReal {
  double v = 0.0;
  double scale = 1.0;

  ApproxReal() = default;
  ApproxReal(int x) : v(x), scale(std::max(std::abs(double(x)), 1.0)) {}  // NOLINT
  ApproxReal(double x) : v(x), scale(std::max(std::abs(x), 1.0)) {}       // NOLINT
  ApproxReal(double x, double s) : v(x), scale(std::max({s, std::abs(x), 1e-30})) {}

  static ApproxReal sqrt3() { return ApproxReal(kSqrt3, kSqrt3); }

  ApproxReal operator-() const { return ApproxReal(-v, scale); }

  friend ApproxReal operator+(const ApproxReal& x, const ApproxReal& y) {
    return ApproxReal(x.v + y.v, std::max(x.scale, y.scale));
  }
  friend ApproxReal operator-(const ApproxReal& x, const ApproxReal& y) {
    return ApproxReal(x.v - y.v, std::max(x.scale, y.scale));
  }
  friend ApproxReal operator*(const ApproxReal& x, const ApproxReal& y) {
    // first-order propagation keeps scale comparable to the value unless the
    // history contains genuine cancellation
    return ApproxReal(x.v * y.v, std::abs(x.v) * y.scale + std::abs(y.v) * x.scale);
  }
  friend ApproxReal operator/(const ApproxReal& x, const ApproxReal& y) {
    double denom = std::max(std::abs(y.v), 1e-300);
    return ApproxReal(x.v / y.v, (x.scale + std::abs(x.v / denom) * y.scale) / denom);
  }
  ApproxReal& operator+=(const ApproxReal& o) { return *this = *this + o; }
  ApproxReal& operator-=(const ApproxReal& o) { return *this = *this - o; }
  ApproxReal& operator*=(const ApproxReal& o) { return *this = *this * o; }
  ApproxReal& operator/=(const ApproxReal& o) { return *this = *this / o; }
};

inline int sgn(const ApproxReal& x) {
  if (std::abs(x.v) <= tolerance_epsilon() * x.scale) return 0;
  return x.v > 0 ? 1 : -1;
}
inline bool is_zero(const ApproxReal& x) { return sgn(x) == 0; }
inline double approx(const ApproxReal& x) { return x.v; }
inline bool operator==(const ApproxReal& x, const ApproxReal& y) { return is_zero(x - y); }
inline bool operator!=(const ApproxReal& x, const ApproxReal& y) { return !(x == y); }
inline bool operator<(const ApproxReal& x, const ApproxReal& y) { return sgn(x - y) < 0; }

// Collapse the tracked magnitude history back to the value itself. Use only
// after a quantity has been validated independently (e.g. against a known
// canonical shape), so that downstream zero tests are not poisoned by
// pessimistic scale accumulation from a long computation chain.
inline ApproxReal refreshed(const ApproxReal& x) { return ApproxReal(x.v); }
inline const Rational& refreshed(const Rational& x) { return x; }
inline const QuadExt& refreshed(const QuadExt& x) { return x; }

inline std::optional<ApproxReal> field_sqrt(const ApproxReal& x) {
  int s = sgn(x);
  if (s < 0) return std::nullopt;
  if (s == 0) return ApproxReal(0.0, std::sqrt(x.scale));
  return ApproxReal(std::sqrt(x.v), std::sqrt(x.scale));
}

// ---------------------------------------------------------------------------

template <class S>
struct scalar_traits;

template <>
struct scalar_traits<Rational> {
  static constexpr bool exact = true;
};
template <>
struct scalar_traits<QuadExt> {
  static constexpr bool exact = true;
};
template <>
struct scalar_traits<ApproxReal> {
  static constexpr bool exact = false;
};

template <class S>
inline constexpr bool is_exact_v = scalar_traits<S>::exact;

template <class S>
S sqrt3_of() {
  if constexpr (std::is_same_v<S, QuadExt>) return QuadExt::sqrt3();
  else if constexpr (std::is_same_v<S, ApproxReal>) return ApproxReal::sqrt3();
  else static_assert(!sizeof(S), "sqrt(3) is not representable in this tier");
}

}  // namespace kiepert
