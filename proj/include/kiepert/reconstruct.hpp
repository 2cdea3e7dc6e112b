#pragma once

// Recovering the reference triangle from the Kiepert hyperbola, one Fermat
// point, and one vertex: reflect the Fermat point through the conic center,
// pass to the normalized frame (where the conic is x^2 + b xy - y^2 - 1 = 0
// and the inscribed equilateral triangle has a closed form), then cut the
// remaining two vertices out with chords through the radical axis.

#include <optional>
#include <vector>

#include "kiepert/kiepert.hpp"
#include "kiepert/poly.hpp"

namespace kiepert {

// P(t), Q(t), R(t) over any tier: the equilateral triangle inscribed in the
// circle of radius 2 about (-1,0), anchored at the rational circle parameter.
template <class S>
Triangle<S> yiu_from_parameter(const S& t) {
  if (is_zero(t)) throw geometry_error(errc::degenerate_parameter, "t = 0 collapses P onto F1");
  S s3 = sqrt3_of<S>();
  S den = t * t + S(1);
  Point<S> p((S(-1) * den + S(2) * (S(1) - t * t)) / den, S(4) * t / den);
  Point<S> q(S(-2) * (s3 * t + S(1)) / den, (S(0) - (s3 * t * t + S(2) * t - s3)) / den);
  Point<S> r(S(2) * (s3 * t - S(1)) / den, (s3 * t * t - S(2) * t - s3) / den);
  return Triangle<S>(p, q, r);
}

// Chord parameter of the normalized conic x^2 + b xy - y^2 - 1 = 0: any real
// root of 2 t^3 - 3 b t^2 - 6 t + b = 0 (the three roots parametrize the same
// inscribed triangle).
inline ApproxReal conic_family_parameter(const ApproxReal& b) {
  Poly<ApproxReal> cubic({b, ApproxReal(-6), ApproxReal(-3) * b, ApproxReal(2)});
  auto roots = solve_cubic_real(cubic);
  for (const auto& r : roots)
    if (!is_zero(r)) return r;
  throw geometry_error(errc::degenerate_scene, "no usable family parameter");
}

inline QuadExt conic_family_parameter(const QuadExt& b) {
  if (!b.b.is_zero())
    throw geometry_error(errc::unrepresentable_sqrt,
                         "exact reconstruction needs a rational family parameter");
  Poly<Rational> cubic({b.a, Rational(-6), -3 * b.a, Rational(2)});
  for (const auto& r : rational_roots(cubic))
    if (!r.is_zero()) return QuadExt(r);
  throw geometry_error(errc::unrepresentable_sqrt, "family cubic has no rational root");
}

template <class S>
struct ReconstructionCandidate {
  Triangle<S> triangle;     // in the original coordinates, containing `a`
  int paired_vertex;        // which Yiu vertex was joined with `a` (0,1,2)
  bool fermat_match;        // recomputed Fermat pair matches the designated roles
  double fermat_residual;
  double conic_residual;    // agreement of the candidate's Kiepert conic
};

template <class S>
struct ReconstructionResult {
  std::vector<ReconstructionCandidate<S>> candidates;  // validated
  std::vector<std::string> rejected;                   // diagnostics for the rest
  int distinct_valid_triangles = 0;
};

template <class S>
ReconstructionResult<S> reconstruct(const Conic<S>& k, const Point<S>& f, FermatWhich which,
                                    const Point<S>& a) {
  if (k.degenerate() || !is_rectangular(k))
    throw geometry_error(errc::degenerate_scene, "need a nondegenerate rectangular conic");
  if (!k.contains(a)) throw geometry_error(errc::vertex_not_on_conic, "given vertex off the conic");
  if (!k.contains(f))
    throw geometry_error(errc::bad_input, "Fermat points lie on the Kiepert hyperbola");
  Point<S> center = center_of(k);
  Point<S> other = reflect_through(f, center);
  Point<S> f1 = which == FermatWhich::first ? f : other;
  Point<S> f2 = which == FermatWhich::first ? other : f;
  if (same_point(a, f1) || same_point(a, f2))
    throw geometry_error(errc::bad_input, "vertex coincides with a Fermat point");

  SimilarityFrame<S> frame = normalize_frame(f2, f1);
  // drop accumulated magnitude history: the frame maps F2 -> (-1,0) and
  // F1 -> (1,0) exactly by construction, so its components are trustworthy
  frame.mre = refreshed(frame.mre);
  frame.mim = refreshed(frame.mim);
  frame.tre = refreshed(frame.tre);
  frame.tim = refreshed(frame.tim);
  Conic<S> kn = conic_pullback(k, frame.inverse().matrix()).normalized();
  // expected family x^2 + b xy - y^2 - 1 = 0; validate shape, read off b
  if (is_zero(kn.A()) || !is_zero(kn.D()) || !is_zero(kn.E()) || !is_zero(kn.A() + kn.C()) ||
      !is_zero(kn.A() + kn.F()))
    throw geometry_error(errc::degenerate_scene, "conic is not a Kiepert family member");
  S beta = refreshed(kn.B() / kn.A());
  Conic<S> family(S(1), beta, S(-1), S(0), S(0), S(-1));

  S t = conic_family_parameter(beta);
  Triangle<S> pqr = yiu_from_parameter(t);

  Circle<S> s1(Point<S>(S(-1), S(0)), S(4));
  Circle<S> s2(Point<S>(S(1), S(0)), S(4));
  Line<S> axis = radical_axis(s1, s2);  // x = 0

  Point<S> an = frame.apply(a).normalized();
  an = Point<S>(refreshed(an.ax()), refreshed(an.ay()));
  ReconstructionResult<S> result;
  for (int pick = 0; pick < 3; ++pick) {
    try {
      const Point<S>& x = pqr.v[pick];
      if (same_point(x, an))
        throw geometry_error(errc::degenerate_scene, "vertex coincides with a Yiu vertex");
      Point<S> v = meet(join(x, an), axis);
      // the other two reference vertices come from the other two chords
      std::array<Point<S>, 2> rest;
      for (int j = 0; j < 2; ++j) {
        const Point<S>& y = pqr.v[(pick + 1 + j) % 3];
        rest[j] = second_intersection(family, y, v);
        if (rest[j].at_infinity())
          throw geometry_error(errc::degenerate_scene, "recovered vertex at infinity");
      }
      Triangle<S> cand(an, rest[0], rest[1]);

      // validation: Fermat roles and conic round trip
      FermatPair<S> fp = fermat_pair(cand);
      Point<S> e1(S(1), S(0)), e2(S(-1), S(0));
      double fres = 1.0;
      if (!fp.f1.at_infinity() && !fp.f2.at_infinity()) {
        fres = std::max(std::max(std::abs(approx(fp.f1.ax() - e1.x)),
                                 std::abs(approx(fp.f1.ay() - e1.y))),
                        std::max(std::abs(approx(fp.f2.ax() - e2.x)),
                                 std::abs(approx(fp.f2.ay() - e2.y))));
      }
      bool fmatch;
      if constexpr (is_exact_v<S>) fmatch = same_point(fp.f1, e1) && same_point(fp.f2, e2);
      else fmatch = fres <= 1e-6;
      Conic<S> refit = fit_five_points<S>({cand.a(), cand.b(), cand.c(), e1, e2});
      double cres = conic_agreement_residual(refit, family);
      bool cmatch;
      if constexpr (is_exact_v<S>) cmatch = same_conic(refit, family);
      else cmatch = cres <= 1e-6;
      if (!fmatch || !cmatch) {
        result.rejected.push_back("pairing " + std::to_string(pick) + ": " +
                                  (!fmatch ? "fermat mismatch" : "conic mismatch"));
        continue;
      }
      Triangle<S> world(frame.apply_inverse(cand.a()).normalized(),
                        frame.apply_inverse(cand.b()).normalized(),
                        frame.apply_inverse(cand.c()).normalized());
      result.candidates.push_back(ReconstructionCandidate<S>{world, pick, fmatch, fres, cres});
    } catch (const geometry_error& e) {
      result.rejected.push_back("pairing " + std::to_string(pick) + ": " + e.what());
    }
  }
  if (result.candidates.empty()) {
    std::string why = "no pairing survived validation";
    for (const auto& r : result.rejected) why += "; " + r;
    throw geometry_error(errc::no_valid_candidate, why);
  }
  // multiplicity: count distinct vertex sets among the validated candidates
  auto same_triangle = [](const Triangle<S>& x, const Triangle<S>& y) {
    for (int i = 0; i < 3; ++i) {
      bool found = false;
      for (int j = 0; j < 3; ++j) found = found || same_point(x.v[i], y.v[j]);
      if (!found) return false;
    }
    return true;
  };
  for (size_t i = 0; i < result.candidates.size(); ++i) {
    bool fresh = true;
    for (size_t j = 0; j < i; ++j)
      fresh = fresh && !same_triangle(result.candidates[i].triangle, result.candidates[j].triangle);
    if (fresh) ++result.distinct_valid_triangles;
  }
  return result;
}

}  // namespace kiepert
