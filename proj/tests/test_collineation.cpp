#include <doctest.h>

#include <cmath>
#include <random>

#include "kiepert/collineation.hpp"
#include "kiepert/kiepert.hpp"
#include "kiepert/oracle.hpp"

using namespace kiepert;

using QP = Point<QuadExt>;
using AP = Point<ApproxReal>;
namespace {
QuadExt qr(int n, int d = 1) { return QuadExt(Rational(n, d)); }
QuadExt s3() { return QuadExt::sqrt3(); }
ApproxReal ar(double v) { return ApproxReal(v); }

Conic<QuadExt> unit_circle() {
  return Conic<QuadExt>(qr(1), qr(0), qr(1), qr(0), qr(0), qr(-1));
}
}  // namespace

TEST_CASE("collineation for a quarter rotation of the circle") {
  auto k = unit_circle();
  std::array<QP, 3> src = {QP(qr(1), qr(0)), QP(qr(0), qr(1)), QP(qr(-1), qr(0))};
  std::array<QP, 3> dst = {QP(qr(0), qr(1)), QP(qr(-1), qr(0)), QP(qr(0), qr(-1))};
  auto h = collineation_from_conics(k, src, k, dst);
  for (int i = 0; i < 3; ++i) CHECK(same_point(h.apply(src[i]), dst[i]));
  CHECK(pullback_residual(h, k, k) == 0.0);
  // acts as the rotation on a fourth point too
  CHECK(same_point(h.apply(QP(qr(0), qr(-1))), QP(qr(1), qr(0))));
}

TEST_CASE("collineation mapping the circle onto the hyperbola, exactly") {
  auto k1 = unit_circle();
  QuadExt h = s3() / qr(2);
  std::array<QP, 3> src = {QP(qr(1), qr(0)), QP(qr(-1, 2), h), QP(qr(-1, 2), QuadExt(0) - h)};
  auto k2 = oracle_conic(1);
  auto pqr = oracle_PQR(1);
  std::array<QP, 3> dst = {pqr.a(), pqr.b(), pqr.c()};
  auto hom = collineation_from_conics(k1, src, k2, dst);
  for (int i = 0; i < 3; ++i) CHECK(same_point(hom.apply(src[i]), dst[i]));
  CHECK(pullback_residual(hom, k1, k2) == 0.0);
  CHECK(same_conic(conic_pullback(k2, hom.h), k1));
}

TEST_CASE("identity collineation") {
  auto k = unit_circle();
  std::array<QP, 3> p = {QP(qr(1), qr(0)), QP(qr(0), qr(1)), QP(qr(3, 5), qr(4, 5))};
  auto h = collineation_from_conics(k, p, k, p);
  QP probe(qr(-3, 5), qr(4, 5));
  CHECK(same_point(h.apply(probe), probe));
  CHECK(same_point(h.apply(QP(qr(2), qr(7))), QP(qr(2), qr(7))));
}

TEST_CASE("theorem-3 construction with s at infinity on the circle") {
  auto k = unit_circle();
  QuadExt h = s3() / qr(2);
  Triangle<QuadExt> eq(QP(qr(1), qr(0)), QP(qr(-1, 2), h), QP(qr(-1, 2), QuadExt(0) - h));
  QP s(qr(1), qr(2), qr(0));  // direction (1,2); hessian line is at infinity
  auto res = theorem3_inscribed(k, eq, s);
  CHECK(res.perspectors_on_hessian);
  // second triangle is the chord image: still inscribed, and the chords are
  // parallel so every perspector lies at infinity
  for (int i = 0; i < 3; ++i) CHECK(k.contains(res.second.v[i]));
  for (const auto& c : res.perspectivity.certs) CHECK(c.perspector.at_infinity());
}

TEST_CASE("theorem-3 construction reproduces the chord-secondary oracle") {
  auto k = oracle_conic(1);
  auto pqr = oracle_PQR(1);
  QP s(qr(0), qr(2));  // on the hessian line x = 0
  auto res = theorem3_inscribed(k, pqr, s);
  auto sec = oracle_secondary(1, qr(2));
  for (int i = 0; i < 3; ++i) {
    bool found = false;
    for (int j = 0; j < 3; ++j) found = found || same_point(res.second.v[i], sec.v[j]);
    CHECK(found);
  }
  auto expect = oracle_perspectors(1, qr(2));
  for (const auto& p : expect) {
    bool found = false;
    for (const auto& c : res.perspectivity.certs) found = found || same_point(p, c.perspector);
    CHECK(found);
  }
  CHECK(res.perspectors_on_hessian);
}

TEST_CASE("doubly perspective inscribed pairs are triply perspective") {
  // random chords through a fixed hessian point: Lemma-2.7-style sanity
  std::mt19937 rng(97);
  std::uniform_real_distribution<double> d(0.2, 6.0);
  auto on_circle = [&](double th) {
    return AP(ar(std::cos(th)), ar(std::sin(th)));
  };
  Conic<ApproxReal> k(ar(1), ar(0), ar(1), ar(0), ar(0), ar(-1));
  int done = 0;
  while (done < 20) {
    try {
      Triangle<ApproxReal> t(on_circle(d(rng)), on_circle(d(rng)), on_circle(d(rng)));
      double hres = 0;
      auto hess = hessian_line(k, t, &hres);
      REQUIRE(hres < 1e-9);
      // pick a point on the hessian line
      AP s = meet(hess, Line<ApproxReal>(ar(0.3), ar(1), ar(d(rng))));
      auto res = theorem3_inscribed(k, t, s);
      for (const auto& c : res.perspectivity.certs) CHECK(c.residual < 1e-8);
      CHECK(res.perspectors_on_hessian);
      ++done;
    } catch (const geometry_error&) {
    }
  }
}

TEST_CASE("incidence verdicts survive conjugation by a homography") {
  std::mt19937 rng(101);
  std::uniform_real_distribution<double> d(-2.0, 2.0);
  auto k = oracle_conic(1);
  auto pqr = oracle_PQR(1);
  auto sec = oracle_secondary(1, qr(2));
  auto tp = triple_perspectivity(pqr, sec);

  // numeric copies
  auto num_pt = [](const QP& p) { return AP(ar(approx(p.x)), ar(approx(p.y)), ar(approx(p.w))); };
  Conic<ApproxReal> kn;
  for (int i = 0; i < 6; ++i) kn.k[i] = ar(approx(k.k[i]));

  for (int trial = 0; trial < 5; ++trial) {
    Homography<ApproxReal> h;
    do {
      for (int i = 0; i < 9; ++i) h.h[i] = ar(d(rng));
    } while (std::abs(approx(h.det())) < 0.1);
    auto map_tri = [&](const Triangle<QuadExt>& t) {
      return Triangle<ApproxReal>(h.apply(num_pt(t.a())).normalized(),
                                  h.apply(num_pt(t.b())).normalized(),
                                  h.apply(num_pt(t.c())).normalized());
    };
    auto t1 = map_tri(pqr), t2 = map_tri(sec);
    auto kk = h.push_forward(kn);
    for (int i = 0; i < 3; ++i) CHECK(kk.eval_residual(t1.v[i]) < 1e-8);
    auto tpc = triple_perspectivity(t1, t2);
    for (const auto& c : tpc.certs) CHECK(c.residual < 1e-7);
    // conjugated perspectors match mapped perspectors, as a set
    auto close_pts = [](const AP& p, const AP& q) {
      AP a = p.normalized(), b = q.normalized();
      return std::abs(approx(a.x) - approx(b.x)) < 1e-5 &&
             std::abs(approx(a.y) - approx(b.y)) < 1e-5 &&
             std::abs(approx(a.w) - approx(b.w)) < 1e-5;
    };
    for (const auto& c : tp.certs) {
      AP mapped = h.apply(num_pt(c.perspector));
      bool found = false;
      for (const auto& cc : tpc.certs) found = found || close_pts(mapped, cc.perspector);
      CHECK(found);
    }
  }
}
