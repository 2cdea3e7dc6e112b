#include <doctest.h>

#include <cmath>
#include <random>

#include "kiepert/triangle.hpp"

using namespace kiepert;

using QP = Point<QuadExt>;
namespace {
QuadExt qr(int n, int d = 1) { return QuadExt(Rational(n, d)); }

// independent Fermat-point oracle: minimize total distance to the vertices by
// coordinate descent with shrinking steps (valid when all angles < 120 deg)
std::pair<double, double> fermat_descent(double ax, double ay, double bx, double by, double cx,
                                         double cy) {
  auto cost = [&](double x, double y) {
    return std::hypot(x - ax, y - ay) + std::hypot(x - bx, y - by) + std::hypot(x - cx, y - cy);
  };
  double x = (ax + bx + cx) / 3, y = (ay + by + cy) / 3;
  double step = 1.0;
  for (int it = 0; it < 400; ++it) {
    bool improved = false;
    for (auto [dx, dy] : {std::pair{step, 0.0}, {-step, 0.0}, {0.0, step}, {0.0, -step}}) {
      if (cost(x + dx, y + dy) < cost(x, y)) {
        x += dx;
        y += dy;
        improved = true;
      }
    }
    if (!improved) step /= 2;
    if (step < 1e-13) break;
  }
  return {x, y};
}
}  // namespace

TEST_CASE("centroid") {
  Triangle<QuadExt> t(QP(qr(0), qr(0)), QP(qr(3), qr(0)), QP(qr(0), qr(3)));
  CHECK(same_point(centroid(t), QP(qr(1), qr(1))));
  Triangle<QuadExt> u(QP(qr(0), qr(0)), QP(qr(4), qr(0)), QP(qr(1), qr(3)));
  CHECK(same_point(centroid(u), QP(qr(5, 3), qr(1))));
  CHECK_THROWS_AS(Triangle<QuadExt>(QP(qr(0), qr(0)), QP(qr(0), qr(0)), QP(qr(1), qr(3))),
                  geometry_error);
}

TEST_CASE("erected_apex") {
  // ccw triangle above the x-axis; outward on (0,0)-(2,0) is below
  QuadExt s3 = QuadExt::sqrt3();
  QP apex = erected_apex(QP(qr(0), qr(0)), QP(qr(2), qr(0)), ApexSide::outward, Orientation::ccw);
  CHECK(same_point(apex, QP(qr(1), QuadExt(0) - s3)));
  QP in = erected_apex(QP(qr(0), qr(0)), QP(qr(2), qr(0)), ApexSide::inward, Orientation::ccw);
  CHECK(same_point(in, QP(qr(1), s3)));
  // edge (0,2)->(0,0) of the ccw triangle with third vertex (3,1): outward is -x side
  Triangle<QuadExt> t(QP(qr(0), qr(2)), QP(qr(0), qr(0)), QP(qr(3), qr(1)));
  REQUIRE(t.orientation() == Orientation::ccw);
  QP a2 = erected_apex(QP(qr(0), qr(2)), QP(qr(0), qr(0)), ApexSide::outward, Orientation::ccw);
  CHECK(same_point(a2, QP(QuadExt(0) - s3, qr(1))));
  // apex really is equilateral with the segment
  CHECK(dist2(a2, QP(qr(0), qr(0))) == qr(4));
  CHECK(dist2(a2, QP(qr(0), qr(2))) == qr(4));
}

TEST_CASE("fermat point of an equilateral triangle is the centroid") {
  QuadExt s3 = QuadExt::sqrt3();
  Triangle<QuadExt> t(QP(qr(0), qr(0)), QP(qr(1), qr(0)), QP(qr(1, 2), s3 / qr(2)));
  QP f = fermat_point(t, FermatWhich::first);
  CHECK(same_point(f, QP(qr(1, 2), s3 / qr(6))));
}

TEST_CASE("fermat point concurrency is exact for rational vertices") {
  std::mt19937 rng(53);
  std::uniform_int_distribution<int> d(-10, 10);
  int done = 0;
  while (done < 50) {
    QP a(qr(d(rng)), qr(d(rng))), b(qr(d(rng)), qr(d(rng))), c(qr(d(rng)), qr(d(rng)));
    try {
      Triangle<QuadExt> t(a, b, c);
      double r1 = 1, r2 = 1;
      fermat_point(t, FermatWhich::first, &r1);
      fermat_point(t, FermatWhich::second, &r2);
      CHECK(r1 == 0.0);
      CHECK(r2 == 0.0);
      ++done;
    } catch (const geometry_error&) {
    }
  }
}

TEST_CASE("first fermat point matches the distance-minimization oracle") {
  // all angles < 120 degrees here
  Triangle<QuadExt> t(QP(qr(0), qr(0)), QP(qr(4), qr(0)), QP(qr(1), qr(3)));
  QP f = fermat_point(t, FermatWhich::first);
  auto [ox, oy] = fermat_descent(0, 0, 4, 0, 1, 3);
  CHECK(std::abs(approx(f.ax()) - ox) < 1e-7);
  CHECK(std::abs(approx(f.ay()) - oy) < 1e-7);
  CHECK(fermat_pair(t).f1_minimizes);
}

TEST_CASE("obtuse (>=120) triangle is flagged, construction still concurrent") {
  Triangle<QuadExt> t(QP(qr(0), qr(0)), QP(qr(10), qr(0)), QP(qr(5), qr(1)));
  auto fp = fermat_pair(t);
  CHECK_FALSE(fp.f1_minimizes);
  CHECK(fp.residual1 == 0.0);
}

TEST_CASE("swapping first/second equals swapping outward/inward") {
  Triangle<QuadExt> t(QP(qr(0), qr(0)), QP(qr(4), qr(0)), QP(qr(1), qr(3)));
  Orientation o = t.orientation();
  for (int i = 0; i < 3; ++i) {
    QP out = erected_apex(t.v[(i + 1) % 3], t.v[(i + 2) % 3], ApexSide::outward, o);
    QP in = erected_apex(t.v[(i + 1) % 3], t.v[(i + 2) % 3], ApexSide::inward, o);
    CHECK_FALSE(same_point(out, in));
  }
  // and the two fermat points differ
  auto fp = fermat_pair(t);
  CHECK_FALSE(same_point(fp.f1, fp.f2));
}

TEST_CASE("orthocenter") {
  Triangle<QuadExt> r(QP(qr(0), qr(0)), QP(qr(4), qr(0)), QP(qr(0), qr(3)));
  CHECK(same_point(orthocenter(r), QP(qr(0), qr(0))));
  Triangle<QuadExt> t(QP(qr(0), qr(0)), QP(qr(2), qr(0)), QP(qr(1), qr(2)));
  CHECK(same_point(orthocenter(t), QP(qr(1), qr(1, 2))));
  QuadExt s3 = QuadExt::sqrt3();
  Triangle<QuadExt> e(QP(qr(0), qr(0)), QP(qr(2), qr(0)), QP(qr(1), s3));
  CHECK(same_point(orthocenter(e), centroid(e)));
}

TEST_CASE("nine point circle of the 3-4-5 right triangle") {
  Triangle<QuadExt> t(QP(qr(0), qr(0)), QP(qr(4), qr(0)), QP(qr(0), qr(3)));
  auto npc = nine_point_circle(t);
  CHECK(same_point(npc.circle.center, QP(qr(1), qr(3, 4))));
  CHECK(npc.circle.radius_sq == qr(25, 16));
  CHECK(npc.max_residual() == 0.0);
}

TEST_CASE("nine point circle passes through all nine points, exactly") {
  std::mt19937 rng(59);
  std::uniform_int_distribution<int> d(-8, 8);
  int done = 0;
  while (done < 40) {
    try {
      Triangle<QuadExt> t(QP(qr(d(rng)), qr(d(rng))), QP(qr(d(rng)), qr(d(rng))),
                          QP(qr(d(rng)), qr(d(rng))));
      CHECK(nine_point_circle(t).max_residual() == 0.0);
      ++done;
    } catch (const geometry_error&) {
    }
  }
}
