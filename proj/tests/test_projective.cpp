#include <doctest.h>

#include <random>

#include "kiepert/projective.hpp"

using namespace kiepert;

using QP = Point<QuadExt>;
using QL = Line<QuadExt>;

TEST_CASE("join and meet basics") {
  QL l = join(QP(QuadExt(0), QuadExt(0)), QP(QuadExt(1), QuadExt(1)));
  CHECK(same_line(l, QL(QuadExt(1), QuadExt(-1), QuadExt(0))));  // x - y = 0

  // x = 1 meets y = 2
  QP p = meet(QL(QuadExt(1), QuadExt(0), QuadExt(-1)), QL(QuadExt(0), QuadExt(1), QuadExt(-2)));
  CHECK(same_point(p, QP(QuadExt(1), QuadExt(2))));

  // parallels y = 1, y = 3 meet at infinity in direction (1,0)
  QP inf = meet(QL(QuadExt(0), QuadExt(1), QuadExt(-1)), QL(QuadExt(0), QuadExt(1), QuadExt(-3)));
  CHECK(inf.at_infinity());
  CHECK(same_point(inf, QP(QuadExt(1), QuadExt(0), QuadExt(0))));

  CHECK_THROWS_AS(join(QP(QuadExt(1), QuadExt(2)), QP(QuadExt(1), QuadExt(2))), geometry_error);
}

TEST_CASE("collinear verdicts") {
  CHECK(collinear(QP(QuadExt(0), QuadExt(0)), QP(QuadExt(1), QuadExt(1)),
                  QP(QuadExt(2), QuadExt(2)))
            .ok);
  CHECK_FALSE(collinear(QP(QuadExt(0), QuadExt(0)), QP(QuadExt(1), QuadExt(0)),
                        QP(QuadExt(0), QuadExt(1)))
                  .ok);
}

TEST_CASE("collinear verdict is permutation invariant") {
  std::mt19937 rng(3);
  std::uniform_int_distribution<int> d(-9, 9);
  for (int i = 0; i < 200; ++i) {
    std::array<QP, 3> p = {QP(QuadExt(d(rng)), QuadExt(d(rng))),
                           QP(QuadExt(d(rng)), QuadExt(d(rng))),
                           QP(QuadExt(d(rng)), QuadExt(d(rng)))};
    bool base = collinear(p[0], p[1], p[2]).ok;
    int perm[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
    for (auto& pi : perm) CHECK(collinear(p[pi[0]], p[pi[1]], p[pi[2]]).ok == base);
  }
}

TEST_CASE("join meet duality") {
  std::mt19937 rng(17);
  std::uniform_int_distribution<int> d(-9, 9);
  for (int i = 0; i < 200; ++i) {
    QP p(QuadExt(d(rng)), QuadExt(d(rng)));
    QP q(QuadExt(d(rng)), QuadExt(d(rng)));
    QP r(QuadExt(d(rng)), QuadExt(d(rng)));
    if (same_point(p, q) || same_point(p, r) || collinear(p, q, r).ok) continue;
    CHECK(same_point(meet(join(p, q), join(p, r)), p));
  }
}

TEST_CASE("normalize_frame maps the anchors exactly") {
  // f2=(0,0), f1=(4,0): translate (-2,0), scale 1/2
  auto f = normalize_frame(QP(QuadExt(0), QuadExt(0)), QP(QuadExt(4), QuadExt(0)));
  CHECK(same_point(f.apply(QP(QuadExt(0), QuadExt(0))), QP(QuadExt(-1), QuadExt(0))));
  CHECK(same_point(f.apply(QP(QuadExt(4), QuadExt(0))), QP(QuadExt(1), QuadExt(0))));
  CHECK(same_point(f.apply(QP(QuadExt(2), QuadExt(0))), QP(QuadExt(0), QuadExt(0))));

  // vertical anchor pair: rotation involved
  auto g = normalize_frame(QP(QuadExt(1), QuadExt(1)), QP(QuadExt(1), QuadExt(5)));
  CHECK(same_point(g.apply(QP(QuadExt(1), QuadExt(1))), QP(QuadExt(-1), QuadExt(0))));
  CHECK(same_point(g.apply(QP(QuadExt(1), QuadExt(5))), QP(QuadExt(1), QuadExt(0))));
  CHECK_THROWS_AS(normalize_frame(QP(QuadExt(1), QuadExt(1)), QP(QuadExt(1), QuadExt(1))),
                  geometry_error);
}

TEST_CASE("frame forward-inverse round trip and conformality") {
  std::mt19937 rng(29);
  std::uniform_int_distribution<int> d(-9, 9);
  auto f = normalize_frame(QP(QuadExt(Rational(3), Rational(1)), QuadExt(2)),
                           QP(QuadExt(-1), QuadExt(Rational(1, 3))));
  for (int i = 0; i < 100; ++i) {
    QP p(QuadExt(d(rng)), QuadExt(d(rng)));
    CHECK(same_point(f.apply_inverse(f.apply(p)), p));
  }
  // ratio preservation: |f(p)-f(q)|^2 / |p-q|^2 is the constant scale_sq
  QP p(QuadExt(2), QuadExt(3)), q(QuadExt(-1), QuadExt(7));
  QuadExt lhs = dist2(f.apply(p).normalized(), f.apply(q).normalized());
  CHECK(lhs == f.scale_sq() * dist2(p, q));
}

TEST_CASE("reflect_through") {
  CHECK(same_point(reflect_through(QP(QuadExt(1), QuadExt(0)), QP(QuadExt(0), QuadExt(0))),
                   QP(QuadExt(-1), QuadExt(0))));
  CHECK(same_point(reflect_through(QP(QuadExt(3), QuadExt(4)), QP(QuadExt(1), QuadExt(1))),
                   QP(QuadExt(-1), QuadExt(-2))));
  std::mt19937 rng(31);
  std::uniform_int_distribution<int> d(-9, 9);
  for (int i = 0; i < 100; ++i) {
    QP p(QuadExt(d(rng)), QuadExt(d(rng))), c(QuadExt(d(rng)), QuadExt(d(rng)));
    CHECK(same_point(reflect_through(reflect_through(p, c), c), p));
  }
}

TEST_CASE("numeric tier tolerant incidence") {
  using AP = Point<ApproxReal>;
  auto v = collinear(AP(ApproxReal(0.0), ApproxReal(0.0)), AP(ApproxReal(1.0), ApproxReal(1.0)),
                     AP(ApproxReal(2.0), ApproxReal(2.0 + 1e-13)));
  CHECK(v.ok);
  CHECK(v.residual < 1e-12);
}
