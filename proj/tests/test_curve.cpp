#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "qtwist/errors.hpp"

using namespace qtwist;

namespace {

Point pt(long x, long y) { return Point::affine(Rat(x), Rat(y)); }

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error raised");
  return ErrorCode::kUsage;
}

}  // namespace

TEST_CASE("make_curve invariants") {
  Curve c = make_curve(Int(0), Int(1));
  CHECK(c.disc == -432);
  CHECK(c.j_inv == 0);

  Curve e = make_curve(Int(-1), Int(0));
  CHECK(e.disc == 64);
  CHECK(e.j_inv == 1728);
  CHECK(e.m_const == 10);

  CHECK(make_curve(Int(1), Int(-1)).disc == -496);
  CHECK(code_of([] { make_curve(Int(0), Int(0)); }) == ErrorCode::kSingularCurve);
}

TEST_CASE("m_const is the least admissible integer") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<long> d(-100000, 100000);
  for (int i = 0; i < 500; ++i) {
    Int A(d(rng)), B(d(rng));
    if (4 * A * A * A + 27 * B * B == 0) continue;
    Curve c = make_curve(A, B);
    auto ok = [&](const Int& m) {
      return m * m >= 100 * abs(A) && m * m * m >= 125 * abs(B) && m >= 1;
    };
    CHECK(ok(c.m_const));
    if (c.m_const > 1) CHECK_FALSE(ok(c.m_const - 1));
  }
}

TEST_CASE("normalize_twist") {
  TwistDescriptor t = normalize_twist(make_curve(Int(-1), Int(0)), Int(5));
  CHECK(t.twisted.A == -25);
  CHECK(t.twisted.B == 0);
  CHECK(t.D == 5);

  TwistDescriptor n = normalize_twist(make_curve(Int(1), Int(1)), Int(-1));
  CHECK(n.base.A == 1);
  CHECK(n.base.B == -1);
  CHECK(n.D == 1);
  CHECK(n.negated);

  CHECK(code_of([] { normalize_twist(make_curve(Int(1), Int(1)), Int(4)); }) ==
        ErrorCode::kNotSquarefree);
  CHECK(code_of([] { normalize_twist(make_curve(Int(1), Int(1)), Int(0)); }) ==
        ErrorCode::kZeroTwist);
}

TEST_CASE("negative twist equals the positive twist of E-minus") {
  // E_{-D}: y^2 = x^3 + D^2 A x - D^3 B, which is (E^-)_D.
  Curve base = make_curve(Int(2), Int(3));
  TwistDescriptor t = normalize_twist(base, Int(-7));
  CHECK(t.twisted.A == 49 * 2);
  CHECK(t.twisted.B == -343 * 3);
}

TEST_CASE("phi_D maps E_D onto D y^2 = x^3 + A x + B") {
  TwistDescriptor t = normalize_twist(make_curve(Int(-1), Int(0)), Int(5));
  Point p = pt(-4, 6);
  Point q = phi_D(t, p);
  CHECK(q == Point::affine(Rat(-4, 5), Rat(6, 25)));
  CHECK(Rat(5) * q.y * q.y == q.x * q.x * q.x - q.x);
  CHECK(phi_D(t, Point::infinity()).inf);
  CHECK(phi_D_inverse(t, q) == p);

  TwistDescriptor one = normalize_twist(make_curve(Int(0), Int(1)), Int(1));
  CHECK(phi_D(one, pt(2, 3)) == pt(2, 3));
}

TEST_CASE("phi_D is a homomorphism") {
  TwistDescriptor t = normalize_twist(make_curve(Int(-1), Int(0)), Int(5));
  TwistModel m = twist_model(t);
  std::vector<Point> pts = {pt(-4, 6), pt(45, 300), pt(0, 0), pt(5, 0), pt(-5, 0)};
  pts.push_back(add(t.twisted, pts[0], pts[1]));
  pts.push_back(mul(t.twisted, 3, pts[0]));
  for (const Point& a : pts)
    for (const Point& b : pts) {
      Point lhs = phi_D(t, add(t.twisted, a, b));
      Point rhs = add_model(m, phi_D(t, a), phi_D(t, b));
      CHECK(lhs == rhs);
      CHECK(on_model(m, lhs));
    }
}

TEST_CASE("group law examples") {
  Curve c = make_curve(Int(0), Int(1));
  CHECK(add(c, pt(2, 3), pt(2, 3)) == pt(0, 1));
  CHECK(add(c, pt(2, 3), Point::infinity()) == pt(2, 3));
  CHECK(add(c, pt(0, 1), pt(0, -1)).inf);
  CHECK(mul(c, 3, pt(0, 1)).inf);
  CHECK(mul(c, 1, pt(2, 3)) == pt(2, 3));
  CHECK(mul(c, 6, pt(2, 3)).inf);
  CHECK(mul(c, 0, pt(2, 3)).inf);
  CHECK(mul(c, -5, pt(2, 3)) == neg(mul(c, 5, pt(2, 3))));
}

TEST_CASE("group law properties on random curves") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 200; ++i) {
    auto rc = oracle::random_curve_two_points(rng);
    const Curve& c = rc.c;
    Point r = add(c, rc.p, rc.q);
    Point s = dbl(c, rc.q);
    CHECK(add(c, rc.p, rc.q) == add(c, rc.q, rc.p));
    CHECK(add(c, add(c, rc.p, rc.q), s) == add(c, rc.p, add(c, rc.q, s)));
    CHECK(add(c, r, neg(r)).inf);
    CHECK(on_curve(c, r));
    for (int m = -3; m <= 3; ++m)
      for (int n = -3; n <= 3; ++n)
        CHECK(mul(c, m + n, rc.p) == add(c, mul(c, m, rc.p), mul(c, n, rc.p)));
  }
}

TEST_CASE("associativity on 1000 triples") {
  std::mt19937_64 rng(12);
  for (int i = 0; i < 1000; ++i) {
    auto rc = oracle::random_curve_two_points(rng, 6);
    const Curve& c = rc.c;
    Point z = sub(c, rc.p, rc.q);
    CHECK(add(c, add(c, rc.p, rc.q), z) == add(c, rc.p, add(c, rc.q, z)));
  }
}

TEST_CASE("psi3 and phi3 values") {
  CHECK(psi3(Int(0), Int(1), Int(1), Rat(1)) == 15);
  CHECK(psi3(Int(0), Int(0), Int(1), Rat(7)) == 3 * 7 * 7 * 7 * 7);
  // psi3 with D is the generic psi3 of (D^2 A, D^3 B).
  CHECK(psi3(Int(-1), Int(2), Int(3), Rat(5, 7)) == psi3(Int(-9), Int(54), Int(1), Rat(5, 7)));
  CHECK(phi3(Int(-1), Int(2), Int(3), Rat(5, 7)) == phi3(Int(-9), Int(54), Int(1), Rat(5, 7)));
}

TEST_CASE("x_triple against the group law and the psi recurrence") {
  Curve c = make_curve(Int(0), Int(1));
  CHECK(x_triple(c, pt(2, 3)) == mul(c, 3, pt(2, 3)).x);
  bool threw = false;
  try {
    x_triple(c, pt(0, 1));
  } catch (const Error& e) {
    threw = e.code() == ErrorCode::kTriplePointAtInfinity;
  }
  CHECK(threw);

  std::mt19937_64 rng(13);
  for (int i = 0; i < 300; ++i) {
    auto rc = oracle::random_curve_two_points(rng);
    if (torsion_order(rc.c, rc.p) != 0) continue;
    Rat x3 = x_triple(rc.c, rc.p);
    CHECK(x3 == mul(rc.c, 3, rc.p).x);
    oracle::PsiRecurrence psi(rc.c, rc.p);
    CHECK(x3 == psi.x_multiple(3));
    for (int m = 1; m <= 9; ++m) {
      CHECK(psi_at(rc.c, rc.p, m) == psi(m));
      CHECK(mul(rc.c, m, rc.p).x == psi.x_multiple(m));
    }
  }
}

TEST_CASE("psi4_over_y matches the recurrence") {
  std::mt19937_64 rng(14);
  for (int i = 0; i < 100; ++i) {
    auto rc = oracle::random_curve_two_points(rng);
    if (rc.p.y == 0) continue;
    oracle::PsiRecurrence psi(rc.c, rc.p);
    CHECK(rc.p.y * psi4_over_y(rc.c.A, rc.c.B, Int(1), rc.p.x) == psi(4));
  }
}

TEST_CASE("torsion subgroups") {
  TorsionInfo t = torsion_subgroup(make_curve(Int(-25), Int(0)));
  CHECK(t.tag == TorsionTag::kZ2xZ2);
  CHECK(t.order == 4);
  CHECK(t.tag_name() == "Z2xZ2");
  CHECK(t.contains(pt(0, 0)));
  CHECK(t.contains(pt(5, 0)));
  CHECK(t.contains(pt(-5, 0)));

  TorsionInfo s = torsion_subgroup(make_curve(Int(0), Int(1)));
  CHECK(s.order == 6);
  CHECK(s.tag == TorsionTag::kOther);
  CHECK(s.tag_name() == "other(6)");

  TorsionInfo triv = torsion_subgroup(make_curve(Int(0), Int(2)));
  CHECK(triv.order == 1);
  CHECK(triv.tag_name() == "trivial");
}

TEST_CASE("torsion points have the orders found by repeated addition") {
  for (long A = -12; A <= 12; ++A)
    for (long B = -12; B <= 12; ++B) {
      if (4 * A * A * A + 27 * B * B == 0) continue;
      Curve c = make_curve(Int(A), Int(B));
      TorsionInfo t = torsion_subgroup(c);
      CHECK(static_cast<int>(t.points.size()) == t.order);
      for (const Point& p : t.points) {
        int n = oracle::order_by_repeated_add(c, p);
        CHECK(n > 0);
        CHECK(torsion_order(c, p) == n);
        CHECK(t.order % n == 0);
      }
      // Integral points outside the list are of infinite order.
      for (const Point& p : oracle::brute_integral_points(Int(A), Int(B), -30, 60))
        if (!t.contains(p)) CHECK(oracle::order_by_repeated_add(c, p) == 0);
    }
}
