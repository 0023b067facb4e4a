#include <doctest.h>

#include <cmath>
#include <map>
#include <random>

#include "qtwist/errors.hpp"
#include "qtwist/heights.hpp"
#include "qtwist/mw_geometry.hpp"
#include "qtwist/point_search.hpp"

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

struct TableCell {
  int n;
  double cos_theta, e_theta;
};

// Published angle table.
const TableCell kPrinted[] = {
    {2, 0.9295160031, 3.6029265222},  {3, 0.8000000000, 2.1186523293},
    {4, 0.7333333333, 1.8270722583},  {5, 0.6909090909, 1.6930091121},
    {6, 0.6615384615, 1.6154645667},  {7, 0.6400000000, 1.5648147297},
    {8, 0.6235294118, 1.5291061421},  {9, 0.6105263158, 1.5025674344},
    {10, 0.6000000000, 1.4820645884}, {11, 0.5913043478, 1.4657471511},
    {12, 0.5840000000, 1.4524515355}, {13, 0.5777777778, 1.4414091501},
    {14, 0.5724137931, 1.4320918024}, {15, 0.5677419355, 1.4241244810},
    {16, 0.5636363636, 1.4172335583}, {17, 0.5600000000, 1.4112146878},
    {18, 0.5567567568, 1.4059121773}, {19, 0.5538461538, 1.4012053190},
    {20, 0.5512195122, 1.3969990839},
};

// y^2 = x^3 + 17, rank 2 with trivial torsion.
GeneratorSet rank_two() {
  return make_generator_set(make_curve(Int(0), Int(17)), Int(1), {pt(-2, 3), pt(-1, 4)},
                            Provenance::kIngested);
}

GeneratorSet congruent5() {
  TwistDescriptor tw = normalize_twist(make_curve(Int(-1), Int(0)), Int(5));
  return make_generator_set(tw.twisted, tw.D, {pt(-4, 6)}, Provenance::kIngested);
}

}  // namespace

TEST_CASE("appendix table matches the printed cells") {
  std::vector<TableRow> t = appendix_table();
  REQUIRE(t.size() == 19);
  for (std::size_t i = 0; i < t.size(); ++i) {
    CAPTURE(t[i].n);
    CHECK(t[i].n == kPrinted[i].n);
    CHECK(std::fabs(t[i].cos_theta - kPrinted[i].cos_theta) < 1e-8);
    CHECK(std::fabs(t[i].e_theta - kPrinted[i].e_theta) < 1e-8);
    CHECK(std::fabs(ms_angle_bound(t[i].n) - kPrinted[i].cos_theta) < 1e-8);
    CHECK(std::fabs(kl_base(kPrinted[i].cos_theta) - kPrinted[i].e_theta) < 1e-8);
    if (i > 0) CHECK(t[i].e_theta < t[i - 1].e_theta);
  }
  std::string csv = appendix_table_csv();
  CHECK(csv.find("10,0.6000000000,1.4820645884") != std::string::npos);
  CHECK(csv == appendix_table_csv());
}

TEST_CASE("kl_base and obtuse_bound") {
  CHECK(std::fabs(kl_base(0.8) - 2.1186523293) < 1e-9);
  CHECK(kl_base(0.63) <= 1.55);
  CHECK(kl_base(0.504) * 3 <= 3.99);  // large-point base times 3^r cosets
  CHECK(obtuse_bound(-1.0 / 6) == doctest::Approx(7));
  CHECK(obtuse_bound(-1) == doctest::Approx(2));
  CHECK(obtuse_bound(-0.5) == doctest::Approx(3));
  CHECK(code_of([] { kl_base(0); }) == ErrorCode::kDomainError);
  CHECK(code_of([] { kl_base(1); }) == ErrorCode::kDomainError);
  CHECK(code_of([] { obtuse_bound(0); }) == ErrorCode::kDomainError);
  CHECK(code_of([] { ms_angle_bound(1); }) == ErrorCode::kDomainError);
  CHECK(code_of([] { ms_angle_bound(21); }) == ErrorCode::kDomainError);
}

TEST_CASE("kl_base against a direct evaluation") {
  for (double c = 0.05; c < 0.999; c += 0.01) {
    double s = std::sqrt(1 - c * c);
    double u = (1 + s) / (2 * s), v = (1 - s) / (2 * s);
    double e = u * std::log(u) - v * std::log(v) + 0.001;
    CHECK(kl_base(c) == doctest::Approx(std::exp(e)).epsilon(1e-12));
  }
}

TEST_CASE("banding constants") {
  BandingChecks b = banding_constants_ok();
  CHECK(b.ml_bands);
  CHECK(b.large_bands);
  CHECK(b.rank_assembly);
  CHECK(b.all());
}

TEST_CASE("cos_angle basics") {
  Curve c = make_curve(Int(0), Int(17));
  Point p = pt(-2, 3), q = pt(-1, 4);
  const double tol = 1e-10;
  CHECK(cos_angle(c, p, p, tol).value == doctest::Approx(1).epsilon(1e-9));
  CHECK(cos_angle(c, p, neg(p), tol).value == doctest::Approx(-1).epsilon(1e-9));
  CosAngle a = cos_angle(c, p, q, tol);
  CHECK(std::fabs(a.via_sum - a.via_diff) < 10 * tol);
  double hp = canonical_height_local(c, p).value, hq = canonical_height_local(c, q).value;
  double hpq = canonical_height_local(c, add(c, p, q)).value;
  CHECK(a.pairing == doctest::Approx((hpq - hp - hq) / 2).epsilon(1e-8));
  CHECK(a.via_sum == doctest::Approx((hpq - hp - hq) / (2 * std::sqrt(hp * hq))).epsilon(1e-8));
  CHECK(pairing(c, p, q, tol) == doctest::Approx(a.pairing).epsilon(1e-9));
  CHECK(code_of([] {
          Curve e = make_curve(Int(0), Int(1));
          cos_angle(e, pt(2, 3), pt(2, 3), 1e-8);
        }) == ErrorCode::kTorsionArgument);
}

TEST_CASE("cos via P+Q and P-Q agree on random combinations") {
  GeneratorSet gs = rank_two();
  const Curve& c = gs.curve;
  std::mt19937_64 rng(61);
  std::uniform_int_distribution<int> d(-3, 3);
  const double tol = 1e-10;
  for (int i = 0; i < 40; ++i) {
    int a1 = d(rng), a2 = d(rng), b1 = d(rng), b2 = d(rng);
    if ((a1 == 0 && a2 == 0) || (b1 == 0 && b2 == 0)) continue;
    Point p = add(c, mul(c, a1, gs.gens[0]), mul(c, a2, gs.gens[1]));
    Point q = add(c, mul(c, b1, gs.gens[0]), mul(c, b2, gs.gens[1]));
    CosAngle ca = cos_angle(c, p, q, tol);
    CHECK(std::fabs(ca.via_sum - ca.via_diff) < 10 * tol / std::sqrt(
                                                       canonical_height_local(c, p).value *
                                                       canonical_height_local(c, q).value) + 1e-12);
    // Lattice oracle: <P,Q> from the Gram matrix.
    Eigen::Vector2d u(a1, a2), v(b1, b2);
    CHECK(ca.pairing == doctest::Approx(u.dot(gs.gram * v)).epsilon(1e-7));
    CHECK(std::fabs(ca.value) <= 1);
  }
}

TEST_CASE("decomposition and coset keys") {
  GeneratorSet gs = congruent5();
  const Curve& c = gs.curve;
  Point g = gs.gens[0];
  Point t = pt(5, 0);

  Decomposition d = decompose(pt(45, 300), gs);
  CHECK(add(c, mul(c, d.coeffs[0], g), d.torsion) == pt(45, 300));
  CHECK(gs.torsion.contains(d.torsion));

  Point p = add(c, mul(c, 4, g), t);
  CHECK(coset_key(p, gs, 4) == coset_key(t, gs, 4));
  CHECK(coset_key(g, gs, 3).residues == std::vector<long>{1});
  CHECK(coset_key(mul(c, -1, g), gs, 3).residues == std::vector<long>{2});

  CHECK(coset_count(gs, 4) == 16);  // 4 * |T/4T| with T = Z2xZ2
  CHECK(coset_count(gs, 3) == 3);
  CHECK(coset_count(rank_two(), 3) == 9);
  CHECK(coset_count(make_generator_set(make_curve(Int(0), Int(1)), Int(1), {}, Provenance::kIngested), 3) == 3);

  // Not in the span of 2G: G itself.
  GeneratorSet bad = make_generator_set(c, Int(5), {dbl(c, g)}, Provenance::kIngested);
  CHECK(code_of([&] { decompose(g, bad); }) == ErrorCode::kNotInSpan);
}

TEST_CASE("coset_key is invariant under adding m Q") {
  GeneratorSet gs = rank_two();
  const Curve& c = gs.curve;
  std::mt19937_64 rng(62);
  std::uniform_int_distribution<int> d(-3, 3);
  for (int m : {3, 4}) {
    for (int i = 0; i < 25; ++i) {
      int a1 = d(rng), a2 = d(rng), b1 = d(rng), b2 = d(rng);
      Point p = add(c, mul(c, a1, gs.gens[0]), mul(c, a2, gs.gens[1]));
      Point q = add(c, mul(c, b1, gs.gens[0]), mul(c, b2, gs.gens[1]));
      if (p.inf) continue;
      Point shifted = add(c, p, mul(c, m, q));
      if (shifted.inf) continue;
      CHECK(coset_key(shifted, gs, m) == coset_key(p, gs, m));
      CosetKey k = coset_key(p, gs, m);
      CHECK(k.residues[0] == ((a1 % m) + m) % m);
      CHECK(k.residues[1] == ((a2 % m) + m) % m);
    }
  }
}

TEST_CASE("gap audit in the Small regime") {
  TwistDescriptor tw = normalize_twist(make_curve(Int(-1), Int(0)), Int(5));
  GeneratorSet gs = congruent5();
  const Curve& c = tw.twisted;
  std::vector<Point> pts;
  // +-G plus each torsion point: eight points of equal height below 1.5 log 5,
  // each alone in its class mod 4E, so no pair is formed.
  for (const Point& t : gs.torsion.points)
    for (const Point& g : {pt(-4, 6), pt(-4, -6)}) pts.push_back(add(c, g, t));
  pts.push_back(mul(c, 5, pt(-4, 6)));  // outside the regime
  GapAudit ga = gap_audit(pts, gs, tw, HeightClass::kSmall);
  CHECK(ga.points_in_regime == 8);
  CHECK(ga.records.empty());
  CHECK(ga.skipped.empty());
}

TEST_CASE("gap audit pair structure") {
  // kG + T for k = 2..4: y > 0 points in three separate bands.
  TwistDescriptor t5 = normalize_twist(make_curve(Int(-1), Int(0)), Int(5));
  GeneratorSet g5 = congruent5();
  const Curve& c = t5.twisted;
  std::vector<Point> pts;
  for (int k = 2; k <= 4; ++k)
    for (const Point& t : g5.torsion.points) pts.push_back(add(c, mul(c, k, g5.gens[0]), t));
  GapAudit ga = gap_audit(pts, g5, t5, HeightClass::kMediumSmall);
  CHECK(ga.points_in_regime == 12);
  CHECK_FALSE(ga.records.empty());
  double logd = std::log(5.0);
  for (const AngleRecord& r : ga.records) {
    CHECK(r.P != r.Q);
    CHECK(r.P.y > 0);
    CHECK(r.Q.y > 0);
    double hp = canonical_height_local(c, r.P).value, hq = canonical_height_local(c, r.Q).value;
    CHECK(std::fabs(std::round(hp / logd) - std::round(hq / logd)) == 0);
    CHECK(r.pass == (r.cos_val <= r.bound_used));
    CHECK(std::fabs(r.cos_val) <= 1 + 1e-9);
  }
  Json j = angle_record_to_json(t5, ga.records[0]);
  CHECK(j.contains("cos"));
  CHECK(j["D"] == "5");
}
