#include <doctest.h>

#include <algorithm>
#include <random>

#include "oracles.hpp"
#include "qtwist/errors.hpp"
#include "qtwist/heights.hpp"
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

bool has(const std::vector<Point>& v, const Point& p) {
  return std::find(v.begin(), v.end(), p) != v.end();
}

}  // namespace

TEST_CASE("enumeration examples") {
  TwistDescriptor tw = normalize_twist(make_curve(Int(-1), Int(0)), Int(5));
  EnumerationResult r = enumerate_integral(tw, {Int(-50), Int(10000)});
  for (Point p : {pt(-5, 0), pt(-4, 6), pt(-4, -6), pt(0, 0), pt(5, 0), pt(45, 300), pt(45, -300)})
    CHECK(has(r.points, p));
  CHECK(r.complete_below);
  CHECK(r.points == oracle::brute_integral_points(Int(-25), Int(0), -50, 10000));

  TwistDescriptor one = normalize_twist(make_curve(Int(0), Int(1)), Int(1));
  EnumerationResult s = enumerate_integral(one, {Int(-10), Int(10)});
  for (Point p : {pt(-1, 0), pt(0, 1), pt(0, -1), pt(2, 3), pt(2, -3)}) CHECK(has(s.points, p));

  CHECK(code_of([&] { enumerate_integral(one, {Int(5), Int(4)}); }) == ErrorCode::kDomainError);
}

TEST_CASE("default window starts at -M D") {
  TwistDescriptor tw = normalize_twist(make_curve(Int(-1), Int(0)), Int(7));
  SearchWindow w = default_window(tw, Int(1000));
  CHECK(w.x_min == -70);
  CHECK(w.x_max == 1000);
}

TEST_CASE("budget cap") {
  TwistDescriptor tw = normalize_twist(make_curve(Int(-1), Int(0)), Int(5));
  EnumerationConfig cfg;
  cfg.max_window = 100;
  CHECK(code_of([&] { enumerate_integral(tw, {Int(-50), Int(1000)}, cfg); }) ==
        ErrorCode::kBudgetExceeded);
}

TEST_CASE("enumeration equals the brute-force oracle on random twists") {
  std::mt19937_64 rng(51);
  std::uniform_int_distribution<long> ab(-30, 30), dd(1, 30);
  int done = 0;
  while (done < 60) {
    long A = ab(rng), B = ab(rng), D = dd(rng);
    if (4 * A * A * A + 27 * B * B == 0 || !is_squarefree(Int(D))) continue;
    TwistDescriptor tw = normalize_twist(make_curve(Int(A), Int(B)), Int(D));
    SearchWindow w = default_window(tw, Int(20000));
    EnumerationResult r = enumerate_integral(tw, w);
    long lo = w.x_min.get_si();
    CHECK(r.points == oracle::brute_integral_points(tw.twisted.A, tw.twisted.B, lo, 20000));
    // Nothing lies below -M D.
    CHECK(oracle::brute_integral_points(tw.twisted.A, tw.twisted.B, lo - 2000, lo - 1).empty());
    for (const Point& p : r.points) {
      CHECK(on_curve(tw.twisted, p));
      CHECK(has(r.points, neg(p)));
    }
    CHECK(std::is_sorted(r.points.begin(), r.points.end(), point_less));
    ++done;
  }
}

TEST_CASE("chunk size does not change the result") {
  TwistDescriptor tw = normalize_twist(make_curve(Int(0), Int(17)), Int(1));
  EnumerationConfig small;
  small.chunk = 37;
  EnumerationResult a = enumerate_integral(tw, {Int(-100), Int(10000)});
  EnumerationResult b = enumerate_integral(tw, {Int(-100), Int(10000)}, small);
  CHECK(a.points == b.points);
  CHECK(has(a.points, pt(5234, 378661)));
  CHECK(a.points.size() == 16);
}

TEST_CASE("ingest generators") {
  GeneratorSet gs = ingest_generators_text(
      R"({"A":"-1","B":"0","D":"5","rank":1,"gens":[["-4","6"]]})");
  CHECK(gs.rank == 1);
  CHECK(gs.provenance == Provenance::kIngested);
  CHECK(gs.gram(0, 0) == doctest::Approx(1.8994821725317956).epsilon(1e-9));
  CHECK(gs.torsion.order == 4);

  GeneratorSet empty = ingest_generators_text(R"({"A":"0","B":"2","gens":[]})");
  CHECK(empty.rank == 0);

  Point twice = dbl(make_curve(Int(-25), Int(0)), pt(-4, 6));
  std::string dep = R"({"A":"-1","B":"0","D":"5","gens":[["-4","6"],[")" + rat_to_string(twice.x) +
                    R"(",")" + rat_to_string(twice.y) + R"("]]})";
  CHECK(code_of([&] { ingest_generators_text(dep); }) == ErrorCode::kDependentGenerators);
  CHECK(code_of([] { ingest_generators_text(R"({"A":"-1","B":"0","D":"5","gens":[["1","1"]]})"); }) ==
        ErrorCode::kOffCurvePoint);
  CHECK(code_of([] { ingest_generators_text("{not json"); }) == ErrorCode::kIoError);
  CHECK(code_of([] { ingest_generators_file("/nonexistent/D5.json"); }) == ErrorCode::kIoError);
}

TEST_CASE("shipped congruent generator files load") {
  for (int D : {5, 6, 7}) {
    GeneratorSet gs =
        ingest_generators_file(std::string(QTWIST_DATA_DIR) + "/congruent/D" + std::to_string(D) + ".json");
    CHECK(gs.rank == 1);
    CHECK(gs.D == D);
  }
}

TEST_CASE("gram matrix entries are height pairings") {
  Curve c = make_curve(Int(0), Int(17));
  std::vector<Point> gens = {pt(-2, 3), pt(-1, 4)};
  GeneratorSet gs = make_generator_set(c, Int(1), gens, Provenance::kIngested);
  CHECK(gs.rank == 2);
  const double tol = 1e-10;
  for (int i = 0; i < 2; ++i) {
    CHECK(gs.gram(i, i) == doctest::Approx(canonical_height_local(c, gens[i]).value).epsilon(1e-9));
    for (int j = 0; j < 2; ++j) {
      double hij = canonical_height_local(c, add(c, gens[i], gens[j])).value;
      double want = i == j ? hij / 4 : (hij - gs.gram(i, i) - gs.gram(j, j)) / 2;
      CHECK(std::fabs(gs.gram(i, j) - want) < 1e-8);
      CHECK(gs.gram(i, j) == gs.gram(j, i));
    }
  }
  CHECK(gs.gram.determinant() > 0);
  CHECK(normalized_gram_det(gs.gram) > 1e-6);
  (void)tol;

  CHECK(code_of([&] {
          make_generator_set(c, Int(1), {pt(-2, 3), pt(-1, 4), add(c, pt(-2, 3), pt(-1, 4))},
                             Provenance::kIngested);
        }) == ErrorCode::kDependentGenerators);
  CHECK(code_of([&] {
          make_generator_set(make_curve(Int(0), Int(1)), Int(1), {pt(2, 3)}, Provenance::kIngested);
        }) == ErrorCode::kDependentGenerators);  // torsion generator
}

TEST_CASE("heuristic generator search") {
  // Heuristic sets carry no completeness claim; only the structural contract is checked.
  TwistDescriptor tw = normalize_twist(make_curve(Int(-1), Int(0)), Int(5));
  GeneratorSet gs = find_generators_heuristic(tw);
  CHECK(gs.provenance == Provenance::kHeuristic);
  CHECK(gs.rank >= 1);
  for (const Point& g : gs.gens) {
    CHECK(on_curve(tw.twisted, g));
    CHECK(torsion_order(tw.twisted, g) == 0);
  }
  CHECK(std::string(provenance_name(Provenance::kHeuristic)) == "heuristic");
}
