#include <doctest.h>

#include <algorithm>
#include <random>

#include "qtwist/errors.hpp"
#include "qtwist/poly.hpp"

using namespace qtwist;

namespace {

// Laplace expansion along the first row.
Int laplace_det(const std::vector<std::vector<Int>>& m) {
  std::size_t n = m.size();
  if (n == 1) return m[0][0];
  Int total = 0;
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<std::vector<Int>> minor;
    for (std::size_t i = 1; i < n; ++i) {
      std::vector<Int> row;
      for (std::size_t k = 0; k < n; ++k)
        if (k != j) row.push_back(m[i][k]);
      minor.push_back(row);
    }
    Int t = m[0][j] * laplace_det(minor);
    total += (j % 2 == 0) ? t : Int(-t);
  }
  return total;
}

// lead * prod (x - r_i)
RealPoly from_roots(long lead, const std::vector<long>& roots) {
  RealPoly f = make_poly_int({lead});
  for (long r : roots) f = mul(f, make_poly_int({1, -r}));
  return f;
}

}  // namespace

TEST_CASE("make_poly and evaluation") {
  RealPoly f = make_poly_int({0, 0, 1, -2});
  CHECK(f.degree() == 1);
  CHECK(eval(f, Rat(2)) == 0);
  CHECK(derivative(make_poly_int({1, 0, -2})).coeffs == make_poly_int({2, 0}).coeffs);
  bool threw = false;
  try {
    make_poly_int({0, 0});
  } catch (const Error& e) {
    threw = e.code() == ErrorCode::kDomainError;
  }
  CHECK(threw);
}

TEST_CASE("exact division") {
  RealPoly g = make_poly_int({1, -3});
  RealPoly h = make_poly_int({2, 0, 5});
  CHECK(exact_div(mul(g, h), g).coeffs == h.coeffs);
  bool threw = false;
  try {
    exact_div(make_poly_int({1, 0, 1}), g);
  } catch (const Error& e) {
    threw = e.code() == ErrorCode::kDomainError;
  }
  CHECK(threw);
}

TEST_CASE("primitive part") {
  PrimitivePart pp = primitive_part(make_poly({Rat(-1, 2), Rat(0), Rat(3, 4)}));
  CHECK(pp.coeffs == std::vector<Int>{2, 0, -3});
  CHECK(pp.content == Rat(-1, 4));
}

TEST_CASE("discriminant examples") {
  CHECK(poly_discriminant(make_poly_int({1, 0, -2})) == 8);
  CHECK(poly_discriminant(make_poly_int({1, 0, -1, 0})) == 4);  // -4a^3 - 27b^2
  CHECK(poly_discriminant(make_poly_int({1, 0, 0, 1})) == -27);
  CHECK(poly_discriminant(make_poly_int({1, -2, 1})) == 0);
  CHECK(poly_length(make_poly_int({1, 0, -2})) == 3);
}

TEST_CASE("discriminant against the root-difference product") {
  std::mt19937_64 rng(31);
  std::uniform_int_distribution<long> rd(-9, 9), ld(1, 5), deg(1, 6);
  for (int trial = 0; trial < 300; ++trial) {
    long lead = ld(rng) * (rng() % 2 ? 1 : -1);
    std::vector<long> roots(deg(rng));
    for (long& r : roots) r = rd(rng);
    Int want = 1;
    int m = static_cast<int>(roots.size());
    for (int i = 0; i < 2 * m - 2; ++i) want *= lead;
    for (int i = 0; i < m; ++i)
      for (int j = i + 1; j < m; ++j) want *= Int(roots[i] - roots[j]) * (roots[i] - roots[j]);
    CHECK(poly_discriminant(from_roots(lead, roots)) == want);
  }
}

TEST_CASE("cubic discriminant matches -4a^3 - 27b^2") {
  for (long a = -10; a <= 10; ++a)
    for (long b = -10; b <= 10; ++b)
      CHECK(poly_discriminant(make_poly_int({1, 0, a, b})) == -4 * a * a * a - 27 * b * b);
}

TEST_CASE("Bareiss against Laplace") {
  std::mt19937_64 rng(32);
  std::uniform_int_distribution<long> d(-20, 20);
  for (int trial = 0; trial < 200; ++trial) {
    std::size_t n = 1 + trial % 6;
    std::vector<std::vector<Int>> m(n, std::vector<Int>(n));
    for (auto& row : m)
      for (Int& v : row) v = d(rng);
    if (trial % 7 == 0 && n > 1) m[n - 1] = m[0];  // singular
    CHECK(bareiss_det(m) == laplace_det(m));
  }
}

TEST_CASE("roots") {
  std::vector<Cx> r = poly_roots(make_poly_int({1, 0, -2}));
  REQUIRE(r.size() == 2);
  CHECK(static_cast<double>(r[0].real()) == doctest::Approx(-1.4142135623730951));
  CHECK(static_cast<double>(r[1].real()) == doctest::Approx(1.4142135623730951));
  CHECK(boost::multiprecision::abs(r[0].imag()) < Real("1e-40"));

  std::vector<Cx> c = poly_roots(make_poly_int({1, 0, 0, 0, 1}));
  REQUIRE(c.size() == 4);
  for (const Cx& z : c) CHECK(boost::multiprecision::abs(boost::multiprecision::abs(z) - 1) < Real("1e-40"));
}

TEST_CASE("roots of products of known linear factors") {
  std::mt19937_64 rng(33);
  std::uniform_int_distribution<long> rd(-40, 40);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<long> roots;
    while (roots.size() < static_cast<std::size_t>(2 + trial % 6)) {
      long v = rd(rng);
      if (std::find(roots.begin(), roots.end(), v) == roots.end()) roots.push_back(v);
    }
    std::sort(roots.begin(), roots.end());
    RealPoly f = from_roots(3, roots);
    std::vector<Cx> got = poly_roots(f);
    REQUIRE(got.size() == roots.size());
    for (std::size_t i = 0; i < roots.size(); ++i) {
      CHECK(boost::multiprecision::abs(got[i].real() - roots[i]) < Real("1e-30"));
      CHECK(boost::multiprecision::abs(got[i].imag()) < Real("1e-30"));
    }
    CHECK(root_residual(f, got) < Real("1e-30"));
  }
}
