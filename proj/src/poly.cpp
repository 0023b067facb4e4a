#include "qtwist/poly.hpp"

#include <algorithm>

#include "qtwist/errors.hpp"

namespace qtwist {

namespace bmp = boost::multiprecision;

RealPoly make_poly(std::vector<Rat> coeffs) {
  auto it = std::find_if(coeffs.begin(), coeffs.end(), [](const Rat& c) { return c != 0; });
  if (it == coeffs.end()) throw Error(ErrorCode::kDomainError, "zero polynomial");
  coeffs.erase(coeffs.begin(), it);
  return RealPoly{std::move(coeffs)};
}

RealPoly make_poly_int(const std::vector<long>& coeffs) {
  std::vector<Rat> c;
  for (long v : coeffs) c.emplace_back(v);
  return make_poly(std::move(c));
}

Rat eval(const RealPoly& f, const Rat& x) {
  Rat acc(0);
  for (const Rat& c : f.coeffs) acc = acc * x + c;
  return acc;
}

Cx eval(const RealPoly& f, const Cx& x) {
  Cx acc(0);
  for (const Rat& c : f.coeffs) acc = acc * x + Cx(to_real(c));
  return acc;
}

RealPoly derivative(const RealPoly& f) {
  int m = f.degree();
  if (m == 0) return RealPoly{{Rat(0)}};
  std::vector<Rat> d;
  for (int i = 0; i < m; ++i) d.push_back(f.coeffs[i] * (m - i));
  return RealPoly{d};
}

RealPoly mul(const RealPoly& f, const RealPoly& g) {
  std::vector<Rat> r(f.coeffs.size() + g.coeffs.size() - 1, Rat(0));
  for (std::size_t i = 0; i < f.coeffs.size(); ++i)
    for (std::size_t j = 0; j < g.coeffs.size(); ++j) r[i + j] += f.coeffs[i] * g.coeffs[j];
  return make_poly(r);
}

RealPoly exact_div(const RealPoly& f, const RealPoly& g) {
  int m = f.degree(), n = g.degree();
  if (n > m) throw Error(ErrorCode::kDomainError, "divisor degree too large");
  std::vector<Rat> rem = f.coeffs;
  std::vector<Rat> q(m - n + 1, Rat(0));
  for (int i = 0; i <= m - n; ++i) {
    q[i] = rem[i] / g.lead();
    for (int j = 0; j <= n; ++j) rem[i + j] -= q[i] * g.coeffs[j];
  }
  for (int i = m - n + 1; i <= m; ++i)
    if (rem[i] != 0) throw Error(ErrorCode::kDomainError, "inexact polynomial division");
  return make_poly(q);
}

PrimitivePart primitive_part(const RealPoly& f) {
  Int lcm_den = 1;
  for (const Rat& c : f.coeffs) mpz_lcm(lcm_den.get_mpz_t(), lcm_den.get_mpz_t(), c.get_den_mpz_t());
  std::vector<Int> ic;
  Int g = 0;
  for (const Rat& c : f.coeffs) {
    Int v = c.get_num() * (lcm_den / c.get_den());
    ic.push_back(v);
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
  }
  if (ic.front() < 0) g = -g;
  for (Int& v : ic) v /= g;
  Rat content(g, lcm_den);
  content.canonicalize();
  return {ic, content};
}

Int bareiss_det(std::vector<std::vector<Int>> m) {
  std::size_t n = m.size();
  if (n == 0) return 1;
  Int sign = 1, prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k] == 0) {
      std::size_t piv = k + 1;
      while (piv < n && m[piv][k] == 0) ++piv;
      if (piv == n) return 0;
      std::swap(m[k], m[piv]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        Int t = m[i][j] * m[k][k] - m[i][k] * m[k][j];
        mpz_divexact(m[i][j].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
      }
      m[i][k] = 0;
    }
    prev = m[k][k];
  }
  return sign * m[n - 1][n - 1];
}

namespace {

Int discriminant_int(const std::vector<Int>& f) {
  int m = static_cast<int>(f.size()) - 1;
  std::vector<Int> d;
  for (int i = 0; i < m; ++i) d.push_back(f[i] * (m - i));
  // Sylvester matrix of f (degree m) and f' (degree m-1): size 2m-1.
  int n = 2 * m - 1;
  std::vector<std::vector<Int>> s(n, std::vector<Int>(n, Int(0)));
  for (int r = 0; r < m - 1; ++r)
    for (int j = 0; j <= m; ++j) s[r][r + j] = f[j];
  for (int r = 0; r < m; ++r)
    for (int j = 0; j < m; ++j) s[m - 1 + r][r + j] = d[j];
  Int res = bareiss_det(std::move(s));
  Int disc = res / f[0];
  if ((m * (m - 1) / 2) % 2 == 1) disc = -disc;
  return disc;
}

}  // namespace

Rat poly_discriminant(const RealPoly& f) {
  int m = f.degree();
  if (m < 1) throw Error(ErrorCode::kDomainError, "discriminant needs degree >= 1");
  if (m == 1) return Rat(1);
  PrimitivePart pp = primitive_part(f);
  Rat scale(1);
  for (int i = 0; i < 2 * m - 2; ++i) scale *= pp.content;
  return Rat(discriminant_int(pp.coeffs)) * scale;
}

Rat poly_length(const RealPoly& f) {
  Rat s(0);
  for (const Rat& c : f.coeffs) s += abs(c);
  return s;
}

Real root_residual(const RealPoly& f, const std::vector<Cx>& roots) {
  RealPoly d = derivative(f);
  Real worst = 0;
  for (const Cx& r : roots) {
    Real num = bmp::abs(eval(f, r));
    Real den = bmp::abs(eval(d, r));
    Real v = den == 0 ? Real(1e300) : num / den;
    worst = bmp::max(worst, v);
  }
  return worst;
}

std::vector<Cx> poly_roots(const RealPoly& f, const RootOptions& opt) {
  int m = f.degree();
  if (m < 1) throw Error(ErrorCode::kDomainError, "roots of a constant");
  std::vector<Cx> c;
  for (const Rat& v : f.coeffs) c.push_back(Cx(to_real(v)));
  // Monic form keeps Horner values on a common scale.
  Cx lead = c[0];
  for (Cx& v : c) v /= lead;
  RealPoly df = derivative(f);
  std::vector<Cx> dc;
  for (int i = 0; i < m; ++i) dc.push_back(c[i] * Real(m - i));

  // Fujiwara bound for the starting circle.
  Real radius = 0;
  for (int i = 1; i <= m; ++i) {
    Real v = bmp::pow(bmp::abs(c[i]), Real(1) / i);
    if (i == m) v = bmp::pow(bmp::abs(c[i]) / 2, Real(1) / i);
    radius = bmp::max(radius, 2 * v);
  }
  if (radius == 0) radius = 1;
  std::vector<Cx> z(m);
  const Real& pi = real_pi();
  for (int k = 0; k < m; ++k) {
    Real ang = 2 * pi * k / m + Real("0.4");
    z[k] = Cx(radius * bmp::cos(ang), radius * bmp::sin(ang));
  }
  auto horner = [](const std::vector<Cx>& cc, const Cx& x) {
    Cx acc(0);
    for (const Cx& v : cc) acc = acc * x + v;
    return acc;
  };
  const Real tiny("1e-46");
  for (int it = 0; it < opt.max_iterations; ++it) {
    Real biggest = 0;
    for (int k = 0; k < m; ++k) {
      Cx pv = horner(c, z[k]);
      if (pv == Cx(0)) continue;
      Cx ratio = pv / horner(dc, z[k]);
      Cx sum(0);
      for (int j = 0; j < m; ++j)
        if (j != k) sum += Cx(1) / (z[k] - z[j]);
      Cx w = ratio / (Cx(1) - ratio * sum);
      z[k] -= w;
      biggest = bmp::max(biggest, bmp::abs(w) / bmp::max(Real(1), bmp::abs(z[k])));
    }
    if (biggest < tiny) break;
  }
  // Snap negligible imaginary parts so real roots compare as real.
  for (Cx& r : z) {
    if (bmp::abs(r.imag()) <= Real("1e-40") * bmp::max(Real(1), bmp::abs(r)))
      r = Cx(r.real());
  }
  std::sort(z.begin(), z.end(), [](const Cx& a, const Cx& b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
  });
  for (const Cx& r : z) {
    Real num = bmp::abs(eval(f, r));
    Real den = bmp::abs(eval(df, r));
    if (den == 0 || num / den > Real(opt.certify) * bmp::max(Real(1), bmp::abs(r)))
      throw Error(ErrorCode::kRootPrecisionFailure, "root not certified");
  }
  return z;
}

}  // namespace qtwist
