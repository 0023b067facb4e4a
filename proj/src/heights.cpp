#include "qtwist/heights.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "qtwist/errors.hpp"

namespace qtwist {

namespace bmp = boost::multiprecision;

Real weil_height_real(const Rat& q) {
  if (q == 0) return Real(0);
  Int n = abs(q.get_num());
  const Int& d = q.get_den();
  return log_abs(n > d ? n : d);
}

HeightValue weil_height(const Rat& q) {
  double v = static_cast<double>(weil_height_real(q));
  return {v, 1e-15 * (1 + v)};
}

HeightValue weil_height(const Point& p) {
  if (p.inf) return {0, 1e-300};
  return weil_height(p.x);
}

HeightDiffBounds height_diff_bounds(const Curve& c) {
  double hj = static_cast<double>(weil_height_real(c.j_inv));
  double hd = static_cast<double>(weil_height_real(Rat(c.disc)));
  return {-hj / 4 - 1.946 - hd / 6, hj / 6 + 2.14 + hd / 6};
}

// ---------------------------------------------------------------------------
// Doubling route.

namespace {

void mod_in_place(Int& v, const Int& n) { mpz_mod(v.get_mpz_t(), v.get_mpz_t(), n.get_mpz_t()); }

}  // namespace

HeightValue canonical_height_doubling(const Curve& c, const Point& p, double tol,
                                      const HeightConfig& cfg) {
  require_on_curve(c, p);
  if (!(tol > 0)) throw Error(ErrorCode::kDomainError, "tol must be positive");
  if (p.inf || torsion_order(c, p) > 0) return {0, std::numeric_limits<double>::epsilon()};
  // 50-digit arithmetic leaves about 1e-45 of rounding slack.
  if (tol < 1e-40) throw Error(ErrorCode::kPrecisionUnreachable, "tol below working precision");

  HeightDiffBounds hb = height_diff_bounds(c);
  double cmax = std::max(std::fabs(hb.c1), std::fabs(hb.c2));
  int n = 0;
  while (std::ldexp(cmax, -2 * n) >= tol) ++n;

  const Int& a = c.A;
  const Int& b = c.B;
  // Any common factor of F and G divides their resultant, a divisor of R.
  Int d = 4 * a * a * a + 27 * b * b;
  Int R = 4096 * d * d;
  long rbits = static_cast<long>(mpz_sizeinbase(R.get_mpz_t(), 2));
  if (rbits * (n + 1) > cfg.max_operand_bits)
    throw Error(ErrorCode::kPrecisionUnreachable,
                "needs " + std::to_string(n) + " doublings beyond the operand budget");
  Int N;
  mpz_pow_ui(N.get_mpz_t(), R.get_mpz_t(), static_cast<unsigned long>(n + 1));

  Int X = p.x.get_num(), Z = p.x.get_den();
  Real total = weil_height_real(p.x);
  Real xs = to_real(X), zs = to_real(Z);
  {
    Real s = bmp::max(bmp::abs(xs), bmp::abs(zs));
    xs /= s;
    zs /= s;
  }
  Real ra = to_real(a), rb = to_real(b);
  mod_in_place(X, N);
  mod_in_place(Z, N);
  Real scale = 1;
  for (int k = 0; k < n; ++k) {
    Int X2 = X * X, Z2 = Z * Z;
    mod_in_place(X2, N);
    mod_in_place(Z2, N);
    Int Fv = X2 * X2 - 2 * a * X2 * Z2 - 8 * b * X * Z2 * Z + a * a * Z2 * Z2;
    Int Gv = 4 * Z * (X2 * X + a * X * Z2 + b * Z2 * Z);
    mod_in_place(Fv, N);
    mod_in_place(Gv, N);
    Int g;
    mpz_gcd(g.get_mpz_t(), Fv.get_mpz_t(), Gv.get_mpz_t());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), N.get_mpz_t());
    mpz_divexact(N.get_mpz_t(), N.get_mpz_t(), g.get_mpz_t());
    mpz_divexact(X.get_mpz_t(), Fv.get_mpz_t(), g.get_mpz_t());
    mpz_divexact(Z.get_mpz_t(), Gv.get_mpz_t(), g.get_mpz_t());
    mod_in_place(X, N);
    mod_in_place(Z, N);

    Real x2 = xs * xs, z2 = zs * zs;
    Real fr = x2 * x2 - 2 * ra * x2 * z2 - 8 * rb * xs * z2 * zs + ra * ra * z2 * z2;
    Real gr = 4 * zs * (x2 * xs + ra * xs * z2 + rb * z2 * zs);
    Real m = bmp::max(bmp::abs(fr), bmp::abs(gr));
    scale /= 4;
    total += (bmp::log(m) - log_abs(g)) * scale;
    xs = fr / m;
    zs = gr / m;
  }
  double bound = std::ldexp(cmax, -2 * n);
  return {static_cast<double>(total), bound};
}

// ---------------------------------------------------------------------------
// Local route.

namespace {

Real agm(Real a, Real b) {
  const Real eps = Real("1e-48");
  for (int i = 0; i < 200; ++i) {
    Real an = (a + b) / 2;
    Real bn = bmp::sqrt(a * b);
    a = an;
    b = bn;
    if (bmp::abs(a - b) <= eps * bmp::abs(a)) break;
  }
  return (a + b) / 2;
}

// Carlson's symmetric R_F by duplication; arguments off the negative real axis.
Cx carlson_rf(Cx x, Cx y, Cx z) {
  const Real r("1e-48");
  const Cx x0 = x, y0 = y;
  Cx a0 = (x + y + z) / 3;
  Real q = bmp::max(bmp::abs(a0 - x), bmp::max(bmp::abs(a0 - y), bmp::abs(a0 - z))) /
           bmp::pow(r, Real(1) / 6);
  Cx a = a0;
  Real pow4 = 1;
  for (int i = 0; i < 400 && pow4 * q >= bmp::abs(a); ++i) {
    Cx sx = bmp::sqrt(x), sy = bmp::sqrt(y), sz = bmp::sqrt(z);
    Cx lam = sx * sy + sx * sz + sy * sz;
    x = (x + lam) / 4;
    y = (y + lam) / 4;
    z = (z + lam) / 4;
    a = (a + lam) / 4;
    pow4 /= 4;
  }
  Cx X = (a0 - x0) * pow4 / a;
  Cx Y = (a0 - y0) * pow4 / a;
  Cx Zc = -(X + Y);
  Cx e2 = X * Y - Zc * Zc;
  Cx e3 = X * Y * Zc;
  Cx s = Cx(1) - e2 / 10 + e3 / 14 + e2 * e2 / 24 - Real(3) * e2 * e3 / 44;
  return s / bmp::sqrt(a);
}

struct RealStructure {
  bool positive_disc = false;
  Real e1, e2, e3;  // real roots, e1 > e2 > e3 (positive discriminant)
  Cx ce2, ce3;      // complex pair (negative discriminant)
  Cx w1, w2;
};

Real newton_root(const Real& A, const Real& B, Real x) {
  for (int i = 0; i < 200; ++i) {
    Real f = (x * x + A) * x + B;
    Real fp = 3 * x * x + A;
    if (fp == 0) break;
    Real dx = f / fp;
    x -= dx;
    if (bmp::abs(dx) <= Real("1e-49") * (1 + bmp::abs(x))) break;
  }
  return x;
}

RealStructure real_structure(const Curve& c) {
  RealStructure rs;
  Real A = to_real(c.A), B = to_real(c.B);
  const Real& pi = real_pi();
  if (c.disc > 0) {
    rs.positive_disc = true;
    Real t = 2 * bmp::sqrt(-A / 3);
    Real arg = 3 * B / (A * t);
    if (arg > 1) arg = 1;
    if (arg < -1) arg = -1;
    Real th = bmp::acos(arg) / 3;
    Real r[3];
    for (int k = 0; k < 3; ++k) r[k] = newton_root(A, B, t * bmp::cos(th - 2 * pi * k / 3));
    std::sort(r, r + 3, [](const Real& u, const Real& v) { return u > v; });
    rs.e1 = r[0];
    rs.e2 = r[1];
    rs.e3 = r[2];
    rs.w1 = Cx(pi / agm(bmp::sqrt(rs.e1 - rs.e3), bmp::sqrt(rs.e1 - rs.e2)));
    rs.w2 = Cx(Real(0), pi / agm(bmp::sqrt(rs.e1 - rs.e3), bmp::sqrt(rs.e2 - rs.e3)));
  } else {
    Real h = B * B / 4 + A * A * A / 27;
    Real s = bmp::sqrt(h);
    Real u = bmp::cbrt(-B / 2 + s);
    Real v = bmp::cbrt(-B / 2 - s);
    rs.e1 = newton_root(A, B, u + v);
    Real im = bmp::sqrt(A + 3 * rs.e1 * rs.e1 / 4);
    rs.ce2 = Cx(-rs.e1 / 2, im);
    rs.ce3 = Cx(-rs.e1 / 2, -im);
    Real zz = bmp::sqrt(3 * rs.e1 * rs.e1 + A);
    Real aa = 2 * bmp::sqrt(zz);
    Real bb = bmp::sqrt(3 * rs.e1 + 2 * zz);
    Real bp = bmp::sqrt(-3 * rs.e1 + 2 * zz);
    Real w1 = 2 * pi / agm(aa, bb);
    rs.w1 = Cx(w1);
    rs.w2 = Cx(w1 / 2, pi / agm(aa, bp));
  }
  return rs;
}

// Archimedean local height, with the (1/12) log|disc| shift, for points on the
// identity component of E(R).
Real lambda_inf_identity(const Curve& c, const RealStructure& rs, const Real& x0) {
  Cx z;
  if (rs.positive_disc)
    z = carlson_rf(Cx(x0 - rs.e1), Cx(x0 - rs.e2), Cx(x0 - rs.e3));
  else
    z = carlson_rf(Cx(x0 - rs.e1), Cx(x0) - rs.ce2, Cx(x0) - rs.ce3);
  const Real& pi = real_pi();
  Cx two_pi_i(Real(0), 2 * pi);
  Cx tau = rs.w2 / rs.w1;
  Cx q = bmp::exp(two_pi_i * tau);
  Cx u = bmp::exp(two_pi_i * Cx(bmp::real(z)) / rs.w1);
  Cx ui = Cx(1) / u;
  Real absq = bmp::abs(q);
  Real lam = -bmp::log(absq) / 12 - bmp::log(bmp::abs(Cx(1) - u));
  Cx qn = q;
  const Real stop("1e-55");
  for (int n = 1; n < 2000000 && bmp::abs(qn) > stop; ++n) {
    lam -= bmp::log(bmp::abs((Cx(1) - qn * u) * (Cx(1) - qn * ui)));
    qn *= q;
  }
  return lam + log_abs(c.disc) / 12;
}

Real lambda_inf(const Curve& c, const RealStructure& rs, const Point& p) {
  Real x0 = to_real(p.x);
  if (rs.positive_disc && x0 < rs.e1) {
    // Egg component: 2P lies on the identity component.
    Point p2 = dbl(c, p);
    return (lambda_inf(c, rs, p2) + log_abs(Rat(2 * p.y))) / 4;
  }
  return lambda_inf_identity(c, rs, x0);
}

// True when P reduces to a nonsingular point modulo every prime.
bool everywhere_nonsingular(const Curve& c, const Point& p) {
  Int e2 = p.x.get_den();
  Int e = isqrt(e2);
  Int k = p.y.get_num();  // y = k / e^3 in lowest terms
  Int n = p.x.get_num();
  Int e4 = e2 * e2;
  Int g;
  Int t1 = 2 * k, t2 = 3 * n * n + c.A * e4;
  mpz_gcd(g.get_mpz_t(), t1.get_mpz_t(), t2.get_mpz_t());
  // Primes dividing e see P reduce to the identity, which is nonsingular.
  for (;;) {
    Int t;
    mpz_gcd(t.get_mpz_t(), g.get_mpz_t(), e.get_mpz_t());
    if (t == 1) break;
    g /= t;
  }
  return g == 1;
}

}  // namespace

LocalHeightParts local_height_parts(const Curve& c, const Point& p, const HeightConfig& cfg) {
  require_on_curve(c, p);
  if (p.inf || torsion_order(c, p) > 0)
    throw Error(ErrorCode::kTorsionArgument, "local height needs a non-torsion point");
  LocalHeightParts out;
  RealStructure rs = real_structure(c);
  out.archimedean = lambda_inf(c, rs, p);

  Point q = p;
  int m = 1;
  while (!everywhere_nonsingular(c, q)) {
    if (++m > cfg.max_multiplier)
      throw Error(ErrorCode::kBudgetExceeded, "no multiple with nonsingular reduction");
    q = add(c, q, p);
  }
  out.multiplier = m;
  Rat pm = psi_at(c, p, m);
  Real m2 = Real(m) * m;
  out.nonarchimedean = (log_abs(q.x.get_den()) / 2 - log_abs(pm)) / m2;
  return out;
}

HeightValue canonical_height_local(const Curve& c, const Point& p, const HeightConfig& cfg) {
  if (p.inf || torsion_order(c, p) > 0) return {0, std::numeric_limits<double>::epsilon()};
  LocalHeightParts parts = local_height_parts(c, p, cfg);
  Real v = 2 * (parts.archimedean + parts.nonarchimedean);
  double dv = static_cast<double>(v);
  return {dv, 1e-20 * (1 + std::fabs(dv))};
}

// ---------------------------------------------------------------------------

double height_pairing(const Curve& c, const Point& p, const Point& q, double tol) {
  double hpq = canonical_height_doubling(c, add(c, p, q), tol).value;
  double hp = canonical_height_doubling(c, p, tol).value;
  double hq = canonical_height_doubling(c, q, tol).value;
  return (hpq - hp - hq) / 2;
}

const char* height_class_name(HeightClass c) {
  switch (c) {
    case HeightClass::kSmall: return "Small";
    case HeightClass::kMediumSmall: return "MediumSmall";
    case HeightClass::kMediumLarge: return "MediumLarge";
    case HeightClass::kLarge: return "Large";
  }
  return "?";
}

Classification classify_value(double hhat, double precision, const Int& D) {
  if (D < 2) throw Error(ErrorCode::kDomainError, "classify needs D >= 2");
  double logd = static_cast<double>(log_abs(D));
  const double thresholds[3] = {1.5 * logd, 20 * logd, 2200 * logd};
  const HeightClass below[3] = {HeightClass::kSmall, HeightClass::kMediumSmall,
                                HeightClass::kMediumLarge};
  Classification out;
  out.hhat = hhat;
  for (int i = 0; i < 3; ++i) {
    // Rounding of the thresholds themselves counts as boundary slack.
    double slack = precision + 1e-12 * thresholds[i];
    if (hhat < thresholds[i] - slack) {
      out.tag = below[i];
      return out;
    }
    if (hhat <= thresholds[i] + slack) {
      out.tag = below[i];
      out.boundary = true;
      return out;
    }
  }
  out.tag = HeightClass::kLarge;
  return out;
}

Classification classify(const TwistDescriptor& tw, const Point& p, double tol) {
  HeightValue h = canonical_height_doubling(tw.twisted, p, tol);
  return classify_value(h.value, h.precision, tw.D);
}

SmallXReport small_x_check(const TwistDescriptor& tw, const Point& p, double tol) {
  require_on_curve(tw.twisted, p);
  SmallXReport r;
  r.md = tw.base.m_const * tw.D;
  if (p.inf) return r;
  r.x_le_md = p.x <= Rat(r.md);
  r.lower_bound_ok = p.x >= Rat(-r.md);
  r.hhat = canonical_height_doubling(tw.twisted, p, tol).value;
  r.bound = 1.5 * static_cast<double>(log_abs(tw.D));
  r.implication_held = !r.x_le_md || r.hhat < r.bound;
  return r;
}

}  // namespace qtwist
