#include "qtwist/curve.hpp"

#include <algorithm>

#include "qtwist/errors.hpp"

namespace qtwist {

namespace {

Int ceil_sqrt(const Int& n) {
  if (n <= 0) return 0;
  Int r = isqrt(n);
  return r * r == n ? r : r + 1;
}

Int ceil_cbrt(const Int& n) {
  if (n <= 0) return 0;
  Int r = icbrt_floor(n);
  return r * r * r == n ? r : r + 1;
}

Int eval_cubic(const Int& A, const Int& C, const Int& x) { return x * x * x + A * x + C; }

// Integer zeros of x^3 + A x + C on [lo, hi] where the cubic is monotone.
void zeros_on_monotone(const Int& A, const Int& C, Int lo, Int hi, bool increasing,
                       std::vector<Int>& out) {
  while (lo <= hi) {
    Int mid;
    mpz_fdiv_q_2exp(mid.get_mpz_t(), Int(lo + hi).get_mpz_t(), 1);
    Int v = eval_cubic(A, C, mid);
    if (v == 0) {
      out.push_back(mid);
      return;
    }
    if ((v < 0) == increasing)
      lo = mid + 1;
    else
      hi = mid - 1;
  }
}

std::vector<Int> integer_roots_depressed_cubic(const Int& A, const Int& C) {
  Int bound = 1 + std::max(abs(A), abs(C));
  std::vector<Int> roots;
  if (A >= 0) {
    zeros_on_monotone(A, C, -bound, bound, true, roots);
  } else {
    Int q = (-A) / 3;
    Int s = isqrt(q);
    zeros_on_monotone(A, C, -bound, -(s + 1), true, roots);
    zeros_on_monotone(A, C, -s, s, false, roots);
    zeros_on_monotone(A, C, s + 1, bound, true, roots);
  }
  std::sort(roots.begin(), roots.end());
  roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
  return roots;
}

}  // namespace

Curve make_curve(const Int& A, const Int& B) {
  Curve c;
  c.A = A;
  c.B = B;
  c.disc = -16 * (4 * A * A * A + 27 * B * B);
  if (c.disc == 0)
    throw Error(ErrorCode::kSingularCurve, "A=" + A.get_str() + " B=" + B.get_str());
  Int four_a = 4 * A;
  c.j_inv = Rat(-1728 * four_a * four_a * four_a, c.disc);
  c.j_inv.canonicalize();
  Int m1 = ceil_sqrt(100 * abs(A));
  Int m2 = ceil_cbrt(125 * abs(B));
  c.m_const = std::max(Int(1), std::max(m1, m2));
  return c;
}

std::string point_to_string(const Point& p) {
  if (p.inf) return "inf";
  return "(" + rat_to_string(p.x) + "," + rat_to_string(p.y) + ")";
}

bool on_curve(const Curve& c, const Point& p) {
  if (p.inf) return true;
  return p.y * p.y == p.x * p.x * p.x + c.A * p.x + c.B;
}

void require_on_curve(const Curve& c, const Point& p) {
  if (!on_curve(c, p))
    throw Error(ErrorCode::kOffCurvePoint, point_to_string(p) + " on y^2=x^3+" + c.A.get_str() +
                                               "x+" + c.B.get_str());
}

Point neg(const Point& p) {
  if (p.inf) return p;
  return Point::affine(p.x, -p.y);
}

Point dbl(const Curve& c, const Point& p) {
  if (p.inf || p.y == 0) return Point::infinity();
  Rat lam = (3 * p.x * p.x + c.A) / (2 * p.y);
  Rat x3 = lam * lam - 2 * p.x;
  return Point::affine(x3, lam * (p.x - x3) - p.y);
}

Point add(const Curve& c, const Point& p, const Point& q) {
  if (p.inf) return q;
  if (q.inf) return p;
  if (p.x == q.x) {
    if (p.y == q.y) return dbl(c, p);
    return Point::infinity();
  }
  Rat lam = (q.y - p.y) / (q.x - p.x);
  Rat x3 = lam * lam - p.x - q.x;
  return Point::affine(x3, lam * (p.x - x3) - p.y);
}

Point sub(const Curve& c, const Point& p, const Point& q) { return add(c, p, neg(q)); }

Point mul(const Curve& c, const Int& n, const Point& p) {
  if (n < 0) return neg(mul(c, Int(-n), p));
  Point acc = Point::infinity();
  Point base = p;
  Int k = n;
  while (k > 0) {
    if (mpz_odd_p(k.get_mpz_t())) acc = add(c, acc, base);
    k >>= 1;
    if (k > 0) base = dbl(c, base);
  }
  return acc;
}

int torsion_order(const Curve& c, const Point& p) {
  Point q = p;
  for (int n = 1; n <= 12; ++n) {
    if (q.inf) return n;
    // Lutz-Nagell: torsion points are integral on an integral model.
    if (!q.is_integral()) return 0;
    q = add(c, q, p);
  }
  return 0;
}

Curve twist_curve(const Curve& base, const Int& D) {
  return make_curve(D * D * base.A, D * D * D * base.B);
}

TwistDescriptor normalize_twist(const Curve& base, const Int& D) {
  if (D == 0) throw Error(ErrorCode::kZeroTwist, "D = 0");
  if (!is_squarefree(D)) throw Error(ErrorCode::kNotSquarefree, "D = " + D.get_str());
  TwistDescriptor tw;
  if (D > 0) {
    tw.base = base;
    tw.D = D;
  } else {
    tw.base = make_curve(base.A, -base.B);
    tw.D = -D;
    tw.negated = true;
  }
  tw.twisted = twist_curve(tw.base, tw.D);
  return tw;
}

TwistModel twist_model(const TwistDescriptor& tw) { return TwistModel{tw.base.A, tw.base.B, tw.D}; }

bool on_model(const TwistModel& m, const Point& p) {
  if (p.inf) return true;
  return m.D * p.y * p.y == p.x * p.x * p.x + m.A * p.x + m.B;
}

Point add_model(const TwistModel& m, const Point& p, const Point& q) {
  if (p.inf) return q;
  if (q.inf) return p;
  Rat lam;
  if (p.x == q.x) {
    if (p.y != q.y || p.y == 0) return Point::infinity();
    lam = (3 * p.x * p.x + m.A) / (2 * m.D * p.y);
  } else {
    lam = (q.y - p.y) / (q.x - p.x);
  }
  Rat x3 = m.D * lam * lam - p.x - q.x;
  return Point::affine(x3, lam * (p.x - x3) - p.y);
}

Point phi_D(const TwistDescriptor& tw, const Point& p) {
  if (p.inf) return p;
  Rat d(tw.D);
  return Point::affine(p.x / d, p.y / (d * d));
}

Point phi_D_inverse(const TwistDescriptor& tw, const Point& p) {
  if (p.inf) return p;
  Rat d(tw.D);
  return Point::affine(p.x * d, p.y * d * d);
}

Rat psi3(const Int& A, const Int& B, const Int& D, const Rat& x) {
  Int D2 = D * D, D3 = D2 * D, D4 = D2 * D2;
  Rat x2 = x * x;
  return 3 * x2 * x2 + Rat(6 * D2 * A) * x2 + Rat(12 * D3 * B) * x - Rat(D4 * A * A);
}

Rat phi3(const Int& A, const Int& B, const Int& D, const Rat& x) {
  Int D2 = D * D, D3 = D2 * D, D4 = D2 * D2, D5 = D4 * D, D6 = D3 * D3;
  Int D7 = D6 * D, D8 = D4 * D4, D9 = D8 * D;
  Int A2 = A * A, A3 = A2 * A, A4 = A2 * A2, B2 = B * B, B3 = B2 * B;
  // Horner over the coefficients of x^9 .. x^0.
  const Int coeffs[10] = {
      Int(1),
      Int(0),
      -12 * D2 * A,
      -96 * D3 * B,
      30 * D4 * A2,
      -24 * D5 * A * B,
      D6 * (36 * A3 + 48 * B2),
      48 * D7 * A2 * B,
      D8 * (9 * A4 + 96 * A * B2),
      D9 * (8 * A3 * B + 64 * B3),
  };
  Rat acc(0);
  for (const Int& c : coeffs) acc = acc * x + Rat(c);
  return acc;
}

Rat psi4_over_y(const Int& A, const Int& B, const Int& D, const Rat& x) {
  Int a = D * D * A, b = D * D * D * B;
  Rat x2 = x * x, x3 = x2 * x;
  return 4 * (x3 * x3 + Rat(5 * a) * x2 * x2 + Rat(20 * b) * x3 - Rat(5 * a * a) * x2 -
              Rat(4 * a * b) * x - Rat(8 * b * b + a * a * a));
}

Rat x_triple(const Curve& c, const Point& p) {
  if (p.inf) throw Error(ErrorCode::kTriplePointAtInfinity, "P = O");
  Rat s = psi3(c.A, c.B, Int(1), p.x);
  if (s == 0) throw Error(ErrorCode::kTriplePointAtInfinity, point_to_string(p));
  return phi3(c.A, c.B, Int(1), p.x) / (s * s);
}

Rat psi_at(const Curve& c, const Point& p, int m) {
  if (m < 1 || p.inf) throw Error(ErrorCode::kDomainError, "psi_at needs m >= 1 and affine P");
  if (m == 1) return Rat(1);
  Rat prev(1);          // psi_{k-1}
  Rat cur = 2 * p.y;    // psi_k
  Point kp = dbl(c, p); // kP
  // psi_{k+1} psi_{k-1} = psi_k^2 (x(P) - x(kP))
  for (int k = 2; k < m; ++k) {
    if (kp.inf || prev == 0)
      throw Error(ErrorCode::kDomainError, "psi_at: multiple of P hit O");
    Rat next = cur * cur * (p.x - kp.x) / prev;
    prev = cur;
    cur = next;
    kp = add(c, kp, p);
  }
  return cur;
}

bool point_less(const Point& a, const Point& b) {
  if (a.inf != b.inf) return a.inf;
  if (a.inf) return false;
  if (a.x != b.x) return a.x < b.x;
  return a.y < b.y;
}

std::string TorsionInfo::tag_name() const {
  switch (tag) {
    case TorsionTag::kTrivial: return "trivial";
    case TorsionTag::kZ2: return "Z2";
    case TorsionTag::kZ2xZ2: return "Z2xZ2";
    case TorsionTag::kOther: return "other(" + std::to_string(order) + ")";
  }
  return "?";
}

bool TorsionInfo::contains(const Point& p) const {
  return std::find(points.begin(), points.end(), p) != points.end();
}

TorsionInfo torsion_subgroup(const Curve& c) {
  std::vector<Point> cand;
  for (const Int& x : integer_roots_depressed_cubic(c.A, c.B))
    cand.push_back(Point::affine(Rat(x), Rat(0)));
  Int d = 4 * c.A * c.A * c.A + 27 * c.B * c.B;
  // y^2 | d: build every y from the prime powers of d.
  std::vector<Int> ys{Int(1)};
  for (auto& [p, e] : factorize(d)) {
    std::vector<Int> next;
    for (const Int& y : ys) {
      Int pk = 1;
      for (int k = 0; 2 * k <= e; ++k) {
        next.push_back(y * pk);
        pk *= p;
      }
    }
    ys.swap(next);
  }
  for (const Int& y : ys)
    for (const Int& x : integer_roots_depressed_cubic(c.A, c.B - y * y)) {
      cand.push_back(Point::affine(Rat(x), Rat(y)));
      cand.push_back(Point::affine(Rat(x), Rat(-y)));
    }
  TorsionInfo info;
  info.points.push_back(Point::infinity());
  int two_torsion = 0;
  for (const Point& p : cand) {
    if (torsion_order(c, p) == 0 || info.contains(p)) continue;
    info.points.push_back(p);
    if (p.y == 0) ++two_torsion;
  }
  std::sort(info.points.begin(), info.points.end(), point_less);
  info.order = static_cast<int>(info.points.size());
  if (info.order == 1)
    info.tag = TorsionTag::kTrivial;
  else if (info.order == 2)
    info.tag = TorsionTag::kZ2;
  else if (info.order == 4 && two_torsion == 3)
    info.tag = TorsionTag::kZ2xZ2;
  else
    info.tag = TorsionTag::kOther;
  return info;
}

}  // namespace qtwist
