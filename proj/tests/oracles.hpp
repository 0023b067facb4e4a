// Independent reference computations used only by the tests.
#ifndef QTWIST_TESTS_ORACLES_HPP_
#define QTWIST_TESTS_ORACLES_HPP_

#include <map>
#include <random>
#include <vector>

#include "qtwist/curve.hpp"

namespace oracle {

using qtwist::Curve;
using qtwist::Int;
using qtwist::Point;
using qtwist::Rat;

// Every integral x in [lo, hi] with x^3 + a x + b a square, one mpz_sqrtrem per x.
inline std::vector<Point> brute_integral_points(const Int& a, const Int& b, long lo, long hi) {
  std::vector<Point> out;
  for (long xi = lo; xi <= hi; ++xi) {
    Int x(xi);
    Int v = x * x * x + a * x + b;
    if (v < 0) continue;
    Int r, rem;
    mpz_sqrtrem(r.get_mpz_t(), rem.get_mpz_t(), v.get_mpz_t());
    if (rem != 0) continue;
    if (r == 0) {
      out.push_back(Point::affine(Rat(x), Rat(0)));
    } else {
      out.push_back(Point::affine(Rat(x), Rat(-r)));
      out.push_back(Point::affine(Rat(x), Rat(r)));
    }
  }
  return out;
}

// Division values psi_n(P) from the textbook duplication recurrences.
class PsiRecurrence {
 public:
  PsiRecurrence(const Curve& c, const Point& p) : a_(c.A), b_(c.B), x_(p.x), y_(p.y) {}

  Rat operator()(int n) {
    auto it = memo_.find(n);
    if (it != memo_.end()) return it->second;
    Rat v;
    const Rat& x = x_;
    if (n == 0) {
      v = 0;
    } else if (n == 1) {
      v = 1;
    } else if (n == 2) {
      v = 2 * y_;
    } else if (n == 3) {
      v = 3 * x * x * x * x + 6 * a_ * x * x + 12 * b_ * x - a_ * a_;
    } else if (n == 4) {
      Rat x2 = x * x, x3 = x2 * x;
      v = 4 * y_ *
          (x3 * x3 + 5 * a_ * x2 * x2 + 20 * b_ * x3 - 5 * a_ * a_ * x2 - 4 * a_ * b_ * x -
           8 * b_ * b_ - a_ * a_ * a_);
    } else if (n % 2 == 1) {
      int k = (n - 1) / 2;
      Rat pk = (*this)(k), pk1 = (*this)(k + 1);
      v = (*this)(k + 2) * pk * pk * pk - (*this)(k - 1) * pk1 * pk1 * pk1;
    } else {
      int k = n / 2;
      Rat pm1 = (*this)(k - 1), pp1 = (*this)(k + 1);
      v = (*this)(k) / (2 * y_) * ((*this)(k + 2) * pm1 * pm1 - (*this)(k - 2) * pp1 * pp1);
    }
    memo_[n] = v;
    return v;
  }

  // x(nP) = x - psi_{n-1} psi_{n+1} / psi_n^2
  Rat x_multiple(int n) {
    Rat pn = (*this)(n);
    return x_ - (*this)(n - 1) * (*this)(n + 1) / (pn * pn);
  }

 private:
  Rat a_, b_, x_, y_;
  std::map<int, Rat> memo_;
};

// Order by adding P to itself up to cap times; 0 if none found.
inline int order_by_repeated_add(const Curve& c, const Point& p, int cap = 12) {
  Point q = p;
  for (int n = 1; n <= cap; ++n) {
    if (q.inf) return n;
    q = qtwist::add(c, q, p);
  }
  return 0;
}

// Rational point on y^2 = x^3 + a x + b through (s1, t1), (s2, t2) with a, b
// cleared to integers; returns the curve and both points.
struct RandomCurve {
  Curve c;
  Point p;
  Point q;
};

inline RandomCurve random_curve_two_points(std::mt19937_64& rng, int span = 12) {
  std::uniform_int_distribution<int> d(-span, span);
  for (;;) {
    int s1 = d(rng), s2 = d(rng), t1 = d(rng), t2 = d(rng);
    if (s1 == s2) continue;
    Rat A = Rat(t1 * t1 - t2 * t2 - s1 * s1 * s1 + s2 * s2 * s2) / Rat(s1 - s2);
    Rat B = Rat(t1 * t1 - s1 * s1 * s1) - A * s1;
    Int u = A.get_den() * B.get_den();
    Int u2 = u * u, u3 = u2 * u;
    Rat a4 = A * Rat(u2 * u2), a6 = B * Rat(u3 * u3);
    Int disc = 4 * a4.get_num() * a4.get_num() * a4.get_num() + 27 * a6.get_num() * a6.get_num();
    if (disc == 0) continue;
    RandomCurve rc{qtwist::make_curve(a4.get_num(), a6.get_num()),
                   Point::affine(Rat(s1) * Rat(u2), Rat(t1) * Rat(u3)),
                   Point::affine(Rat(s2) * Rat(u2), Rat(t2) * Rat(u3))};
    return rc;
  }
}

}  // namespace oracle

#endif  // QTWIST_TESTS_ORACLES_HPP_
