#ifndef QTWIST_CURVE_HPP_
#define QTWIST_CURVE_HPP_

#include <string>
#include <vector>

#include "qtwist/numeric.hpp"

namespace qtwist {

// y^2 = x^3 + A x + B with cached invariants.
struct Curve {
  Int A;
  Int B;
  Int disc;    // -16(4A^3 + 27B^2)
  Rat j_inv;   // -1728 (4A)^3 / disc
  Int m_const; // least M with M^2 >= 100|A| and M^3 >= 125|B|
};

Curve make_curve(const Int& A, const Int& B);

inline bool same_curve(const Curve& a, const Curve& b) { return a.A == b.A && a.B == b.B; }

struct Point {
  bool inf = true;
  Rat x;
  Rat y;

  static Point infinity() { return Point{}; }
  static Point affine(const Rat& x, const Rat& y) { return Point{false, x, y}; }
  bool is_integral() const { return !inf && x.get_den() == 1 && y.get_den() == 1; }
  bool operator==(const Point& o) const {
    return inf == o.inf && (inf || (x == o.x && y == o.y));
  }
  bool operator!=(const Point& o) const { return !(*this == o); }
};

std::string point_to_string(const Point& p);

bool on_curve(const Curve& c, const Point& p);
// Throws Error(kOffCurvePoint) when p is not on c.
void require_on_curve(const Curve& c, const Point& p);

Point neg(const Point& p);
Point add(const Curve& c, const Point& p, const Point& q);
Point sub(const Curve& c, const Point& p, const Point& q);
Point dbl(const Curve& c, const Point& p);
Point mul(const Curve& c, const Int& n, const Point& p);
inline Point mul(const Curve& c, long n, const Point& p) { return mul(c, Int(n), p); }

// Order of p if it is torsion (<= 12 by Mazur), else 0.
int torsion_order(const Curve& c, const Point& p);

// E_D for a fixed base: twisted = (D^2 A, D^3 B). After normalisation D >= 1.
struct TwistDescriptor {
  Curve base;
  Int D;
  Curve twisted;
  bool negated = false;  // base was replaced by y^2 = x^3 + Ax - B
};

Curve twist_curve(const Curve& base, const Int& D);
TwistDescriptor normalize_twist(const Curve& base, const Int& D);

// The model D y^2 = x^3 + A x + B (written E^D), with its own chord-tangent law.
struct TwistModel {
  Int A;
  Int B;
  Int D;
};

TwistModel twist_model(const TwistDescriptor& tw);
bool on_model(const TwistModel& m, const Point& p);
Point add_model(const TwistModel& m, const Point& p, const Point& q);
// (x, y) on E_D  ->  (x/D, y/D^2) on E^D.
Point phi_D(const TwistDescriptor& tw, const Point& p);
Point phi_D_inverse(const TwistDescriptor& tw, const Point& p);

// Division values written out for the twist family; use D = 1 for a generic curve.
Rat psi3(const Int& A, const Int& B, const Int& D, const Rat& x);
Rat phi3(const Int& A, const Int& B, const Int& D, const Rat& x);
// psi_4 / y, so psi_4(P) = y(P) * psi4_over_y(x(P)).
Rat psi4_over_y(const Int& A, const Int& B, const Int& D, const Rat& x);

// x(3P) = phi3 / psi3^2; throws kTriplePointAtInfinity when psi3(x) = 0.
Rat x_triple(const Curve& c, const Point& p);

// psi_m(P) for m >= 1 with psi_2 = 2y; P must satisfy kP != O for k < m.
Rat psi_at(const Curve& c, const Point& p, int m);

enum class TorsionTag { kTrivial, kZ2, kZ2xZ2, kOther };

struct TorsionInfo {
  std::vector<Point> points;  // includes infinity, sorted by (x, y)
  TorsionTag tag = TorsionTag::kTrivial;
  int order = 1;

  std::string tag_name() const;
  bool contains(const Point& p) const;
};

TorsionInfo torsion_subgroup(const Curve& c);

// Total order used for deterministic output: infinity first, then (x, y).
bool point_less(const Point& a, const Point& b);

}  // namespace qtwist

#endif  // QTWIST_CURVE_HPP_
