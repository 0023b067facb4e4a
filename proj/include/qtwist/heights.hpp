#ifndef QTWIST_HEIGHTS_HPP_
#define QTWIST_HEIGHTS_HPP_

#include <string>

#include "qtwist/curve.hpp"

namespace qtwist {

// Natural-log units. precision is an absolute error bound.
struct HeightValue {
  double value = 0;
  double precision = 0;
};

struct HeightDiffBounds {
  double c1 = 0;
  double c2 = 0;
};

struct HeightConfig {
  // Operand-size budget for the doubling route, in bits of the tracked modulus.
  long max_operand_bits = 4000000;
  // Cap on m when searching for a multiple mP with nonsingular reduction everywhere.
  int max_multiplier = 120;
};

HeightValue weil_height(const Rat& q);
// h(P) = h(x(P)); the point at infinity has height 0.
HeightValue weil_height(const Point& p);
Real weil_height_real(const Rat& q);

HeightDiffBounds height_diff_bounds(const Curve& c);

// Limit of h(2^n P)/4^n, truncated once max(|c1|,|c2|)/4^n < tol.
HeightValue canonical_height_doubling(const Curve& c, const Point& p, double tol,
                                      const HeightConfig& cfg = {});

// Archimedean + non-archimedean decomposition, doubled to the same scale as the
// doubling route.
struct LocalHeightParts {
  Real archimedean;      // lambda at infinity, including (1/12) log|disc|
  Real nonarchimedean;   // sum over all primes
  int multiplier = 1;    // m with mP nonsingular modulo every prime
};

LocalHeightParts local_height_parts(const Curve& c, const Point& p, const HeightConfig& cfg = {});
HeightValue canonical_height_local(const Curve& c, const Point& p, const HeightConfig& cfg = {});

// <P,Q> = (h(P+Q) - h(P) - h(Q)) / 2 with the doubling route at tolerance tol.
double height_pairing(const Curve& c, const Point& p, const Point& q, double tol);

enum class HeightClass { kSmall, kMediumSmall, kMediumLarge, kLarge };

const char* height_class_name(HeightClass c);

struct Classification {
  HeightClass tag = HeightClass::kSmall;
  bool boundary = false;  // within precision of a threshold; lower tag kept
  double hhat = 0;
};

// Thresholds 1.5, 20 and 2200 times log D.
Classification classify_value(double hhat, double precision, const Int& D);
Classification classify(const TwistDescriptor& tw, const Point& p, double tol);

struct SmallXReport {
  bool x_le_md = false;       // x(P) <= M D
  bool lower_bound_ok = false;// x(P) >= -M D
  bool implication_held = true;
  double hhat = 0;
  double bound = 0;           // 1.5 log D
  Int md;
};

SmallXReport small_x_check(const TwistDescriptor& tw, const Point& p, double tol);

}  // namespace qtwist

#endif  // QTWIST_HEIGHTS_HPP_
