#ifndef QTWIST_LEMMA_LAB_HPP_
#define QTWIST_LEMMA_LAB_HPP_

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "qtwist/curve.hpp"
#include "qtwist/json_io.hpp"
#include "qtwist/poly.hpp"

namespace qtwist {

enum class ReportStatus { kPass, kFail, kAudited };
const char* report_status_name(ReportStatus s);

struct VerificationReport {
  std::string lemma_id;
  long trials = 0;
  std::vector<Json> violations;  // inputs plus both sides of the inequality
  std::uint64_t seed = 0;
  ReportStatus status = ReportStatus::kPass;
  Json summary = Json::object();
};

Json report_to_json(const VerificationReport& r);

struct LabConfig {
  long trials = 10000;
  std::uint64_t seed = 1;
  long d_max = 97;          // twist parameters drawn from squarefree D <= d_max
  double tol = 1e-10;
};

// Per-trial generator: mt19937_64 seeded with splitmix64(seed ^ trial).
std::mt19937_64 trial_rng(std::uint64_t seed, long trial);

// ---- random instances ------------------------------------------------------

// A twist E_D with rational points P, Q, MD <= x(P) < x(Q), built by choosing
// the points first and solving for the coefficients.
struct TwistPair {
  TwistDescriptor tw;
  Point P;
  Point Q;
  double a = 0;  // D^2 A / x(P)^2
  double b = 0;  // D^3 B / x(P)^3
};

enum class YSign { kSame, kOpposite, kAny };

// Rational points; a and b targeted inside |a| < 0.01, |b| < 0.008.
TwistPair random_rational_pair(std::mt19937_64& rng, long d_max, YSign sign);
// One rational point; with boundary = true the point sits at x(P) = M D exactly.
TwistPair random_rational_point(std::mt19937_64& rng, long d_max, bool boundary);
// Integral points with MD <= x(P) < x(Q) and x(Q)/x(P) roughly in (1, 20].
TwistPair random_integral_pair(std::mt19937_64& rng, long d_max);

std::uint64_t random_squarefree(std::mt19937_64& rng, long d_max);

// ---- x-coordinate bounds --------------------------------------------------

VerificationReport verify_xadd_bounds(bool positive, const LabConfig& cfg);
VerificationReport verify_xtriple_bounds(const LabConfig& cfg);
VerificationReport verify_height_sum(const LabConfig& cfg);

// ---- optimisation lemma ----------------------------------------------------

// max over [alpha, beta]^2 of (a^2 + b^2 - c^2) / (2ab), closed form.
double fab_max(double alpha, double beta, double c);
// Grid maximum over an n x n grid that includes the corners, and an upper bound
// on how far below the true maximum a grid maximum can be.
struct FabGrid {
  double grid_max = 0;
  double error_bound = 0;
};
FabGrid fab_grid_max(double alpha, double beta, double c, int n = 400);
VerificationReport verify_fab_max(const LabConfig& cfg);

// ---- auxiliary f and g ----------------------------------------------------

struct AppendixGridSpec {
  int x_nodes = 10000;        // x - 1 log-spaced over [x_lo_offset, x_hi - 1]
  double x_lo_offset = 1e-6;
  double x_hi = 1e6;
  int random_pairs = 1000;    // plus the nine corners of {-0.01, 0, 0.01}^2
  std::uint64_t seed = 1;
};

std::vector<double> appendix_x_grid(const AppendixGridSpec& spec);
std::vector<std::pair<double, double>> appendix_ab_pairs(const AppendixGridSpec& spec);

// One report per lemma: appx-f-lower, appx-f-upper, appx-g-lower, appx-g-upper.
std::vector<VerificationReport> appendix_f_checks(const AppendixGridSpec& spec);

// G(t) and its derivatives at t = 1 in exact arithmetic.
RealPoly g_cascade_poly();
std::vector<Rat> g_derivatives_at_one();
VerificationReport g_derivative_cascade();

// ---- Mahler bound ----------------------------------------------------------

struct MahlerResult {
  Real bound;   // (m-1)^(-(m-1)/2) |D(f)|^(1/2) L(f)^(-(m-2)); 0 when D(f) = 0
  Real actual;  // |f'(root)|
};
MahlerResult mahler_lower_bound(const RealPoly& f, const Cx& root);
VerificationReport verify_mahler(const LabConfig& cfg);

// ---- third-division machinery ----------------------------------------------

RealPoly psi3_poly(const Curve& c);
RealPoly phi3_poly(const Curve& c);
// f_R(X) = phi3(X) - x(R) psi3(X)^2, monic of degree 9.
RealPoly three_division_poly(const Curve& c, const Point& R);

struct ThirdPoint {
  Cx x_s;
  int index = 0;  // into the (real, imag)-sorted root list
};
// Root minimising |x(Q) - root|; ties go to the smaller index.
ThirdPoint nearest_third_point(const std::vector<Cx>& roots, const Rat& xq);

struct AlgebraicHeight {
  double value = 0;
  int degree = 0;
  RealPoly factor;       // primitive integer minimal polynomial of the root
  bool certified = true; // irreducibility certified modulo primes
};
// Throws kFactorizationAmbiguous when the minimal factor cannot be certified.
AlgebraicHeight algebraic_height(const RealPoly& f, const Cx& root);

// Distinct-degree factorisation pattern of f mod p (f squarefree mod p).
std::vector<int> ddf_degrees(const std::vector<Int>& f, std::uint64_t p);
// True when degree patterns modulo several primes rule out every proper factor.
bool certify_irreducible(const std::vector<Int>& f);

VerificationReport verify_div_identity(const LabConfig& cfg);

struct DiophantineConstants {
  double lambda = 1.0 / 1000;
  double delta = 1.0 / 2000;
  double height_ratio = 0;    // 3(0.9-4l-17d) / (4(10l+d+0.1)), compared with 5.77
  double exponent = 0;        // 3(1-27l-110d) / (1+2l+9d), compared with 2.75
  bool height_ratio_ok = false;
  bool exponent_ok = false;
};
DiophantineConstants diophantine_constants();

VerificationReport diophantine_audit(const TwistDescriptor& tw, const Point& P, const Point& Q,
                                     const Point& R);
VerificationReport verify_dioph(const LabConfig& cfg);

// ---- counting and banding --------------------------------------------------

double roth_count(long d, double eps);
VerificationReport verify_roth();
VerificationReport verify_exp_ineq();

// Dispatch by id: xadd-pos, xadd-neg, xtriple, hsum, fab-max, appx-f-lower,
// appx-f-upper, appx-g-lower, appx-g-upper, g-cascade, mahler, div-identity,
// dioph, roth, exp-ineq.
VerificationReport run_lemma(const std::string& id, const LabConfig& cfg);
const std::vector<std::string>& lemma_ids();

}  // namespace qtwist

#endif  // QTWIST_LEMMA_LAB_HPP_
