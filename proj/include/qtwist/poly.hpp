#ifndef QTWIST_POLY_HPP_
#define QTWIST_POLY_HPP_

#include <vector>

#include "qtwist/numeric.hpp"

namespace qtwist {

// a_0 x^m + a_1 x^(m-1) + ... + a_m, stored as coeffs = {a_0, ..., a_m}.
struct RealPoly {
  std::vector<Rat> coeffs;

  int degree() const { return static_cast<int>(coeffs.size()) - 1; }
  const Rat& lead() const { return coeffs.front(); }
};

// Drops leading zeros; throws kDomainError for the zero polynomial.
RealPoly make_poly(std::vector<Rat> coeffs);
RealPoly make_poly_int(const std::vector<long>& coeffs);

Rat eval(const RealPoly& f, const Rat& x);
Cx eval(const RealPoly& f, const Cx& x);
RealPoly derivative(const RealPoly& f);
RealPoly mul(const RealPoly& f, const RealPoly& g);
// Exact division; throws kDomainError when g does not divide f.
RealPoly exact_div(const RealPoly& f, const RealPoly& g);

// Integer polynomial with content 1 and positive leading coefficient, and the
// rational c with f = c * primitive.
struct PrimitivePart {
  std::vector<Int> coeffs;
  Rat content;
};
PrimitivePart primitive_part(const RealPoly& f);

// D(f) = (-1)^(m(m-1)/2) Res(f, f') / a_0, exactly, via the Sylvester matrix.
Rat poly_discriminant(const RealPoly& f);
Rat poly_length(const RealPoly& f);

// Exact determinant of an integer matrix (fraction-free Bareiss elimination).
Int bareiss_det(std::vector<std::vector<Int>> m);

struct RootOptions {
  int max_iterations = 2000;
  double certify = 1e-15;  // required |f(r)| / |f'(r)| relative to max(1, |r|)
};

// All complex roots (Aberth-Ehrlich at 50 digits), sorted by (real, imaginary).
// Throws kRootPrecisionFailure when a root cannot be certified.
std::vector<Cx> poly_roots(const RealPoly& f, const RootOptions& opt = {});

// max over roots of |f(r)| / |f'(r)|.
Real root_residual(const RealPoly& f, const std::vector<Cx>& roots);

}  // namespace qtwist

#endif  // QTWIST_POLY_HPP_
