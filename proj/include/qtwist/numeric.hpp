#ifndef QTWIST_NUMERIC_HPP_
#define QTWIST_NUMERIC_HPP_

// Scalar types shared by every module: exact integers and rationals from GMP,
// 50-digit reals and complexes from Boost.Multiprecision over MPFR.

#include <gmpxx.h>

#include <boost/multiprecision/complex_adaptor.hpp>
#include <boost/multiprecision/mpfr.hpp>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace qtwist {

using Int = mpz_class;
using Rat = mpq_class;
using Real = boost::multiprecision::mpfr_float_50;
using Cx = boost::multiprecision::number<
    boost::multiprecision::complex_adaptor<
        boost::multiprecision::mpfr_float_backend<50>>>;

inline Real to_real(const Int& z) { return Real(z.get_mpz_t()); }
inline Real to_real(const Rat& q) { return Real(q.get_mpq_t()); }

// log|z| for z != 0; exact to working precision.
// Nearest integer, ties to even.
Int round_to_int(const Real& r);

Real log_abs(const Int& z);
Real log_abs(const Rat& q);

const Real& real_pi();
const Real& real_log2();

// Canonical text form: "p" or "p/q" in lowest terms.
std::string rat_to_string(const Rat& q);
// Accepts "p", "p/q", with optional sign; throws Error(kIoError).
Rat parse_rat(const std::string& s);
Int parse_int(const std::string& s);

bool is_perfect_square(const Int& z);
Int isqrt(const Int& z);
// Exact integer cube-root floor, sign aware.
Int icbrt_floor(const Int& z);
bool is_squarefree(const Int& n);
// Prime factorisation of |n| (n != 0): trial division, then Pollard-Brent.
std::vector<std::pair<Int, int>> factorize(const Int& n);

// Formats with printf-style fixed decimals.
std::string fixed(double v, int decimals);
std::string fixed(const Real& v, int decimals);

// splitmix64 step; used to derive per-trial seeds.
std::uint64_t splitmix64(std::uint64_t x);

}  // namespace qtwist

#endif  // QTWIST_NUMERIC_HPP_
