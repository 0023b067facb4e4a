#ifndef QTWIST_SIMD_HPP_
#define QTWIST_SIMD_HPP_

// Data-parallel inner loops with a scalar reference and an AVX2 variant.
// The variant is picked at runtime; QTWIST_ISA=scalar|avx2 overrides it.

#include <cstddef>
#include <cstdint>

namespace qtwist::simd {

enum class Isa { kScalar, kAvx2 };

const char* isa_name(Isa isa);
bool avx2_compiled();
bool avx2_supported();
Isa active_isa();

// Residue sieve for "is x^3 + a x + b a square": one modulus m in [9, 64] and a
// mask whose bit r is set when x = r (mod m) can give a square value mod m.
struct SieveModulus {
  std::uint32_t m = 0;
  std::uint64_t mask = 0;
};

constexpr int kMaxSieveModuli = 8;

struct SieveSpec {
  int count = 0;
  SieveModulus mod[kMaxSieveModuli];
};

// out[i] = 1 when x0 + i survives every modulus, else 0.
void sieve_flags_scalar(const SieveSpec& spec, std::int64_t x0, std::size_t n, std::uint8_t* out);
void sieve_flags_avx2(const SieveSpec& spec, std::int64_t x0, std::size_t n, std::uint8_t* out);
void sieve_flags(const SieveSpec& spec, std::int64_t x0, std::size_t n, std::uint8_t* out);

// The two x(P+Q) ratio functions on x >= 1 for fixed (a, b):
//   f = ((x^2+x+1+a) / (sqrt(x^3+ax+b) + sqrt(1+a+b)))^2 - (x+1)
//   g = ((x+a)(x+1) + 2b + 2 sqrt(x^3+ax+b) sqrt(1+a+b)) / (x-1)^2
// Both variants perform the same IEEE operations in the same order.
void appendix_eval_scalar(double a, double b, const double* x, std::size_t n, double* f,
                          double* g);
void appendix_eval_avx2(double a, double b, const double* x, std::size_t n, double* f, double* g);
void appendix_eval(double a, double b, const double* x, std::size_t n, double* f, double* g);

}  // namespace qtwist::simd

#endif  // QTWIST_SIMD_HPP_
