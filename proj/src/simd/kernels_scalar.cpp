#include <cmath>

#include "qtwist/simd.hpp"

namespace qtwist::simd {

namespace {

std::uint32_t start_residue(std::int64_t x0, std::uint32_t m) {
  std::int64_t r = x0 % static_cast<std::int64_t>(m);
  if (r < 0) r += m;
  return static_cast<std::uint32_t>(r);
}

}  // namespace

void sieve_flags_scalar(const SieveSpec& spec, std::int64_t x0, std::size_t n, std::uint8_t* out) {
  std::uint32_t r[kMaxSieveModuli];
  for (int k = 0; k < spec.count; ++k) r[k] = start_residue(x0, spec.mod[k].m);
  for (std::size_t i = 0; i < n; ++i) {
    std::uint8_t keep = 1;
    for (int k = 0; k < spec.count; ++k) {
      keep &= static_cast<std::uint8_t>((spec.mod[k].mask >> r[k]) & 1u);
      if (++r[k] == spec.mod[k].m) r[k] = 0;
    }
    out[i] = keep;
  }
}

void appendix_eval_scalar(double a, double b, const double* x, std::size_t n, double* f,
                          double* g) {
  const double s2 = std::sqrt(1.0 + a + b);
  for (std::size_t i = 0; i < n; ++i) {
    double xi = x[i];
    double x2 = xi * xi;
    double cube = x2 * xi + a * xi + b;
    double s1 = std::sqrt(cube);
    double num = x2 + xi + 1.0 + a;
    double q = num / (s1 + s2);
    double xp1 = xi + 1.0;
    f[i] = q * q - xp1;
    double xm1 = xi - 1.0;
    double top = (xi + a) * xp1 + 2.0 * b + 2.0 * (s1 * s2);
    g[i] = top / (xm1 * xm1);
  }
}

}  // namespace qtwist::simd
