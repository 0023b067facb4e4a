#include <cstdlib>
#include <cstring>

#include "qtwist/simd.hpp"

namespace qtwist::simd {

const char* isa_name(Isa isa) { return isa == Isa::kAvx2 ? "avx2" : "scalar"; }

bool avx2_supported() {
#if defined(__x86_64__) || defined(__i386__)
  return avx2_compiled() && __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

Isa active_isa() {
  static const Isa isa = [] {
    const char* env = std::getenv("QTWIST_ISA");
    if (env != nullptr && std::strcmp(env, "scalar") == 0) return Isa::kScalar;
    return avx2_supported() ? Isa::kAvx2 : Isa::kScalar;
  }();
  return isa;
}

void sieve_flags(const SieveSpec& spec, std::int64_t x0, std::size_t n, std::uint8_t* out) {
  if (active_isa() == Isa::kAvx2)
    sieve_flags_avx2(spec, x0, n, out);
  else
    sieve_flags_scalar(spec, x0, n, out);
}

void appendix_eval(double a, double b, const double* x, std::size_t n, double* f, double* g) {
  if (active_isa() == Isa::kAvx2)
    appendix_eval_avx2(a, b, x, n, f, g);
  else
    appendix_eval_scalar(a, b, x, n, f, g);
}

}  // namespace qtwist::simd
