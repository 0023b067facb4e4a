#include "qtwist/simd.hpp"

#if defined(__AVX2__)
#include <immintrin.h>
#endif

namespace qtwist::simd {

#if defined(__AVX2__)

bool avx2_compiled() { return true; }

namespace {

// Spreads the 8 low bits of v into the low bit of 8 bytes.
inline std::uint64_t spread_bits(unsigned v) {
  std::uint64_t out = 0;
  for (int i = 0; i < 8; ++i) out |= static_cast<std::uint64_t>((v >> i) & 1u) << (8 * i);
  return out;
}

struct SpreadTable {
  std::uint64_t v[256];
  SpreadTable() {
    for (unsigned i = 0; i < 256; ++i) v[i] = spread_bits(i);
  }
};

std::uint32_t start_residue(std::int64_t x0, std::uint32_t m) {
  std::int64_t r = x0 % static_cast<std::int64_t>(m);
  if (r < 0) r += m;
  return static_cast<std::uint32_t>(r);
}

}  // namespace

void sieve_flags_avx2(const SieveSpec& spec, std::int64_t x0, std::size_t n, std::uint8_t* out) {
  static const SpreadTable table;
  const std::size_t blocks = n / 8;
  __m256i res[kMaxSieveModuli], mod[kMaxSieveModuli], lo[kMaxSieveModuli], hi[kMaxSieveModuli];
  const __m256i lane = _mm256_setr_epi32(0, 1, 2, 3, 4, 5, 6, 7);
  const __m256i eight = _mm256_set1_epi32(8);
  const __m256i thirty_two = _mm256_set1_epi32(32);
  const __m256i one = _mm256_set1_epi32(1);
  for (int k = 0; k < spec.count; ++k) {
    const std::uint32_t m = spec.mod[k].m;
    mod[k] = _mm256_set1_epi32(static_cast<int>(m));
    // lane residues r0 + i reduced once; m >= 9 so a single subtraction suffices.
    __m256i r = _mm256_add_epi32(_mm256_set1_epi32(static_cast<int>(start_residue(x0, m))), lane);
    __m256i over = _mm256_cmpgt_epi32(mod[k], r);
    r = _mm256_sub_epi32(r, _mm256_andnot_si256(over, mod[k]));
    res[k] = r;
    lo[k] = _mm256_set1_epi32(static_cast<int>(spec.mod[k].mask & 0xffffffffu));
    hi[k] = _mm256_set1_epi32(static_cast<int>(spec.mod[k].mask >> 32));
  }
  for (std::size_t blk = 0; blk < blocks; ++blk) {
    __m256i keep = one;
    for (int k = 0; k < spec.count; ++k) {
      // srlv yields 0 for counts >= 32, so exactly one half contributes.
      __m256i b_lo = _mm256_srlv_epi32(lo[k], res[k]);
      __m256i b_hi = _mm256_srlv_epi32(hi[k], _mm256_sub_epi32(res[k], thirty_two));
      keep = _mm256_and_si256(keep, _mm256_or_si256(b_lo, b_hi));
      __m256i r = _mm256_add_epi32(res[k], eight);
      __m256i over = _mm256_cmpgt_epi32(mod[k], r);
      res[k] = _mm256_sub_epi32(r, _mm256_andnot_si256(over, mod[k]));
    }
    keep = _mm256_and_si256(keep, one);
    __m256i full = _mm256_cmpeq_epi32(keep, one);
    unsigned bits = static_cast<unsigned>(_mm256_movemask_ps(_mm256_castsi256_ps(full)));
    std::uint64_t packed = table.v[bits];
    __builtin_memcpy(out + 8 * blk, &packed, 8);
  }
  const std::size_t done = blocks * 8;
  if (done < n) sieve_flags_scalar(spec, x0 + static_cast<std::int64_t>(done), n - done, out + done);
}

void appendix_eval_avx2(double a, double b, const double* x, std::size_t n, double* f, double* g) {
  const __m256d va = _mm256_set1_pd(a);
  const __m256d vb = _mm256_set1_pd(b);
  const double s2s = __builtin_sqrt(1.0 + a + b);
  const __m256d s2 = _mm256_set1_pd(s2s);
  const __m256d one = _mm256_set1_pd(1.0);
  const __m256d two = _mm256_set1_pd(2.0);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d xi = _mm256_loadu_pd(x + i);
    __m256d x2 = _mm256_mul_pd(xi, xi);
    __m256d cube = _mm256_add_pd(_mm256_add_pd(_mm256_mul_pd(x2, xi), _mm256_mul_pd(va, xi)), vb);
    __m256d s1 = _mm256_sqrt_pd(cube);
    __m256d num = _mm256_add_pd(_mm256_add_pd(_mm256_add_pd(x2, xi), one), va);
    __m256d q = _mm256_div_pd(num, _mm256_add_pd(s1, s2));
    __m256d xp1 = _mm256_add_pd(xi, one);
    _mm256_storeu_pd(f + i, _mm256_sub_pd(_mm256_mul_pd(q, q), xp1));
    __m256d xm1 = _mm256_sub_pd(xi, one);
    __m256d top = _mm256_add_pd(
        _mm256_add_pd(_mm256_mul_pd(_mm256_add_pd(xi, va), xp1), _mm256_mul_pd(two, vb)),
        _mm256_mul_pd(two, _mm256_mul_pd(s1, s2)));
    _mm256_storeu_pd(g + i, _mm256_div_pd(top, _mm256_mul_pd(xm1, xm1)));
  }
  if (i < n) appendix_eval_scalar(a, b, x + i, n - i, f + i, g + i);
}

#else  // !__AVX2__

bool avx2_compiled() { return false; }

void sieve_flags_avx2(const SieveSpec& spec, std::int64_t x0, std::size_t n, std::uint8_t* out) {
  sieve_flags_scalar(spec, x0, n, out);
}

void appendix_eval_avx2(double a, double b, const double* x, std::size_t n, double* f, double* g) {
  appendix_eval_scalar(a, b, x, n, f, g);
}

#endif

}  // namespace qtwist::simd
