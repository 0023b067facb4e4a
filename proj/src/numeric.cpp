#include "qtwist/numeric.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>

#include "qtwist/errors.hpp"

namespace qtwist {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kSingularCurve: return "SingularCurve";
    case ErrorCode::kNotSquarefree: return "NotSquarefree";
    case ErrorCode::kZeroTwist: return "ZeroTwist";
    case ErrorCode::kTriplePointAtInfinity: return "TriplePointAtInfinity";
    case ErrorCode::kPrecisionUnreachable: return "PrecisionUnreachable";
    case ErrorCode::kBudgetExceeded: return "BudgetExceeded";
    case ErrorCode::kDependentGenerators: return "DependentGenerators";
    case ErrorCode::kOffCurvePoint: return "OffCurvePoint";
    case ErrorCode::kTorsionArgument: return "TorsionArgument";
    case ErrorCode::kNotInSpan: return "NotInSpan";
    case ErrorCode::kDomainError: return "DomainError";
    case ErrorCode::kRootPrecisionFailure: return "RootPrecisionFailure";
    case ErrorCode::kFactorizationAmbiguous: return "FactorizationAmbiguous";
    case ErrorCode::kDecompositionMismatch: return "DecompositionMismatch";
    case ErrorCode::kIoError: return "IoError";
    case ErrorCode::kUsage: return "Usage";
  }
  return "Unknown";
}

const Real& real_pi() {
  static const Real pi = boost::multiprecision::atan(Real(1)) * 4;
  return pi;
}

const Real& real_log2() {
  static const Real l2 = boost::multiprecision::log(Real(2));
  return l2;
}

Int round_to_int(const Real& r) {
  Int z;
  mpfr_get_z(z.get_mpz_t(), r.backend().data(), MPFR_RNDN);
  return z;
}

Real log_abs(const Int& z) {
  if (z == 0) throw Error(ErrorCode::kDomainError, "log of zero");
  // Split off a power of two so the MPFR exponent range never matters.
  mp_bitcnt_t bits = mpz_sizeinbase(z.get_mpz_t(), 2);
  if (bits <= 4096) return boost::multiprecision::log(boost::multiprecision::abs(to_real(z)));
  mp_bitcnt_t shift = bits - 256;
  Int top;
  mpz_tdiv_q_2exp(top.get_mpz_t(), z.get_mpz_t(), shift);
  // Truncation error is below 2^-255 relative, far under working precision.
  return boost::multiprecision::log(boost::multiprecision::abs(to_real(top))) +
         Real(static_cast<unsigned long>(shift)) * real_log2();
}

Real log_abs(const Rat& q) {
  return log_abs(q.get_num()) - log_abs(q.get_den());
}

std::string rat_to_string(const Rat& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

static bool valid_int_text(const std::string& s) {
  std::size_t i = 0;
  if (i < s.size() && (s[i] == '-' || s[i] == '+')) ++i;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  return true;
}

Int parse_int(const std::string& s) {
  if (!valid_int_text(s)) throw Error(ErrorCode::kIoError, "not an integer: '" + s + "'");
  return Int(s[0] == '+' ? s.substr(1) : s, 10);
}

Rat parse_rat(const std::string& s) {
  auto slash = s.find('/');
  auto dot = s.find('.');
  if (slash == std::string::npos && dot != std::string::npos) {
    // Terminating decimal, taken exactly.
    std::string frac = s.substr(dot + 1);
    std::string whole = s.substr(0, dot);
    if (frac.empty() || frac[0] == '-' || frac[0] == '+')
      throw Error(ErrorCode::kIoError, "bad decimal: '" + s + "'");
    bool neg = !whole.empty() && whole[0] == '-';
    std::string digits = whole;
    if (!digits.empty() && (digits[0] == '-' || digits[0] == '+')) digits.erase(0, 1);
    Int num = parse_int((digits.empty() ? "" : digits) + frac);
    Int den;
    mpz_ui_pow_ui(den.get_mpz_t(), 10, frac.size());
    Rat q(neg ? Int(-num) : num, den);
    q.canonicalize();
    return q;
  }
  if (slash == std::string::npos) return Rat(parse_int(s));
  Int num = parse_int(s.substr(0, slash));
  std::string ds = s.substr(slash + 1);
  if (!ds.empty() && (ds[0] == '-' || ds[0] == '+'))
    throw Error(ErrorCode::kIoError, "signed denominator: '" + s + "'");
  Int den = parse_int(ds);
  if (den == 0) throw Error(ErrorCode::kIoError, "zero denominator: '" + s + "'");
  Rat q(num, den);
  q.canonicalize();
  return q;
}

bool is_perfect_square(const Int& z) {
  if (z < 0) return false;
  return mpz_perfect_square_p(z.get_mpz_t()) != 0;
}

Int isqrt(const Int& z) {
  if (z < 0) throw Error(ErrorCode::kDomainError, "isqrt of negative");
  Int r;
  mpz_sqrt(r.get_mpz_t(), z.get_mpz_t());
  return r;
}

Int icbrt_floor(const Int& z) {
  Int r;
  if (z >= 0) {
    mpz_root(r.get_mpz_t(), z.get_mpz_t(), 3);
    return r;
  }
  Int nz = -z;
  mpz_root(r.get_mpz_t(), nz.get_mpz_t(), 3);
  if (r * r * r != nz) r += 1;
  return -r;
}

bool is_squarefree(const Int& n_in) {
  Int n = abs(n_in);
  if (n == 0) return false;
  const unsigned long kTrialLimit = 1000000;
  for (unsigned long p = 2; p <= kTrialLimit; p += (p == 2 ? 1 : 2)) {
    Int pp = Int(p) * p;
    if (pp > n) return true;
    if (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
      mpz_divexact_ui(n.get_mpz_t(), n.get_mpz_t(), p);
      if (mpz_divisible_ui_p(n.get_mpz_t(), p)) return false;
    }
  }
  // Every prime factor of n now exceeds 10^6.
  if (n == 1) return true;
  if (is_perfect_square(n)) return false;
  if (n < Int("1000000000000000000")) return true;  // at most two such primes
  throw Error(ErrorCode::kDomainError, "cannot certify squarefreeness of " + n_in.get_str());
}

std::string fixed(double v, int decimals) {
  char buf[64];
  if (v == 0) v = 0;  // drop negative zero
  std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
  std::string s(buf);
  // "-0.000" style output after rounding is normalised to unsigned zero.
  bool all_zero = true;
  for (char c : s)
    if (c != '-' && c != '0' && c != '.') all_zero = false;
  if (all_zero && !s.empty() && s[0] == '-') s.erase(0, 1);
  return s;
}

std::string fixed(const Real& v, int decimals) {
  return fixed(static_cast<double>(v), decimals);
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace qtwist

namespace qtwist {
namespace {

Int pollard_brent(const Int& n, unsigned long c) {
  if (mpz_even_p(n.get_mpz_t())) return 2;
  auto f = [&](const Int& v) {
    Int r = v * v + c;
    mpz_mod(r.get_mpz_t(), r.get_mpz_t(), n.get_mpz_t());
    return r;
  };
  Int y = 2, x, g = 1, q = 1, ys;
  unsigned long r = 1, m = 128;
  while (g == 1) {
    x = y;
    for (unsigned long i = 0; i < r; ++i) y = f(y);
    unsigned long k = 0;
    while (k < r && g == 1) {
      ys = y;
      for (unsigned long i = 0; i < std::min(m, r - k); ++i) {
        y = f(y);
        Int d = x - y;
        q = q * abs(d);
        mpz_mod(q.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
      }
      mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
      k += m;
    }
    r *= 2;
  }
  if (g == n) {
    do {
      ys = f(ys);
      Int d = abs(x - ys);
      mpz_gcd(g.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
    } while (g == 1);
  }
  return g;
}

void factor_rec(const Int& n, std::vector<Int>& out) {
  if (n == 1) return;
  if (mpz_probab_prime_p(n.get_mpz_t(), 30)) {
    out.push_back(n);
    return;
  }
  if (is_perfect_square(n)) {
    Int r = isqrt(n);
    factor_rec(r, out);
    factor_rec(r, out);
    return;
  }
  for (unsigned long c = 1;; ++c) {
    Int d = pollard_brent(n, c);
    if (d != n && d != 1) {
      factor_rec(d, out);
      factor_rec(n / d, out);
      return;
    }
  }
}

}  // namespace

std::vector<std::pair<Int, int>> factorize(const Int& n_in) {
  if (n_in == 0) throw Error(ErrorCode::kDomainError, "factorize(0)");
  Int n = abs(n_in);
  std::vector<Int> primes;
  for (unsigned long p = 2; p < 10000; p += (p == 2 ? 1 : 2)) {
    while (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
      primes.push_back(Int(p));
      mpz_divexact_ui(n.get_mpz_t(), n.get_mpz_t(), p);
    }
    if (Int(p) * p > n) break;
  }
  factor_rec(n, primes);
  std::sort(primes.begin(), primes.end());
  std::vector<std::pair<Int, int>> res;
  for (const Int& p : primes) {
    if (!res.empty() && res.back().first == p)
      ++res.back().second;
    else
      res.push_back({p, 1});
  }
  return res;
}

}  // namespace qtwist
