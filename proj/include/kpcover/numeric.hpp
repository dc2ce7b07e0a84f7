#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "kpcover/errors.hpp"

namespace kpc {

using Int = mpz_class;
using Rat = mpq_class;

inline Int factorial(std::int64_t n) {
  require(n >= 0, "factorial of negative argument");
  Int acc = 1;
  for (std::int64_t i = 2; i <= n; ++i) acc *= i;
  return acc;
}

/// Binomial coefficient of x^k in (1+x)^m; zero outside 0 <= k <= m.
inline Int binomial(std::int64_t m, std::int64_t k) {
  if (k < 0 || k > m) return 0;
  Int acc = 1;
  for (std::int64_t i = 0; i < std::min(k, m - k); ++i) {
    acc *= (m - i);
    acc /= (i + 1);  // exact at every step
  }
  return acc;
}

inline std::int64_t gcd64(std::int64_t a, std::int64_t b) {
  return std::gcd(a, b);
}

inline std::int64_t mod_reduce(std::int64_t a, std::int64_t m) {
  require(m > 0, "modulus must be positive");
  std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

inline std::int64_t mul_mod(std::int64_t a, std::int64_t b, std::int64_t m) {
  const __int128 prod =
      static_cast<__int128>(mod_reduce(a, m)) * mod_reduce(b, m);
  return static_cast<std::int64_t>(prod % m);
}

inline std::int64_t pow_mod(std::int64_t base, std::int64_t exp,
                            std::int64_t m) {
  base = mod_reduce(base, m);
  std::int64_t acc = mod_reduce(1, m);
  while (exp > 0) {
    if (exp & 1) acc = mul_mod(acc, base, m);
    base = mul_mod(base, base, m);
    exp >>= 1;
  }
  return acc;
}

inline bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  for (std::int64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

/// Writes n = p^f with p prime; returns false if n is not a prime power.
inline bool prime_power_decompose(std::int64_t n, std::int64_t& p,
                                  std::int64_t& f) {
  if (n < 2) return false;
  for (std::int64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      p = d;
      f = 0;
      while (n % d == 0) {
        n /= d;
        ++f;
      }
      return n == 1;
    }
  }
  p = n;
  f = 1;
  return true;
}

inline std::vector<std::int64_t> prime_factors(std::int64_t n) {
  std::vector<std::int64_t> ps;
  for (std::int64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      ps.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) ps.push_back(n);
  return ps;
}

/// Smallest primitive root mod the prime q.
inline std::int64_t smallest_primitive_root(std::int64_t q) {
  require(is_prime(q), "primitive root requested for non-prime modulus");
  if (q == 2) return 1;
  const auto ps = prime_factors(q - 1);
  for (std::int64_t g = 2; g < q; ++g) {
    bool primitive = true;
    for (auto p : ps)
      if (pow_mod(g, (q - 1) / p, q) == 1) {
        primitive = false;
        break;
      }
    if (primitive) return g;
  }
  throw internal_error("no primitive root found");  // unreachable for prime q
}

/// Smallest prime power q with q ≡ 1 (mod n); q = 2 when n = 1.
inline std::int64_t smallest_prime_power_1_mod(std::int64_t n) {
  require(n >= 1, "cover degree must be positive");
  for (std::int64_t q = 2;; ++q) {
    std::int64_t p, f;
    if ((q - 1) % n == 0 && prime_power_decompose(q, p, f)) return q;
  }
}

inline Int pow_int(const Int& base, std::int64_t exp) {
  require(exp >= 0, "negative integer exponent");
  Int out;
  mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), static_cast<unsigned long>(exp));
  return out;
}

/// Exact quotient a/b in Z; throws internal_error if b does not divide a.
inline Int exact_div(const Int& a, const Int& b, const char* context) {
  check_internal(b != 0, std::string("division by zero in ") + context);
  Int q, r;
  mpz_tdiv_qr(q.get_mpz_t(), r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  check_internal(r == 0, std::string("inexact division in ") + context);
  return q;
}

}  // namespace kpc
