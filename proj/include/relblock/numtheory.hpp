#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <stdexcept>

#include "relblock/core.hpp"

namespace relblock {

/// Number-theoretic Moebius function: 0 if d has a squared prime factor,
/// else (-1)^(number of prime factors). d >= 1.
inline int mobius_natural(std::int64_t d) {
  if (d <= 0) throw std::domain_error("mobius_natural needs d >= 1");
  int primes = 0;
  for (std::int64_t p = 2; p * p <= d; ++p) {
    if (d % p == 0) {
      d /= p;
      if (d % p == 0) return 0;
      ++primes;
    }
  }
  if (d > 1) ++primes;
  return (primes % 2 == 0) ? 1 : -1;
}

/// |{s in [lo,hi] intersect [1,n] : gcd(n,s)=1}| by direct scan. n >= 1.
inline std::int64_t coprime_count(std::int64_t n, std::int64_t lo, std::int64_t hi) {
  if (n < 1) throw std::domain_error("coprime_count needs n >= 1");
  lo = std::max<std::int64_t>(lo, 1);
  hi = std::min(hi, n);
  std::int64_t total = 0;
  for (std::int64_t s = lo; s <= hi; ++s)
    if (std::gcd(n, s) == 1) ++total;
  return total;
}

/// Same count through the divisor sum
///   sum_{d | n, d <= hi} mobius(d) * (floor(hi/d) - floor((lo-1)/d)).
/// Kept as an independent route; tests pin its agreement with the scan.
inline std::int64_t coprime_count_by_divisors(std::int64_t n, std::int64_t lo, std::int64_t hi) {
  if (n < 1) throw std::domain_error("coprime_count_by_divisors needs n >= 1");
  lo = std::max<std::int64_t>(lo, 1);
  hi = std::min(hi, n);
  if (lo > hi) return 0;
  std::int64_t total = 0;
  for (std::int64_t d = 1; d <= hi; ++d) {
    if (n % d != 0) continue;
    total += mobius_natural(d) * (hi / d - (lo - 1) / d);
  }
  return total;
}

/// Inverse of a modulo m (gcd(a,m)=1, m >= 1), in [0,m).
inline std::int64_t mod_inverse(std::int64_t a, std::int64_t m) {
  if (m < 1) throw std::domain_error("mod_inverse needs m >= 1");
  if (m == 1) return 0;
  std::int64_t r0 = m, r1 = ((a % m) + m) % m, t0 = 0, t1 = 1;
  while (r1 != 0) {
    std::int64_t q = r0 / r1;
    std::int64_t r2 = r0 - q * r1;
    std::int64_t t2 = t0 - q * t1;
    r0 = r1; r1 = r2;
    t0 = t1; t1 = t2;
  }
  if (r0 != 1) throw std::domain_error("mod_inverse: arguments not coprime");
  return ((t0 % m) + m) % m;
}

}  // namespace relblock
