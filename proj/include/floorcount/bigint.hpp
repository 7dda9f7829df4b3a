#pragma once

#include <gmpxx.h>

#include <string>

namespace floorcount {

using BigInt = mpz_class;

inline std::string to_string(const BigInt& x) { return x.get_str(10); }

// x^e for a small nonnegative exponent.
inline BigInt pow(const BigInt& x, unsigned long e) {
  BigInt r;
  mpz_pow_ui(r.get_mpz_t(), x.get_mpz_t(), e);
  return r;
}

// C(n, k), zero when k < 0 or k > n or n < 0.
inline BigInt binomial(long n, long k) {
  if (n < 0 || k < 0 || k > n) return 0;
  BigInt r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return r;
}

}  // namespace floorcount
